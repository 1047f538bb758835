#include <doctest.h>

#include "causality/error.hpp"
#include "causality/event_graph.hpp"
#include "causality/generator.hpp"
#include "causality/harness.hpp"
#include "test_support.hpp"

using namespace causality;

namespace {

std::map<std::string, std::string> values_of(const ReplayResult& r) {
  std::map<std::string, std::string> out;
  for (const auto& e : r.events) out[e.id.str()] = to_string(e.value);
  return out;
}

}  // namespace

TEST_CASE("mechanism names") {
  for (auto name : {"ch", "vc", "dvc", "lamport", "plausible:2", "itc", "vv", "vv-sib", "dvv"}) {
    CHECK(Mechanism::parse(name).name() == name);
  }
  CHECK_THROWS_AS(Mechanism::parse("plausible:0"), Error);
  CHECK_THROWS_AS(Mechanism::parse("plausible"), Error);
  CHECK_THROWS_AS(Mechanism::parse("bogus"), Error);
  CHECK(Mechanism::parse("vc").characterizing());
  CHECK_FALSE(Mechanism::parse("lamport").characterizing());
  CHECK_FALSE(Mechanism::parse("plausible:3").characterizing());
  CHECK(Mechanism::parse("vv-sib").relevant_only());
  CHECK(standard_mechanisms().size() == 9);
}

TEST_CASE("vector clock replay of the three-node run") {
  auto v = values_of(replay(testing::load_trace("three_node_run.trace"), Mechanism::parse("vc")));
  std::map<std::string, std::string> expected{
      {"a1", "[1,0,0]"}, {"a2", "[2,0,0]"}, {"a3", "[3,0,0]"},
      {"b1", "[0,1,0]"}, {"b2", "[2,2,0]"}, {"b3", "[2,3,0]"},
      {"c1", "[0,0,1]"}, {"c2", "[0,0,2]"}, {"c3", "[2,3,3]"}};
  CHECK(v == expected);
}

TEST_CASE("dotted replay keeps the dot outside the vector") {
  auto v = values_of(replay(testing::load_trace("three_node_run.trace"), Mechanism::parse("dvc")));
  CHECK(v["b2"] == "[2,1,0]b2");
  CHECK(v["c3"] == "[2,3,2]c3");
}

TEST_CASE("empty trace gives no events") {
  auto t = parse_trace("nodes a b");
  for (const auto& m : standard_mechanisms()) {
    if (!applicable(t, m)) continue;
    CHECK(replay(t, m).events.empty());
    CHECK(conformance(t, m).pairs == 0);
  }
}

TEST_CASE("mode mismatches") {
  auto plain = testing::load_trace("three_node_run.trace");
  auto cs = testing::load_trace("storage_run.trace");
  CHECK_THROWS_AS(replay(plain, Mechanism::parse("dvv")), ModeError);
  CHECK_THROWS_AS(replay(cs, Mechanism::parse("vc")), ModeError);
  CHECK_FALSE(applicable(plain, Mechanism::parse("dvv")));
  CHECK(applicable(cs, Mechanism::parse("dvv")));
}

TEST_CASE("classification buckets") {
  ConformanceReport r;
  classify(r, Order::Before, Order::Before);
  classify(r, Order::Concurrent, Order::Concurrent);
  classify(r, Order::Concurrent, Order::Before);
  classify(r, Order::Before, Order::Concurrent);
  classify(r, Order::Before, Order::After);
  classify(r, Order::After, Order::Before);
  classify(r, Order::Concurrent, Order::Indistinguishable);
  classify(r, Order::Before, Order::Equal);
  CHECK(r.pairs == 8);
  CHECK(r.agree == 2);
  CHECK(r.falsely_ordered == 1);
  CHECK(r.falsely_concurrent == 1);
  CHECK(r.reversed == 2);
  CHECK(r.indistinguishable == 2);
  CHECK(r.agree + r.errors() == r.pairs);
}

TEST_CASE("census on the three-node run") {
  auto trace = testing::load_trace("three_node_run.trace");
  auto g = build_event_graph(trace).graph;

  // Oracle-side count of concurrent pairs, independent of the harness.
  std::size_t concurrent = 0, total = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j, ++total) {
      concurrent += !testing::path_exists(g, i, j) && !testing::path_exists(g, j, i);
    }
  }

  auto vc = conformance(trace, Mechanism::parse("vc"));
  CHECK(vc.pairs == total);
  CHECK(vc.agree == total);

  // every Lamport value is distinct here, so each concurrent pair is ordered
  auto lam = conformance(trace, Mechanism::parse("lamport"));
  CHECK(lam.falsely_ordered == concurrent);
  CHECK(lam.reversed == 0);
  CHECK(lam.falsely_concurrent == 0);
  CHECK(meets_contract(lam, Mechanism::parse("lamport")));
  CHECK_FALSE(meets_contract(lam, Mechanism::parse("vc")));

  bool saw_c2_a3 = false;
  ConformanceOptions opts;
  opts.on_pair = [&](const PairOutcome& p) {
    std::set<std::string> ids{p.first->id.str(), p.second->id.str()};
    if (ids == std::set<std::string>{"a3", "c2"}) {
      saw_c2_a3 = p.oracle == Order::Concurrent && p.mechanism != Order::Concurrent;
    }
  };
  auto pc = conformance(trace, Mechanism::parse("plausible:2"), opts);
  CHECK(saw_c2_a3);
  CHECK(pc.reversed == 0);
  CHECK(pc.falsely_concurrent == 0);
}

TEST_CASE("relevant-only mechanisms on the relevant run") {
  auto trace = testing::load_trace("three_node_relevant.trace");
  for (auto name : {"vv", "vv-sib"}) {
    auto r = conformance(trace, Mechanism::parse(name));
    CHECK_MESSAGE(r.errors() == 0, name);
  }
  auto r = replay(trace, Mechanism::parse("vv"));
  CHECK(to_string(r.replicas.at("a").node_history()) == "{a1,a2}");
  CHECK(to_string(r.replicas.at("b").node_history()) == "{a1,b1,b2}");
  CHECK(to_string(r.replicas.at("c").node_history()) == "{a1,b1,b2}");
}

TEST_CASE("sibling run keeps both versions until the merge") {
  auto trace = testing::load_trace("three_node_siblings.trace");
  std::vector<std::size_t> sizes;
  replay(trace, Mechanism::parse("vv-sib"), [&](std::size_t, const ReplayResult& partial) {
    auto it = partial.replicas.find("b");
    sizes.push_back(it == partial.replicas.end() ? 0 : it->second.siblings().size());
  });
  // steps: L! a, S a, L! b, R b, L! b, ...
  CHECK(sizes[3] == 2);
  CHECK(sizes[4] == 1);
  auto r = replay(trace, Mechanism::parse("vv-sib"));
  CHECK(to_string(r.replicas.at("c").node_history()) == "{a1,b1,b2}");
  CHECK(conformance(trace, Mechanism::parse("vv-sib")).errors() == 0);
}

TEST_CASE("contract sweep") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto trace = generate_trace(1 + seed % 6, 50, 0.35, 0.6, seed);
    for (const auto& m : standard_mechanisms()) {
      if (!applicable(trace, m)) continue;
      auto r = conformance(trace, m);
      CHECK_MESSAGE(meets_contract(r, m), m.name() << " seed " << seed);
      CHECK(r.agree + r.errors() == r.pairs);
    }
    ClientServerOptions o;
    o.client_count = 3;
    o.server_count = 1 + seed % 3;
    o.step_count = 50;
    o.seed = seed;
    auto cs = generate_client_server_trace(o);
    CHECK(conformance(cs, Mechanism::parse("dvv")).errors() == 0);
  }
}

TEST_CASE("sampled conformance is deterministic and bounded") {
  auto trace = generate_trace(5, 300, 0.3, 1.0, 77);
  ConformanceOptions o;
  o.max_pairs = 2000;
  o.sample_seed = 4;
  auto a = conformance(trace, Mechanism::parse("lamport"), o);
  auto b = conformance(trace, Mechanism::parse("lamport"), o);
  CHECK(a == b);
  CHECK(a.pairs == 2000);
}

TEST_CASE("report formats") {
  auto trace = testing::load_trace("three_node_run.trace");
  auto mechs = standard_mechanisms();
  auto rows = compare_all(trace, mechs);
  REQUIRE(rows.size() == mechs.size());
  auto table = format_table(rows);
  CHECK(table == format_table(compare_all(trace, mechs)));
  CHECK(table.find("n/a") != std::string::npos);  // dvv row

  auto kv = format_key_values(rows);
  auto vc = conformance(trace, Mechanism::parse("vc"));
  std::string expected_vc = "mechanism=vc\napplicable=true\npairs=" + std::to_string(vc.pairs) +
                            "\nagree=" + std::to_string(vc.agree) +
                            "\nfalsely_ordered=0\nfalsely_concurrent=0\nreversed=0\n"
                            "indistinguishable=0\ncontract=characterizing\nverdict=pass\n";
  CHECK(kv.find(expected_vc) != std::string::npos);
  CHECK(kv.find("mechanism=dvv\napplicable=false\n") != std::string::npos);
}
