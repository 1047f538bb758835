#include <doctest.h>

#include "causality/error.hpp"
#include "causality/event_graph.hpp"
#include "causality/generator.hpp"
#include "causality/harness.hpp"
#include "causality/version_store.hpp"
#include "test_support.hpp"

using namespace causality;

namespace {

EventId ev(const char* node, std::uint64_t k) { return {node, k}; }

CausalHistory hist(std::initializer_list<EventId> ids) { return CausalHistory(std::set<EventId>(ids)); }

const UniversePtr st = make_universe({"s", "t"});

DottedRecord rec(std::vector<std::uint64_t> ctx, const char* node, std::uint64_t k) {
  return {DottedClock(VectorClock(st, std::move(ctx)), {node, k}), ""};
}

ClientContext ctx(std::vector<std::uint64_t> c) { return {VectorClock(st, std::move(c))}; }

}  // namespace

TEST_CASE("version vector updates") {
  VersionReplica a("a");
  auto a1 = vv_update(a, true);
  CHECK(a1.node_history().events() == hist({ev("a", 1)}).events());
  CHECK(vv_update(a1, false) == a1);
  CHECK(vv_update(a1, true).node_history().events() == hist({ev("a", 1), ev("a", 2)}).events());
}

TEST_CASE("merge on receive") {
  auto b = vv_update(VersionReplica("b"), true);
  auto merged = vv_receive_merge(b, ch_new_event({}, ev("a", 1)));
  CHECK(to_string(merged.siblings().at(0).history) == "{a1,b1,*b2}");
  CHECK(merged.counter() == 2);

  auto c = vv_receive_merge(VersionReplica("c"), merged.siblings().at(0).history);
  CHECK(c.counter() == 0);
  CHECK(c.node_history().events() == hist({ev("a", 1), ev("b", 1), ev("b", 2)}).events());

  CHECK(vv_receive_merge(merged, merged.siblings().at(0).history) == merged);
}

TEST_CASE("sibling receive and merge") {
  auto b = sibling_update(VersionReplica("b"));
  std::vector<VersionedRecord> from_a{{ch_new_event({}, ev("a", 1)), "a1"}};
  auto both = sibling_receive(b, from_a);
  CHECK(both.siblings().size() == 2);
  CHECK(is_antichain(std::span<const VersionedRecord>(both.siblings())));
  CHECK(both.node_history().events() == hist({ev("a", 1), ev("b", 1)}).events());

  auto m = sibling_merge_event(both);
  REQUIRE(m.siblings().size() == 1);
  CHECK(m.node_history().events() == hist({ev("a", 1), ev("b", 1), ev("b", 2)}).events());

  CHECK(sibling_receive(m, from_a) == m);
  CHECK(sibling_receive(m, m.siblings()) == m);

  // merging a single sibling still names an event
  auto single = sibling_receive(VersionReplica("b"), from_a);
  CHECK(sibling_merge_event(single).node_history().events() ==
        hist({ev("a", 1), ev("b", 1)}).events());
  CHECK(sibling_merge_event(VersionReplica("b")) == VersionReplica("b"));
  CHECK_THROWS_AS(vv_update(both, true), Error);
}

TEST_CASE("dvv get") {
  DvvServer s("s", st, 2, {rec({0, 0}, "s", 1), rec({0, 0}, "s", 2)});
  CHECK(dvv_get(s).context == ctx({2, 0}));
  CHECK(dvv_get(DvvServer("s", st)).context == ctx({0, 0}));
  DvvServer t("t", st, 3, {rec({0, 2}, "t", 3)});
  CHECK(dvv_get(t).context == ctx({0, 3}));
}

TEST_CASE("dvv put") {
  auto s = dvv_put(DvvServer("s", st), ctx({0, 0}), "b");
  CHECK(to_string(s) == "[0,0]s1");
  s = dvv_put(s, ctx({0, 0}), "a");
  CHECK(to_string(s) == "[0,0]s1,[0,0]s2");
  CHECK(is_antichain(std::span<const DottedRecord>(s.siblings())));
  s = dvv_put(s, ctx({2, 0}), "a");
  CHECK(to_string(s) == "[2,0]s3");
  CHECK(own_names_gap_free(s));
}

TEST_CASE("dvv sync") {
  DvvServer s("s", st, 1, {rec({0, 0}, "s", 1)});
  DvvServer t("t", st, 3, {rec({0, 2}, "t", 3)});
  auto t2 = dvv_sync(s, t);
  CHECK(to_string(t2) == "[0,2]t3,[0,0]s1");
  CHECK(dvv_sync(s, t2) == t2);
  CHECK(dvv_sync(t, t) == t);

  // a client reads S's two versions and writes to T
  DvvServer s2("s", st, 2, {rec({0, 0}, "s", 1), rec({0, 0}, "s", 2)});
  auto t3 = dvv_put(dvv_sync(s2, t2), dvv_get(s2).context, "x");
  CHECK(to_string(t3) == "[0,2]t3,[2,0]t4");
  auto back = dvv_sync(t3, s2);
  CHECK(to_string(back) == "[0,2]t3,[2,0]t4");
}

TEST_CASE("storage run reproduces both server states") {
  auto r = replay(testing::load_trace("storage_run.trace"), Mechanism::parse("dvv"));
  CHECK(to_string(r.servers.at("s")) == "[0,0]s1,[0,0]s2");
  CHECK(to_string(r.servers.at("t")) == "[0,2]t3,[0,0]s1");
}

TEST_CASE("dvv invariants hold after every step") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    ClientServerOptions o;
    o.client_count = 1 + seed % 4;
    o.server_count = 1 + seed % 3;
    o.step_count = 60;
    o.seed = seed;
    auto trace = generate_client_server_trace(o);
    replay(trace, Mechanism::parse("dvv"), [&](std::size_t, const ReplayResult& partial) {
      for (const auto& [name, server] : partial.servers) {
        REQUIRE(is_antichain(std::span<const DottedRecord>(server.siblings())));
        REQUIRE(own_names_gap_free(server));
        for (const auto& r : server.siblings()) {
          REQUIRE(ch_relation(dvc_expand(r.clock), server.node_history()) != Order::After);
        }
      }
    });
    // relations between stored records agree with the graph
    auto r = replay(trace, Mechanism::parse("dvv"));
    auto g = build_event_graph(trace).graph;
    for (const auto& [name, server] : r.servers) {
      for (const auto& x : server.siblings()) {
        for (const auto& y : server.siblings()) {
          CHECK(dvc_relation(x.clock, y.clock) ==
                oracle_relation(g, x.clock.dot(), y.clock.dot()));
        }
      }
    }
  }
}

TEST_CASE("sync converges both ways") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    ClientServerOptions o;
    o.server_count = 2;
    o.step_count = 40;
    o.seed = seed;
    auto r = replay(generate_client_server_trace(o), Mechanism::parse("dvv"));
    const auto& s = r.servers.at("S");
    const auto& t = r.servers.at("T");
    auto t2 = dvv_sync(s, t);
    CHECK(dvv_sync(s, t2) == t2);
    auto s2 = dvv_sync(t2, s);
    std::set<std::string> a, b;
    for (const auto& x : s2.siblings()) a.insert(to_string(x.clock));
    for (const auto& x : t2.siblings()) b.insert(to_string(x.clock));
    CHECK(a == b);
  }
}

TEST_CASE("peer replays keep sibling antichains") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto trace = generate_trace(1 + seed % 4, 50, 0.4, 0.5, seed);
    replay(trace, Mechanism::parse("vv-sib"), [](std::size_t, const ReplayResult& partial) {
      for (const auto& [n, rep] : partial.replicas) {
        REQUIRE(is_antichain(std::span<const VersionedRecord>(rep.siblings())));
      }
    });
  }
}
