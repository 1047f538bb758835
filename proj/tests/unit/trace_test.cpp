#include <doctest.h>

#include "causality/error.hpp"
#include "causality/generator.hpp"
#include "causality/trace.hpp"
#include "test_support.hpp"

using namespace causality;

namespace {

std::size_t error_line(std::string_view text) {
  try {
    parse_trace(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("parse a small plain trace") {
  auto t = parse_trace("nodes a b c\nL a\nS a m1\nR b m1");
  CHECK(t.nodes == std::vector<std::string>{"a", "b", "c"});
  REQUIRE(t.steps.size() == 3);
  CHECK(t.steps[1].kind == StepKind::Send);
  CHECK(t.steps[1].message == "m1");
  CHECK(t.steps[2].kind == StepKind::Receive);
  CHECK(t.steps[2].line == 4);

  auto ids = step_events(t);
  CHECK(ids[0] == EventId{"a", 1});
  CHECK(ids[1] == EventId{"a", 2});
  CHECK(ids[2] == EventId{"b", 1});
  CHECK(t.universe()->index_of("c") == 2);
}

TEST_CASE("comments, blank lines and relevance marks") {
  auto t = parse_trace("# header\n\nnodes a b  # two nodes\nL! a\n  L b\n");
  REQUIRE(t.steps.size() == 2);
  CHECK(t.steps[0].relevant);
  CHECK_FALSE(t.steps[1].relevant);
}

TEST_CASE("three-node run parses with every step generating an event") {
  auto t = testing::load_trace("three_node_run.trace");
  CHECK(t.steps.size() == 9);
  auto ids = step_events(t);
  for (const auto& id : ids) CHECK(id.has_value());
  CHECK(*ids.back() == EventId{"c", 3});
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_AS(parse_trace("nodes a\nR a m9"), ParseError);
  CHECK(error_line("nodes a\nR a m9") == 2);
  CHECK(error_line("nodes a b\nS a m\nS b m") == 3);             // duplicate label
  CHECK(error_line("nodes a\nL z") == 2);                        // undeclared node
  CHECK(error_line("nodes a b\nG a b") == 2);                    // no roles
  CHECK(error_line("L a\nnodes a") == 1);                        // nodes first
  CHECK(error_line("nodes a a") == 1);
  CHECK(error_line("nodes a\nX a") == 2);                        // unknown op
  CHECK(error_line("nodes a\nL a extra") == 2);                  // arity
  CHECK(error_line("nodes a b\nS a m\nR a m") == 3);             // self receive
  CHECK(error_line("nodes a s\nclients a\nL a") == 3);           // roles half-declared
  CHECK(error_line("nodes a s\nclients a\nservers s\nL a") == 4);  // L in c/s mode
  CHECK(error_line("nodes a s\nclients a\nservers s\nP s a") == 4);
  CHECK(error_line("nodes a s t\nclients a\nservers s t\nY s s") == 4);
  CHECK(error_line("nodes a b c\nclients a\nservers b") == 3);   // c has no role
  CHECK_THROWS_AS(parse_trace(""), ParseError);
}

TEST_CASE("client/server traces name events at the receiving server") {
  auto t = testing::load_trace("storage_run.trace");
  CHECK(t.client_server());
  CHECK(t.server_universe()->names() == std::vector<std::string>{"s", "t"});
  auto ids = step_events(t);
  CHECK(ids[0] == EventId{"t", 1});
  CHECK_FALSE(ids[1].has_value());
  CHECK(ids[7] == EventId{"s", 1});
  CHECK(ids[9] == EventId{"s", 2});
}

TEST_CASE("serialize then parse is the identity") {
  for (auto name : {"three_node_run.trace", "three_node_relevant.trace", "storage_run.trace"}) {
    auto t = testing::load_trace(name);
    CHECK(parse_trace(serialize_trace(t)) == t);
  }
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto t = generate_trace(1 + seed % 6, seed % 80, 0.4, 0.5, seed);
    CHECK(parse_trace(serialize_trace(t)) == t);
    ClientServerOptions cs;
    cs.client_count = 1 + seed % 3;
    cs.server_count = 1 + seed % 3;
    cs.step_count = seed % 60;
    cs.seed = seed;
    auto u = generate_client_server_trace(cs);
    CHECK(parse_trace(serialize_trace(u)) == u);
  }
}
