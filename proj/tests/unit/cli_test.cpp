#include <doctest.h>

#include <sstream>

#include "cli.hpp"
#include "test_support.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = causality::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(CAUSALITY_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("check exit codes") {
  auto vc = run({"check", data("three_node_run.trace"), "--mechanism", "vc"});
  CHECK(vc.code == 0);
  auto lam = run({"check", data("three_node_run.trace"), "--mechanism", "lamport", "--format", "kv"});
  CHECK(lam.code == 0);
  CHECK(lam.out.find("falsely_ordered=0") == std::string::npos);
  CHECK(lam.out.find("verdict=pass") != std::string::npos);
  auto bad = run({"check", data("garbled.trace"), "--mechanism", "vc"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("line 3") != std::string::npos);
  CHECK(run({"check", data("three_node_run.trace"), "--mechanism", "dvv"}).code == 2);
  CHECK(run({"check", data("three_node_run.trace"), "--mechanism", "nope"}).code == 2);
  CHECK(run({"check", data("no_such_file.trace"), "--mechanism", "vc"}).code == 2);
  CHECK(run({"check", data("three_node_run.trace"), "--mechanism", "vc", "--format", "xml"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("compare rows") {
  auto r = run({"compare", data("three_node_run.trace")});
  REQUIRE(r.code == 0);
  std::size_t last = 0;
  for (auto name : {"ch", "vc", "dvc", "lamport", "plausible:2", "itc", "dvv"}) {
    auto at = r.out.find("\n" + std::string(name) + " ", last);
    CHECK_MESSAGE(at != std::string::npos, name);
    last = at;
  }
  auto dvv_line = r.out.substr(r.out.find("\ndvv "));
  CHECK(dvv_line.find("n/a") != std::string::npos);
  CHECK(run({"compare", data("three_node_run.trace")}).out == r.out);
}

TEST_CASE("expand") {
  auto r = run({"expand", "[2,3,3]"});
  CHECK(r.code == 0);
  CHECK(r.out == "{a1,a2,b1,b2,b3,c1,c2,c3}\n");
  CHECK(run({"expand", "[0,0]s2", "--names", "s,t"}).out == "{*s2}\n");
  CHECK(run({"expand", "[1,x]"}).code == 2);
}

TEST_CASE("render at an event") {
  auto r = run({"render", data("three_node_run.trace"), "--at", "b2", "--mechanism", "vc"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "b2 [2,2,0]\n"
        "# #  \n"
        "# #  \n"
        "- ^ -\n"
        "a b c\n");
  CHECK(run({"render", data("three_node_run.trace"), "--at", "z9"}).code == 2);
  CHECK(run({"render", data("three_node_run.trace"), "--at", "b9"}).code == 2);
}

TEST_CASE("simulate, then check through standard input") {
  auto a = run({"simulate", "--nodes", "3", "--events", "20", "--seed", "7"});
  auto b = run({"simulate", "--nodes", "3", "--events", "20", "--seed", "7"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(run({"check", "-", "--mechanism", "itc"}, a.out).code == 0);
  auto cs = run({"simulate", "--clients", "2", "--servers", "2", "--events", "30", "--seed", "1"});
  CHECK(run({"check", "-", "--mechanism", "dvv"}, cs.out).code == 0);
}

TEST_CASE("replay prints final replica states") {
  auto r = run({"replay", data("storage_run.trace"), "--mechanism", "dvv"});
  CHECK(r.code == 0);
  CHECK(r.out.find("final s [0,0]s1,[0,0]s2\n") != std::string::npos);
  CHECK(r.out.find("final t [0,2]t3,[0,0]s1\n") != std::string::npos);
}
