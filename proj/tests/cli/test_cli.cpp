#include <doctest.h>

#include <algorithm>

#include <nlohmann/json.hpp>

#include "cli/commands.hpp"

using hmsrep::cli::run;

namespace {

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("classify") {
  auto r = run({"classify", "--weights", "2/3,1/3"});
  CHECK(r.exit_code == 0);
  CHECK(has(r.out, "FiniteClass(2)"));
  r = run({"classify", "--weights", "1/6,1/2,1/3", "--format", "json"});
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["atoms"] == 3);
  CHECK(j["measure"]["weights"] == nlohmann::json({"1/2", "1/3", "1/6"}));
  CHECK(has(run({"classify", "--family", "dyadic"}).out, "Countable"));
  CHECK(run({"classify", "--continuum"}).exit_code == 0);
}

TEST_CASE("input errors exit with 2") {
  CHECK(run({"classify", "--weights", "1/2,1/3"}).exit_code == 2);
  CHECK(run({"classify", "--weights", "1/2,x"}).exit_code == 2);
  CHECK(run({"classify", "--weights", "1,0"}).exit_code == 2);
  CHECK(run({"leq", "--source"}).exit_code == 2);
  CHECK(run({"frobnicate"}).exit_code == 2);
  CHECK(run({"quantum-reduce", "--amplitudes", "1,1"}).exit_code == 2);
  CHECK(run({"quantum-reduce", "--amplitudes", "1,0", "--basis", "1,0", "--basis", "1,0"}).exit_code == 2);
  const auto r = run({"classify", "--weights", "1/2,1/3"});
  CHECK(has(r.err, "error"));
  CHECK(r.out.empty());
}

TEST_CASE("help exits cleanly") { CHECK(run({"--help"}).exit_code == 0); }

TEST_CASE("leq against finite and countable targets") {
  auto r = run({"leq", "--source", "2/3,1/3", "--target", "2/3,1/4,1/12", "--format", "csv"});
  CHECK(r.exit_code == 0);
  CHECK(r.out == "verdict,block,source_weight,target_atoms\nleq,1,2/3,1\nleq,2,1/3,2;3\n");
  r = run({"leq", "--source", "1/2,1/2", "--target", "2/3,1/3", "--format", "json"});
  CHECK(r.exit_code == 0);
  CHECK(nlohmann::json::parse(r.out)["verdict"] == "no_morphism");
  r = run({"leq", "--source", "3/4,1/4", "--target-family", "dyadic", "--format", "json"});
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["assignment"]["blocks"][0]["atoms"] == nlohmann::json({1, 2}));
  CHECK(j["assignment"]["blocks"][1]["tail"]["start"] == 3);
  r = run({"leq", "--source", "1/3,1/3,1/3", "--target-family", "dyadic", "--format", "json"});
  CHECK(nlohmann::json::parse(r.out)["verdict"] == "no_morphism");
}

TEST_CASE("no least upper bound") {
  auto r = run({"no-lub", "--member", "1/2,1/2", "--member", "2/3,1/3", "--ub1", "1/2,1/6,1/3", "--ub2",
                "1/2,1/3,1/6"});
  CHECK(r.exit_code == 1);
  r = run({"no-lub", "--member", "2/3,1/3", "--member", "3/4,1/4", "--ub1", "2/3,1/4,1/12", "--ub2",
           "5/12,1/3,1/4", "--format", "json"});
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["common_coarsenings"] ==
        nlohmann::json::parse(R"([{"weights":["1/1"]},{"weights":["3/4","1/4"]},{"weights":["2/3","1/3"]}])"));
}

TEST_CASE("construct") {
  auto r = run({"construct", "--weights", "1/2,1/3,1/6", "--context", "countable", "--depth", "6"});
  CHECK(r.exit_code == 0);
  CHECK(has(r.out, "Q: 1/2, 2/3"));
  CHECK(has(r.out, "verification: pass"));
  r = run({"construct", "--weights", "3/4,1/4", "--context", "threshold"});
  CHECK(r.exit_code == 0);
  CHECK(has(r.out, "3/4"));
  CHECK(run({"construct", "--weights", "1", "--context", "countable"}).exit_code == 1);
  CHECK(run({"construct", "--weights", "1/2,1/2", "--context", "countable", "--depth", "0"}).exit_code == 1);
}

TEST_CASE("simulate is deterministic per seed") {
  const std::vector<std::string> args{"simulate", "--model", "reduced", "--costheta", "1/2", "--n", "5000",
                                      "--seed", "9", "--format", "json"};
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["exact"]["o1"] == "3/4");
  CHECK(j["counts"]["o1"].get<int>() + j["counts"]["o2"].get<int>() == 5000);
  auto other = args;
  other[8] = "10";
  CHECK(run(other).out != a.out);
  const auto t = run({"simulate", "--model", "threshold", "--weights", "1/2,1/2", "--n", "100", "--seed", "1"});
  CHECK(t.exit_code == 0);
  CHECK(run({"simulate", "--model", "countable", "--weights", "1/2,1/3,1/6", "--n", "100"}).exit_code == 0);
}

TEST_CASE("bands") {
  const auto r = run({"bands", "--lambda", "2", "--format", "csv"});
  CHECK(r.exit_code == 0);
  CHECK(has(r.out, "1,3/4,1/1,o1,0,"));
  CHECK(has(r.out, "4,0/1,1/4,o2,"));
  CHECK(run({"bands", "--lambda", "21"}).exit_code == 1);
  CHECK(run({"bands", "--lambda", "0"}).exit_code == 1);
}

TEST_CASE("quantum reduction") {
  auto r = run({"quantum-reduce", "--amplitudes", "0.8660254037844386,0.5", "--format", "json"});
  CHECK(r.exit_code == 0);
  CHECK(has(r.out, "\"3/4\""));
  r = run({"quantum-reduce", "--amplitudes", "0.7071067811865476,0.7071067811865476", "--basis",
           "0.7071067811865476,0.7071067811865476", "--basis", "0.7071067811865476,-0.7071067811865476"});
  CHECK(r.exit_code == 1);  // a point mass has no countable representation
  r = run({"quantum-reduce", "--amplitudes", "0:0.6,0.8:0"});
  CHECK(r.exit_code == 0);
  CHECK(has(r.out, "16/25"));
}

TEST_CASE("equivalence") {
  const auto r = run({"equivalence", "--points", "5", "--n", "20000", "--seed", "4", "--format", "json"});
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["pass"] == true);
}

TEST_CASE("documented examples") {
  auto r = run({"simulate", "--model", "reduced", "--costheta", "1", "--n", "10", "--format", "csv"});
  CHECK(has(r.out, "o1,10,1,1/1,true"));
  r = run({"leq", "--source", "1/2,1/3,1/6", "--target", "1/2,1/3,1/6"});
  CHECK(has(r.out, "block 1 [1/2]: {1}\nblock 2 [1/3]: {2}\nblock 3 [1/6]: {3}"));
  r = run({"leq", "--source", "3/4,1/4", "--target", "2/3,1/3"});
  CHECK(r.exit_code == 0);
  CHECK(has(r.out, "no morphism"));
  r = run({"construct", "--weights", "1", "--context", "threshold"});
  CHECK(r.exit_code == 0);
  CHECK(has(r.out, "o1: [0, 1)"));
  CHECK(has(run({"construct", "--weights", "3/4,1/4", "--context", "countable"}).out, "verification: pass"));
  r = run({"no-lub", "--member", "2/3,1/3", "--ub1", "1/2,1/2", "--ub2", "2/3,1/3"});
  CHECK(r.exit_code == 1);
  CHECK(has(r.err, "NotUpperBound"));
  r = run({"bands", "--lambda", "3", "--format", "csv"});
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 9);
}
