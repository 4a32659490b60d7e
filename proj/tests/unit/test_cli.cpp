#include <sstream>

#include "doctest.h"

#include "pegmachine/cli/app.hpp"
#include "pegmachine/cli/fuzz.hpp"
#include "pegmachine/cli/random.hpp"
#include "pegmachine/peg.hpp"
#include "pegmachine/translate.hpp"
#include "test_support.hpp"

using namespace pegmachine;
using pegmachine::testing::data_path;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "pegmachine");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run_app(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return data_path(name).string(); }

}  // namespace

TEST_CASE("run exit codes follow the verdict") {
  CHECK(run({"run", data("choice.peg"), "aab"}).code == cli::kExitAccept);
  CHECK(run({"run", data("choice.peg"), "abbc"}).code == cli::kExitReject);
  for (const char* engine : {"naive", "packrat", "direct", "cook"}) {
    CAPTURE(engine);
    CHECK(run({"--engine", engine, "run", data("anbncn.peg"), "aabbcc"}).code == cli::kExitAccept);
    CHECK(run({"--engine", engine, "run", data("anbncn.peg"), "aabbc"}).code == cli::kExitReject);
  }
  CHECK(run({"run", data("anbncn.ppda"), "abc"}).code == cli::kExitAccept);
  CHECK(run({"run", data("anbn.dpda"), "aabb"}).code == cli::kExitAccept);
  CHECK(run({"run", data("pairs.spec"), "abd"}).code == cli::kExitAccept);
}

TEST_CASE("invalid input and budget") {
  CHECK(run({"run", data("malformed.peg"), "a"}).code == cli::kExitInvalidInput);
  CHECK(run({"run", data("choice.peg"), "xyz"}).code == cli::kExitInvalidInput);
  CHECK(run({"run", data("does-not-exist.peg")}).code == cli::kExitInvalidInput);
  CHECK(run({"--engine", "bogus", "run", data("choice.peg")}).code == cli::kExitInvalidInput);
  CHECK(run({}).code == cli::kExitInvalidInput);
  CHECK(run({"--step-limit", "100", "run", data("loop.ppda"), "ab"}).code == cli::kExitBudget);
  Result cook = run({"--engine", "cook", "run", data("loop.ppda"), "ab", "--stats"});
  CHECK(cook.code == cli::kExitReject);
  CHECK(cook.out.find("cook.reason=loop") != std::string::npos);
}

TEST_CASE("check reports left recursion") {
  CHECK(run({"check", data("anbncn.peg")}).code == cli::kExitAccept);
  Result r = run({"check", data("left_rec.peg")});
  CHECK(r.code == cli::kExitReject);
  CHECK(r.out.find("left recursion") != std::string::npos);
  CHECK(run({"check", data("malformed.peg")}).code == cli::kExitInvalidInput);
}

TEST_CASE("stats follow a separator") {
  Result r = run({"--engine", "packrat", "run", data("choice.peg"), "aab", "--stats"});
  CHECK(r.code == 0);
  auto sep = r.out.find("---\n");
  REQUIRE(sep != std::string::npos);
  CHECK(r.out.find("packrat.computations=", sep) != std::string::npos);
}

TEST_CASE("trace prints the configurations of the run") {
  Result r = run({"trace", data("anbncn.ppda"), "aaabbbccc"});
  CHECK(r.code == 0);
  CHECK(r.out.find("(q0, XXXYZ0 x 4:3:2:1:0, 4)") != std::string::npos);
  CHECK(r.out.find("(qf, (), 10)") != std::string::npos);
}

TEST_CASE("transformations are deterministic") {
  for (const char* cmd : {"desugar", "cnf", "compile"}) {
    CAPTURE(cmd);
    Result a = run({cmd, data("anbncn.peg")});
    Result b = run({cmd, data("anbncn.peg")});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
  Result x = run({"extract", data("anbncn.ppda")});
  CHECK(x.code == 0);
  peg::Grammar g = peg::parse_grammar_text(x.out);
  for (const std::string& w : translate::all_words("abc", 6)) CHECK(peg::accepts(g, w) == pegmachine::testing::in_example_machine(w));
  CHECK(run({"extract", data("choice.peg")}).code == cli::kExitInvalidInput);
}

TEST_CASE("bench asserts linear growth") {
  Result r = run({"bench", data("anbncn.ppda"), "--sizes", "50,100,200", "--assert-linear"});
  CHECK(r.code == 0);
  CHECK_FALSE(r.out.empty());
}

TEST_CASE("compose") {
  CHECK(run({"compose", "union", data("anbn.peg"), data("cstar.peg")}).code == 0);
  CHECK(run({"compose", "reg-closure", data("nullable.spec")}).code == 0);
  CHECK(run({"compose", "concat-dcfl", data("anbn.dpda"), data("cstar.peg")}).code == 0);
  CHECK(run({"compose", "frobnicate", data("anbn.peg")}).code == cli::kExitInvalidInput);
}

TEST_CASE("fuzz with the default configuration finds no divergence") {
  cli::FuzzConfig config;
  config.cases = 30;
  cli::FuzzReport r = cli::run_fuzz(config);
  CHECK(r.cases == 30);
  CHECK_FALSE(r.divergence);
  CHECK(run({"fuzz", "--seed", "3", "--cases", "10"}).code == 0);
}

TEST_CASE("fuzz shrinks an injected divergence") {
  cli::FuzzConfig config;
  config.cases = 50;
  // Make the cook engine wrong on every word containing "b".
  config.corrupt = [](cli::Engine e, const std::string& w, bool v) {
    return e == cli::Engine::CompiledCook && w.find('b') != std::string::npos ? !v : v;
  };
  cli::FuzzReport r = cli::run_fuzz(config);
  REQUIRE(r.divergence);
  CHECK(r.divergence->word == "b");
  bool cook_differs = false;
  for (const auto& [e, v] : r.divergence->verdicts)
    if (e == cli::Engine::CompiledCook) cook_differs = v != r.divergence->verdicts.front().second;
  CHECK(cook_differs);
  std::ostringstream out;
  cli::print_divergence(out, *r.divergence);
  CHECK(out.str().find("cook") != std::string::npos);
}

TEST_CASE("generators are seeded") {
  cli::Rng a(42), b(42);
  for (int i = 0; i < 5; ++i) {
    std::string ga = peg::format_grammar(cli::random_cnf_grammar(a).grammar());
    CHECK(ga == peg::format_grammar(cli::random_cnf_grammar(b).grammar()));
  }
  cli::Rng r(1);
  for (int i = 0; i < 50; ++i) {
    peg::CnfGrammar g = cli::random_cnf_grammar(r);
    CHECK(g.grammar().rules().size() <= 6);
    CHECK(peg::check_well_formed(g.grammar()).well_formed);
    std::string w = cli::random_word(r, "ab", 5);
    CHECK(w.size() <= 5);
  }
}
