#include <optional>

#include "doctest.h"

#include "pegmachine/cli/random.hpp"
#include "pegmachine/cooksim.hpp"
#include "pegmachine/error.hpp"
#include "pegmachine/peg.hpp"
#include "pegmachine/pppda.hpp"
#include "pegmachine/translate.hpp"
#include "test_support.hpp"

using namespace pegmachine;
using pegmachine::testing::read_data;

TEST_CASE("linear simulation agrees with the direct run") {
  pppda::Machine m = pppda::desugar_hat_moves(pppda::builtin_anbncn());
  for (const std::string& w : translate::all_words("abc", 7)) {
    CAPTURE(w);
    cook::LinearResult r = cook::run_linear(m, w);
    CHECK(r.accepted == pegmachine::testing::in_example_machine(w));
    CHECK(r.accepted == (r.reason == cook::RejectReason::None));
  }
}

TEST_CASE("agreement on compiled random grammars") {
  cli::Rng rng(5);
  const auto words = translate::all_words("ab", 6);
  for (int i = 0; i < 40; ++i) {
    peg::CnfGrammar g = cli::random_cnf_grammar(rng);
    pppda::Machine m = translate::compile(g.grammar());
    for (const std::string& w : words) {
      bool direct = pppda::run_direct(m, w).verdict == pppda::Verdict::Accept;
      REQUIRE(cook::run_linear(m, w).accepted == direct);
    }
  }
}

namespace {

// Runs from `c` with only its top entry on the stack and returns the
// configuration at which that entry is about to be popped.
std::optional<cook::SurfaceConfig> replay_terminator(const pppda::Machine& m, std::string_view w,
                                                     const cook::SurfaceConfig& c) {
  pppda::Configuration k{c.state, {{c.symbol, c.origin}}, c.head};
  for (int guard = 0; guard < 100000; ++guard) {
    const pppda::StackEntry top = k.stack.back();
    const pppda::Move* mv = m.move(k.state, m.letter_at(w, k.head), top.symbol);
    if (!mv) return std::nullopt;
    if (mv->is_pop() && k.stack.size() == 1) return cook::SurfaceConfig{k.state, top.symbol, k.head, top.origin};
    k = *pppda::step(m, k, w).next;
  }
  return std::nullopt;
}

void check_terminators(const pppda::Machine& m, std::string_view w) {
  std::vector<cook::SurfaceConfig> reached;
  auto surface = [](const pppda::Configuration& k) {
    return cook::SurfaceConfig{k.state, k.stack.back().symbol, k.head, k.stack.back().origin};
  };
  reached.push_back(surface(pppda::initial_configuration(m)));
  pppda::run_direct(m, w, 100000, [&](const pppda::TraceEvent& e) {
    if (!e.after.stack.empty()) reached.push_back(surface(e.after));
  });
  cook::Simulator sim(m, w);
  for (const cook::SurfaceConfig& c : reached) {
    cook::TerminatorResult t = sim.terminator(c);
    std::optional<cook::SurfaceConfig> want = replay_terminator(m, w, c);
    if (t.kind == cook::TerminatorResult::Kind::Done) {
      REQUIRE(want);
      CHECK(t.terminator == *want);
    } else {
      CHECK_FALSE(want);
    }
  }
}

}  // namespace

TEST_CASE("terminators agree with a replay of the direct semantics") {
  pppda::Machine builtin = pppda::desugar_hat_moves(pppda::builtin_anbncn());
  for (const std::string& w : translate::all_words("abc", 5)) check_terminators(builtin, w);
  pppda::Machine choice = translate::compile(peg::parse_grammar_text(read_data("choice.peg")));
  for (const std::string& w : translate::all_words("abc", 4)) check_terminators(choice, w);
}

TEST_CASE("completed entries are answered from the table") {
  pppda::Machine m = pppda::desugar_hat_moves(pppda::builtin_anbncn());
  cook::Simulator sim(m, "aabbcc");
  cook::SurfaceConfig start{m.initial(), m.bottom(), 0, 0};
  cook::TerminatorResult t = sim.terminator(start);
  REQUIRE(t.kind == cook::TerminatorResult::Kind::Done);
  CHECK(sim.entry(start).status == cook::TableEntry::Status::Done);
  std::uint64_t before = sim.ops();
  cook::TerminatorResult again = sim.terminator(start);
  CHECK(again.terminator == t.terminator);
  CHECK(sim.ops() == before + 1);
}

TEST_CASE("loops are detected") {
  pppda::Machine loop = pppda::parse_machine_text(read_data("loop.ppda"));
  cook::LinearResult r = cook::run_linear(loop, "abab");
  CHECK_FALSE(r.accepted);
  CHECK(r.reason == cook::RejectReason::Loop);
  CHECK(r.loop_at);

  pppda::Machine built = cook::looping_machine("ab");
  for (std::size_t n : {0, 5, 1000}) {
    cook::LinearResult lr = cook::run_linear(built, std::string(n, 'b'));
    CHECK(lr.reason == cook::RejectReason::Loop);
    CHECK(pppda::run_direct(built, std::string(n, 'b'), 1000).verdict == pppda::Verdict::BudgetExhausted);
  }
}

TEST_CASE("reject reasons") {
  pppda::Machine m = pppda::desugar_hat_moves(pppda::builtin_anbncn());
  for (const char* w : {"abcc", "aabbc", "", "cba"}) {
    cook::LinearResult r = cook::run_linear(m, w);
    CHECK_FALSE(r.accepted);
    CHECK(r.reason != cook::RejectReason::None);
    CHECK(r.reason != cook::RejectReason::Loop);
  }
}

TEST_CASE("work stays within the linear bound") {
  pppda::Machine m = pppda::desugar_hat_moves(pppda::builtin_anbncn());
  std::uint64_t previous = 0;
  for (std::size_t n : {25, 50, 100, 200}) {
    std::string w = std::string(n, 'a') + std::string(n, 'b') + std::string(n, 'c');
    cook::WorkReport r = cook::work_bound_check(m, w);
    CHECK(r.within_bound());
    CHECK(r.ops > previous);
    previous = r.ops;
  }
}

TEST_CASE("the simulator rejects hat moves and foreign letters") {
  CHECK_THROWS_AS(cook::Simulator(pppda::builtin_anbncn(), "abc"), ValidationError);
  pppda::Machine m = pppda::desugar_hat_moves(pppda::builtin_anbncn());
  CHECK_THROWS_AS(cook::Simulator(m, "abx"), ValidationError);
  CHECK(cook::to_string(cook::RejectReason::Loop) == "loop");
}
