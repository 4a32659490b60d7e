#include "doctest.h"

#include "pegmachine/cli/random.hpp"
#include "pegmachine/closures.hpp"
#include "pegmachine/error.hpp"
#include "pegmachine/peg.hpp"
#include "pegmachine/pppda.hpp"
#include "pegmachine/translate.hpp"
#include "test_support.hpp"

using namespace pegmachine;
using namespace pegmachine::closures;
using pegmachine::testing::read_data;
using pegmachine::testing::run_of;

namespace {

bool machine_accepts(const pppda::Machine& m, std::string_view w) {
  return pppda::run_direct(m, w).verdict == pppda::Verdict::Accept;
}

CompositionSpec load_spec(const char* name) { return parse_spec_text(read_data(name), PEGMACHINE_TEST_DATA); }

// a^n b^m with m >= n >= 1
bool in_anbm_tail(std::string_view w) {
  std::size_t n = run_of(w, 0, 'a');
  std::size_t m = run_of(w, n, 'b');
  return n >= 1 && n + m == w.size() && m >= n;
}

}  // namespace

TEST_CASE("dpda with an epsilon move") {
  Dpda d = parse_dpda_text(read_data("anbn.dpda"));
  for (const std::string& w : translate::all_words("ab", 8)) {
    CAPTURE(w);
    CHECK(dpda_accepts(d, w) == (!w.empty() && pegmachine::testing::in_anbn(w)));
  }
  CHECK(format_dpda(parse_dpda_text(format_dpda(d))) == format_dpda(d));
}

TEST_CASE("dpda determinism and budget") {
  DpdaBuilder b;
  b.set_alphabet("a");
  b.state("q");
  b.symbol("Z");
  b.set_initial("q");
  b.set_bottom("Z");
  b.add("q", std::nullopt, "Z", "q", {"Z"});
  CHECK(dpda_run(b.build(), "a", 100) == DpdaVerdict::BudgetExhausted);
  CHECK(dpda_run(b.build(), "a") == DpdaVerdict::BudgetExhausted);
  b.add("q", 'a', "Z", "q", {"Z"});
  CHECK_THROWS_AS(b.build(), ValidationError);
  CHECK_THROWS_AS(b.add("q", 'a', "Z", "q", {}), ValidationError);
  CHECK_THROWS_AS(parse_dpda_text("@kind dpda\n@alphabet \"a\"\n@states q\n@initial q\n@bottom Z\nq \"b\" Z -> q Z\n"),
                  Error);
}

TEST_CASE("without_empty_word removes only the empty word") {
  Dpda d = parse_dpda_text(read_data("bstar.dpda"));
  Dpda e = without_empty_word(d);
  CHECK(dpda_accepts(d, ""));
  CHECK_FALSE(dpda_accepts(e, ""));
  for (const std::string& w : translate::all_words("b", 6))
    if (!w.empty()) CHECK(dpda_accepts(e, w));
  Dpda anbn = parse_dpda_text(read_data("anbn.dpda"));
  Dpda anbn2 = without_empty_word(anbn);
  for (const std::string& w : translate::all_words("ab", 6)) CHECK(dpda_accepts(anbn, w) == dpda_accepts(anbn2, w));
}

TEST_CASE("labeled dfa text and validation") {
  LabeledDfa dfa = parse_dfa_text(read_data("pairs.dfa"));
  CHECK(dfa.labels == std::vector<std::string>{"a1", "a2"});
  CHECK(dfa.accepts({}));
  CHECK(dfa.accepts({0, 1, 0, 1}));
  CHECK_FALSE(dfa.accepts({0, 0}));
  CHECK(format_dfa(parse_dfa_text(format_dfa(dfa))) == format_dfa(dfa));
  CHECK_THROWS_AS(parse_dfa_text("@kind dfa\n@labels x\n@states s t\n@initial s\n@final t\ns x -> t\n"), Error);
}

TEST_CASE("absorbing empty labels") {
  LabeledDfa dfa = parse_dfa_text(read_data("tail.dfa"));
  LabeledDfa nullable_tail = absorb_empty_labels(dfa, {false, true});
  CHECK(nullable_tail.accepts({0}));
  CHECK(nullable_tail.accepts({0, 1, 1}));
  CHECK_FALSE(nullable_tail.accepts({}));
  LabeledDfa nullable_head = absorb_empty_labels(dfa, {true, false});
  CHECK(nullable_head.accepts({}));
  CHECK(nullable_head.accepts({1, 1}));
  CHECK(nullable_head.accepts({0, 1}));
  CHECK_FALSE(nullable_head.accepts({0, 0}));
  nullable_head.validate();
}

TEST_CASE("epsilon-free specs keep their language") {
  CompositionSpec spec = load_spec("nullable.spec");
  CHECK_THROWS_AS(reg_closure_machine(spec), ValidationError);
  CompositionSpec free = make_epsilon_free(spec);
  for (const Dpda& d : free.bindings) CHECK_FALSE(dpda_accepts(d, ""));
  pppda::Machine m = reg_closure_machine(free);
  for (const std::string& w : translate::all_words("ab", 7)) {
    CAPTURE(w);
    CHECK(brute_force_membership(spec, w) == in_anbm_tail(w));
    CHECK(brute_force_membership(free, w) == in_anbm_tail(w));
    CHECK(machine_accepts(m, w) == in_anbm_tail(w));
  }
}

TEST_CASE("reg closure of the pairs spec") {
  pppda::Machine m = reg_closure_machine(make_epsilon_free(load_spec("pairs.spec")));
  CHECK(machine_accepts(m, ""));
  CHECK(machine_accepts(m, "abd"));
  CHECK(machine_accepts(m, "abcdaabbd"));
  CHECK_FALSE(machine_accepts(m, "ab"));
  CHECK_FALSE(machine_accepts(m, "abab"));
}

TEST_CASE("left concatenation") {
  Dpda x = parse_dpda_text(read_data("anbn.dpda"));
  pppda::Machine m = left_concat_dcfl(x, translate::compile(peg::parse_grammar_text(read_data("cstar.peg"))));
  for (const std::string& w : translate::all_words(m.alphabet(), 7)) {
    CAPTURE(w);
    std::size_t n = run_of(w, 0, 'a');
    bool want = n >= 1 && run_of(w, n, 'b') == n && run_of(w, 2 * n, 'c') == w.size() - 2 * n;
    CHECK(machine_accepts(m, w) == want);
  }
}

TEST_CASE("boolean combinators") {
  peg::Grammar choice = peg::parse_grammar_text(read_data("choice.peg"));
  peg::Grammar cstar = peg::parse_grammar_text(read_data("cstar.peg"));
  peg::Grammar neg = pel_complement(choice);
  peg::Grammar neg2 = pel_complement(neg);
  peg::Grammar uni = pel_union(choice, cstar);
  peg::Grammar inter = pel_intersection(choice, cstar);
  CHECK(peg::check_well_formed(uni).well_formed);
  for (const std::string& w : translate::all_words("abc", 5)) {
    CAPTURE(w);
    bool a = peg::accepts(choice, w), b = peg::accepts(cstar, w);
    CHECK(peg::accepts(neg, w) == !a);
    CHECK(peg::accepts(neg2, w) == a);
    CHECK(peg::accepts(uni, w) == (a || b));
    CHECK(peg::accepts(inter, w) == (a && b));
  }
}

TEST_CASE("combinators compose with themselves on random grammars") {
  cli::Rng rng(17);
  cli::RandomGrammarOptions opts;
  opts.max_nonterminals = 3;
  for (int i = 0; i < 10; ++i) {
    peg::Grammar g = cli::random_grammar(rng, opts);
    peg::Grammar h = cli::random_grammar(rng, opts);
    // De Morgan: !(g | h) == !g & !h
    peg::Grammar lhs = pel_complement(pel_union(g, h));
    peg::Grammar rhs = pel_intersection(pel_complement(g), pel_complement(h));
    for (const std::string& w : translate::all_words("ab", 5)) CHECK(peg::accepts(lhs, w) == peg::accepts(rhs, w));
  }
}
