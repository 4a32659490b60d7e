#include "doctest.h"

#include "pegmachine/cli/random.hpp"
#include "pegmachine/error.hpp"
#include "pegmachine/peg.hpp"
#include "pegmachine/pppda.hpp"
#include "pegmachine/translate.hpp"
#include "test_support.hpp"

using namespace pegmachine;
using pegmachine::testing::read_data;

namespace {

bool machine_accepts(const pppda::Machine& m, std::string_view w) {
  return pppda::run_direct(m, w).verdict == pppda::Verdict::Accept;
}

}  // namespace

TEST_CASE("all_words enumerates shortest first") {
  auto w = translate::all_words("ab", 3);
  CHECK(w.size() == 15);
  CHECK(w.front().empty());
  CHECK(w[1] == "a");
  CHECK(w[2] == "b");
  CHECK(w.back() == "bbb");
  CHECK(translate::all_words("abc", 0).size() == 1);
}

TEST_CASE("compiled machines recognize the grammar's language") {
  struct Case {
    const char* file;
    bool (*oracle)(std::string_view);
  };
  for (Case c : {Case{"anbncn.peg", pegmachine::testing::in_anbncn},
                 Case{"anbn_or_ancn.peg", pegmachine::testing::in_anbn_or_ancn},
                 Case{"anbn.peg", pegmachine::testing::in_anbn}}) {
    CAPTURE(c.file);
    pppda::Machine m = translate::compile(peg::parse_grammar_text(read_data(c.file)));
    CHECK_FALSE(m.has_hats());
    for (const std::string& w : translate::all_words("abc", 7)) {
      CAPTURE(w);
      CHECK(machine_accepts(m, w) == c.oracle(w));
    }
  }
}

TEST_CASE("compiled machine keeps ordered choice") {
  pppda::Machine m = translate::compile(peg::parse_grammar_text(read_data("choice.peg")));
  CHECK(machine_accepts(m, "aab"));
  CHECK_FALSE(machine_accepts(m, "abbc"));
}

TEST_CASE("peg_to_dppda keeps hat moves until desugared") {
  peg::CnfGrammar g = peg::to_cnf(peg::desugar(peg::parse_grammar_text(read_data("choice.peg"))));
  pppda::Machine raw = translate::peg_to_dppda(g);
  CHECK_FALSE(raw.two_way());
  pppda::Machine m = pppda::desugar_hat_moves(raw);
  for (const std::string& w : translate::all_words("abc", 5))
    CHECK(machine_accepts(m, w) == peg::accepts(g.grammar(), w));
}

TEST_CASE("extraction from the builtin machine") {
  pppda::Machine m = pppda::desugar_hat_moves(pppda::builtin_anbncn());
  peg::Grammar g = translate::extract(m);
  CHECK(peg::check_well_formed(g).well_formed);
  for (const std::string& w : translate::all_words("abc", 7)) {
    CAPTURE(w);
    CHECK(peg::accepts(g, w) == pegmachine::testing::in_example_machine(w));
  }
}

TEST_CASE("dppda_to_peg requires the normal form") {
  CHECK_THROWS_AS(translate::dppda_to_peg(pppda::desugar_hat_moves(pppda::builtin_anbncn())), ValidationError);
}

TEST_CASE("round trip on random normal-form grammars") {
  cli::Rng rng(3);
  const auto words = translate::all_words("ab", 5);
  for (int i = 0; i < 40; ++i) {
    peg::CnfGrammar g = cli::random_cnf_grammar(rng);
    CAPTURE(peg::format_grammar(g.grammar()));
    translate::RoundtripReport r = translate::roundtrip_check(g, words);
    CHECK(r.words_checked == words.size());
    CHECK(r.ok());
  }
}

TEST_CASE("state and nonterminal names") {
  translate::PegStateName s{translate::PegStateName::Kind::Signed, "A", false, 0};
  CHECK_FALSE(s.str().empty());
  CHECK(s.str() != translate::PegStateName{translate::PegStateName::Kind::Signed, "A", true, 0}.str());
  CHECK(translate::symbol_name("A") != translate::symbol_name("A", 1));
  translate::ExtractedNonterminal x{translate::ExtractedNonterminal::Kind::PopDown, "q", "Z", "p"};
  CHECK(x.str() != translate::ExtractedNonterminal{translate::ExtractedNonterminal::Kind::PopUp, "q", "Z", "p"}.str());
}
