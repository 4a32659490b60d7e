#pragma once

// PEG to pointer pushdown automaton and back.

#include <string>
#include <string_view>
#include <vector>

#include "pegmachine/peg.hpp"
#include "pegmachine/pppda.hpp"

namespace pegmachine::translate {

/// States of a compiled machine.
struct PegStateName {
  enum class Kind { MainWork, Signed, Aux, Initial, Final };
  Kind kind = Kind::MainWork;
  std::string nonterminal;
  bool positive = true;
  int slot = 0;

  std::string str() const;
};

/// Stack symbol for nonterminal `name`; slot 0 is the nonterminal itself,
/// 1 and 2 the per-rule auxiliary symbols.
std::string symbol_name(std::string_view nonterminal, int slot = 0);

/// Nonterminals of an extracted grammar.
struct ExtractedNonterminal {
  enum class Kind { PopDown, PopUp, Bar, Either, Axiom };
  Kind kind = Kind::Axiom;
  std::string q, z, p;

  std::string str() const;
};

/// The machine of the construction, still containing hat moves. Its
/// positions are 1-based: machine position l reads grammar offset l-1.
pppda::Machine peg_to_dppda(const peg::CnfGrammar& g);

/// desugar, to_cnf, peg_to_dppda and desugar_hat_moves in sequence.
pppda::Machine compile(const peg::Grammar& g);

/// Grammar for a machine in normal form (see pppda::normalize). Only
/// nonterminals reachable from the axiom that can possibly succeed are
/// emitted. Throws ValidationError if `m` is not in normal form.
peg::Grammar dppda_to_peg(const pppda::Machine& m);

/// normalize followed by dppda_to_peg.
peg::Grammar extract(const pppda::Machine& m);

struct Disagreement {
  std::string word;
  bool grammar = false;
  bool machine = false;
  bool extracted = false;
};

struct RoundtripReport {
  std::size_t words_checked = 0;
  std::vector<Disagreement> disagreements;
  bool ok() const noexcept { return disagreements.empty(); }
};

/// Compiles `g`, normalizes, extracts, and compares the three recognizers
/// on every word.
RoundtripReport roundtrip_check(const peg::CnfGrammar& g, const std::vector<std::string>& words);

/// All words over `alphabet` of length at most `max_length`, shortest first.
std::vector<std::string> all_words(std::string_view alphabet, std::size_t max_length);

}  // namespace pegmachine::translate
