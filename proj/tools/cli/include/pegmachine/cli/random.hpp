#pragma once

// Seeded generators of well-formed grammars and words.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pegmachine/peg.hpp"

namespace pegmachine::cli {

using Rng = std::mt19937_64;

struct RandomGrammarOptions {
  std::size_t max_nonterminals = 6;
  std::string alphabet = "ab";
  /// Expression depth bound for random_grammar.
  int max_depth = 3;
  /// Also reject grammars accepting no word of length 1 to 5, or fewer
  /// than three when they have at least four rules.
  bool require_nonempty = true;
};

/// A well-formed grammar in normal form, rejection-sampled.
peg::CnfGrammar random_cnf_grammar(Rng& rng, const RandomGrammarOptions& options = {});

/// A well-formed grammar with arbitrary (including sugar) expressions.
peg::Grammar random_grammar(Rng& rng, const RandomGrammarOptions& options = {});

std::string random_word(Rng& rng, const std::string& alphabet, std::size_t max_length);

}  // namespace pegmachine::cli
