#pragma once

// Differential testing of the five recognizers on random grammars.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pegmachine/peg.hpp"

namespace pegmachine::cli {

enum class Engine { Naive, Packrat, CompiledDirect, CompiledCook, Extracted };
inline constexpr Engine kEngines[] = {Engine::Naive, Engine::Packrat, Engine::CompiledDirect,
                                      Engine::CompiledCook, Engine::Extracted};
std::string to_string(Engine e);

struct FuzzConfig {
  std::uint64_t seed = 1;
  std::size_t cases = 200;
  std::size_t max_nonterminals = 6;
  std::size_t alphabet_size = 2;
  std::size_t max_word_length = 8;
  std::size_t words_per_case = 24;
  /// Test hook: may rewrite an engine's verdict.
  std::function<bool(Engine, const std::string& word, bool verdict)> corrupt;
};

struct Divergence {
  std::size_t case_index = 0;
  peg::Grammar grammar;
  std::string word;
  std::vector<std::pair<Engine, bool>> verdicts;
};

struct FuzzReport {
  std::size_t cases = 0;
  std::size_t words = 0;
  std::optional<Divergence> divergence;
};

/// Verdicts of every engine on `word`. An engine that cannot decide
/// (budget, divergence) reports false.
std::vector<std::pair<Engine, bool>> engine_verdicts(const peg::CnfGrammar& g, const std::string& word,
                                                     const FuzzConfig& config);

/// Runs cases in order and stops at the first divergence, shrunk.
FuzzReport run_fuzz(const FuzzConfig& config);

void print_divergence(std::ostream& out, const Divergence& d);

}  // namespace pegmachine::cli
