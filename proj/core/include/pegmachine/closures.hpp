#pragma once

// Closure constructions: Boolean combinators on grammars, classical DPDAs,
// left concatenation of a DCFL with a PEL, and the regular closure of DCFLs.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "pegmachine/peg.hpp"
#include "pegmachine/pppda.hpp"

namespace pegmachine::closures {

// ---------------------------------------------------------------------------
// Boolean combinators

/// S' <- !(S !.) .*
peg::Grammar pel_complement(const peg::Grammar& g);
/// S <- (L:S1 !.) / R:S2 with the operands' nonterminals prefixed by L: and R:.
peg::Grammar pel_union(const peg::Grammar& left, const peg::Grammar& right);
/// S <- &(L:S1 !.) R:S2
peg::Grammar pel_intersection(const peg::Grammar& left, const peg::Grammar& right);

// ---------------------------------------------------------------------------
// Classical deterministic pushdown automata

using pppda::StateId;
using pppda::SymbolId;

struct DpdaMove {
  StateId next = 0;
  /// Replaces the top symbol; top first, empty pops.
  std::vector<SymbolId> push;
  bool operator==(const DpdaMove&) const = default;
};

/// Letter slot of a DPDA transition: 0 is epsilon, 1..|Sigma| the letters.
using DpdaLetter = std::uint32_t;
inline constexpr DpdaLetter kEpsilon = 0;

class DpdaBuilder;

/// Acceptance by final state after the whole input is read.
class Dpda {
 public:
  const std::vector<std::string>& states() const noexcept { return states_; }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }
  const std::string& alphabet() const noexcept { return alphabet_; }
  StateId initial() const noexcept { return initial_; }
  SymbolId bottom() const noexcept { return bottom_; }
  bool is_final(StateId q) const { return finals_.at(q); }
  const std::string& state_name(StateId q) const { return states_.at(q); }
  const std::string& symbol_name(SymbolId z) const { return symbols_.at(z); }
  std::optional<DpdaLetter> letter_of(char c) const;

  const DpdaMove* move(StateId q, DpdaLetter a, SymbolId z) const;
  const DpdaMove* epsilon_move(StateId q, SymbolId z) const { return move(q, kEpsilon, z); }
  /// Transitions ordered by (state, letter, symbol).
  const std::map<std::tuple<StateId, DpdaLetter, SymbolId>, DpdaMove>& moves() const noexcept {
    return moves_;
  }

 private:
  friend class DpdaBuilder;
  std::vector<std::string> states_;
  std::vector<std::string> symbols_;
  std::string alphabet_;
  std::vector<bool> finals_;
  StateId initial_ = 0;
  SymbolId bottom_ = 0;
  std::map<std::tuple<StateId, DpdaLetter, SymbolId>, DpdaMove> moves_;
};

class DpdaBuilder {
 public:
  void set_alphabet(std::string_view letters);
  StateId state(std::string_view name);
  SymbolId symbol(std::string_view name);
  bool has_state(std::string_view name) const { return state_ids_.contains(std::string(name)); }
  void set_initial(std::string_view name) { initial_ = state(name); }
  void set_bottom(std::string_view name) { bottom_ = symbol(name); }
  void add_final(std::string_view name);
  /// `letter` empty for epsilon. Throws on duplicates.
  void add(std::string_view q, std::optional<char> letter, std::string_view z, std::string_view p,
           const std::vector<std::string>& push);
  void add(StateId q, DpdaLetter a, SymbolId z, DpdaMove m);
  DpdaLetter letter(char c) const;

  /// Throws ValidationError when an epsilon rule shares (state, symbol)
  /// with a letter rule.
  Dpda build() const;

 private:
  std::vector<std::string> states_;
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, StateId> state_ids_;
  std::unordered_map<std::string, SymbolId> symbol_ids_;
  std::string alphabet_;
  std::vector<StateId> finals_;
  StateId initial_ = 0;
  SymbolId bottom_ = 0;
  std::map<std::tuple<StateId, DpdaLetter, SymbolId>, DpdaMove> moves_;
};

enum class DpdaVerdict : std::uint8_t { Accept, Reject, BudgetExhausted };
std::string to_string(DpdaVerdict v);

/// Without `step_limit`, each run of epsilon moves between two letters may
/// take at most 64 * (remaining + 1) steps; with it, the total is capped.
DpdaVerdict dpda_run(const Dpda& d, std::string_view word,
                     std::optional<std::uint64_t> step_limit = std::nullopt);
bool dpda_accepts(const Dpda& d, std::string_view word);

/// Same language minus the empty word.
Dpda without_empty_word(const Dpda& d);

Dpda parse_dpda_text(std::string_view text);
std::string format_dpda(const Dpda& d);

// ---------------------------------------------------------------------------
// Labeled DFAs and composition specs

/// A complete DFA over named labels.
struct LabeledDfa {
  std::vector<std::string> labels;
  std::vector<std::string> states;
  StateId initial = 0;
  std::vector<bool> finals;
  /// delta[q][j] is the successor of q on label j.
  std::vector<std::vector<StateId>> delta;

  /// Throws ValidationError unless complete and consistent.
  void validate() const;
  std::optional<std::size_t> label_index(std::string_view label) const;
  bool accepts(const std::vector<std::size_t>& labels) const;
};

LabeledDfa parse_dfa_text(std::string_view text);
std::string format_dfa(const LabeledDfa& dfa);

/// Adds epsilon transitions q -> delta(q, j) for each label j in
/// `nullable` and determinizes by subset construction.
LabeledDfa absorb_empty_labels(const LabeledDfa& dfa, const std::vector<bool>& nullable);

struct CompositionSpec {
  LabeledDfa dfa;
  /// bindings[j] recognizes the language substituted for dfa.labels[j].
  std::vector<Dpda> bindings;

  void validate() const;
};

/// Reads `@dfa <path>` and `@bind <label> <path>` lines; relative paths are
/// resolved against `base`.
CompositionSpec parse_spec_text(std::string_view text, const std::filesystem::path& base);

/// Moves the empty word out of the bindings and into the DFA, so that the
/// result satisfies the preconditions of reg_closure_machine.
CompositionSpec make_epsilon_free(const CompositionSpec& spec);

// ---------------------------------------------------------------------------
// Machines

/// One-way machine for the concatenation of L(x) and L(y). `y` must be
/// one-way and must fail by reaching an undefined transition.
pppda::Machine left_concat_dcfl(const Dpda& x, const pppda::Machine& y);

/// One-way machine for the language of the spec. Throws ValidationError
/// if a binding accepts the empty word or the spec has no labels.
pppda::Machine reg_closure_machine(const CompositionSpec& spec);

/// Membership by dynamic programming over (position, DFA state).
bool brute_force_membership(const CompositionSpec& spec, std::string_view word);

}  // namespace pegmachine::closures
