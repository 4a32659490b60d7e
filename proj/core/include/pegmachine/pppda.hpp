#pragma once

// Deterministic pointer pushdown automata: every stack entry remembers the
// head position at which it was pushed, and a pop may return the head there.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace pegmachine::pppda {

using StateId = std::uint32_t;
using SymbolId = std::uint32_t;
/// 0 is the left endmarker, 1..|Sigma| the letters in alphabet order,
/// |Sigma|+1 the right endmarker.
using Letter = std::uint32_t;

enum class Direction : std::uint8_t { Left, Down, Up, Right };
enum class Hat : std::uint8_t { None, Left, Down, Right };

std::string to_string(Direction d);

struct Move {
  StateId next = 0;
  /// Pushed symbols, top first. Empty means the move pops.
  std::vector<SymbolId> push;
  Direction direction = Direction::Down;
  /// A hat move changes state and moves the head without touching the stack;
  /// `push` and `direction` are ignored when set.
  Hat hat = Hat::None;

  bool is_pop() const noexcept { return hat == Hat::None && push.empty(); }
  bool operator==(const Move&) const = default;
};

struct Entry {
  StateId state;
  Letter letter;
  SymbolId symbol;
  Move move;
};

class MachineBuilder;

/// An immutable, validated machine with a dense transition table.
class Machine {
 public:
  const std::vector<std::string>& states() const noexcept { return states_; }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }
  const std::string& alphabet() const noexcept { return alphabet_; }
  Letter letter_count() const noexcept { return static_cast<Letter>(alphabet_.size() + 2); }
  Letter left_end() const noexcept { return 0; }
  Letter right_end() const noexcept { return static_cast<Letter>(alphabet_.size() + 1); }
  std::optional<Letter> letter_of(char c) const;
  /// Letter under head position `pos` of `word` (0 and |word|+1 are the endmarkers).
  Letter letter_at(std::string_view word, std::size_t pos) const;
  std::string letter_name(Letter l) const;

  StateId initial() const noexcept { return initial_; }
  SymbolId bottom() const noexcept { return bottom_; }
  bool is_final(StateId q) const { return finals_.at(q); }
  std::vector<StateId> finals() const;
  bool two_way() const noexcept { return two_way_; }

  std::optional<StateId> find_state(std::string_view name) const;
  std::optional<SymbolId> find_symbol(std::string_view name) const;
  const std::string& state_name(StateId q) const { return states_.at(q); }
  const std::string& symbol_name(SymbolId z) const { return symbols_.at(z); }

  const Move* move(StateId q, Letter a, SymbolId z) const;
  /// All defined entries ordered by (state, letter, symbol).
  std::vector<Entry> entries() const;
  std::size_t entry_count() const noexcept { return entry_count_; }
  bool has_hats() const noexcept { return has_hats_; }
  std::size_t max_push() const noexcept { return max_push_; }

 private:
  friend class MachineBuilder;
  std::size_t index(StateId q, Letter a, SymbolId z) const {
    return (static_cast<std::size_t>(q) * letter_count() + a) * symbols_.size() + z;
  }

  std::vector<std::string> states_;
  std::vector<std::string> symbols_;
  std::string alphabet_;
  std::vector<bool> finals_;
  StateId initial_ = 0;
  SymbolId bottom_ = 0;
  bool two_way_ = false;
  std::vector<std::optional<Move>> delta_;
  std::size_t entry_count_ = 0;
  bool has_hats_ = false;
  std::size_t max_push_ = 0;
};

/// Collects states, symbols and moves by name; `build` validates.
class MachineBuilder {
 public:
  MachineBuilder() = default;
  /// Starts from an existing machine, keeping its ids.
  explicit MachineBuilder(const Machine& m);

  void set_alphabet(std::string_view letters);
  const std::string& alphabet() const noexcept { return alphabet_; }
  Letter left_end() const noexcept { return 0; }
  Letter right_end() const noexcept { return static_cast<Letter>(alphabet_.size() + 1); }
  /// Throws ValidationError for letters outside the alphabet.
  Letter letter(char c) const;
  /// Letters a move can read at positions 0..n+1, in order.
  std::vector<Letter> all_letters() const;

  StateId state(std::string_view name);
  SymbolId symbol(std::string_view name);
  bool has_state(std::string_view name) const { return state_ids_.contains(std::string(name)); }
  bool has_symbol(std::string_view name) const { return symbol_ids_.contains(std::string(name)); }
  const std::vector<std::string>& state_names() const noexcept { return states_; }
  const std::vector<std::string>& symbol_names() const noexcept { return symbols_; }

  void set_initial(std::string_view name) { initial_ = state(name); }
  void set_bottom(std::string_view name) { bottom_ = symbol(name); }
  void add_final(std::string_view name) { finals_.insert(state(name)); }
  void set_two_way(bool two_way) noexcept { two_way_ = two_way; }

  /// Throws ValidationError if the key already has a move.
  void add(StateId q, Letter a, SymbolId z, Move m);
  /// Adds unless an identical move exists; throws if a different one does.
  void add_or_keep(StateId q, Letter a, SymbolId z, Move m);
  void replace(StateId q, Letter a, SymbolId z, Move m);
  void erase(StateId q, Letter a, SymbolId z);
  const Move* find(StateId q, Letter a, SymbolId z) const;

  void push_move(std::string_view q, Letter a, std::string_view z, std::string_view p,
                 const std::vector<std::string>& push, Direction d);
  void pop_move(std::string_view q, Letter a, std::string_view z, std::string_view p, Direction d);
  void hat_move(std::string_view q, Letter a, std::string_view z, std::string_view p, Hat h);

  Machine build() const;

 private:
  std::vector<std::string> states_;
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, StateId> state_ids_;
  std::unordered_map<std::string, SymbolId> symbol_ids_;
  std::string alphabet_;
  std::set<StateId> finals_;
  StateId initial_ = 0;
  SymbolId bottom_ = 0;
  bool two_way_ = false;
  std::map<std::tuple<StateId, Letter, SymbolId>, Move> moves_;
};

// ---------------------------------------------------------------------------
// Text format

Machine parse_machine_text(std::string_view text);
std::string format_machine(const Machine& m);

// ---------------------------------------------------------------------------
// Semantics

struct StackEntry {
  SymbolId symbol;
  std::size_t origin;
  bool operator==(const StackEntry&) const = default;
};

struct Configuration {
  StateId state = 0;
  /// Bottom first; back() is the top.
  std::vector<StackEntry> stack;
  std::size_t head = 0;
  bool operator==(const Configuration&) const = default;
};

Configuration initial_configuration(const Machine& m);
/// `(q0, YZ0 x 1:0, 1)` with names taken from `m`.
std::string format_configuration(const Machine& m, const Configuration& c);

enum class HaltReason : std::uint8_t { NoTransition, EmptyStack };

struct StepResult {
  std::optional<Configuration> next;
  HaltReason halt = HaltReason::NoTransition;
};

/// One move. Throws ValidationError on hat moves or letters outside the alphabet.
StepResult step(const Machine& m, const Configuration& c, std::string_view word);

struct TraceEvent {
  enum class Kind : std::uint8_t { Push, Pop };
  std::uint64_t step = 0;
  Kind kind = Kind::Push;
  Configuration before;
  Configuration after;
  std::optional<StackEntry> popped;
  Direction direction = Direction::Down;
};

using TraceSink = std::function<void(const TraceEvent&)>;

enum class Verdict : std::uint8_t { Accept, Reject, BudgetExhausted };
enum class RejectReason : std::uint8_t { None, NoTransition, NonFinalHalt, NotAtRightEnd, StackNotEmpty };

std::string to_string(Verdict v);
std::string to_string(RejectReason r);

struct RunResult {
  Verdict verdict = Verdict::Reject;
  RejectReason reason = RejectReason::None;
  std::uint64_t steps = 0;
  Configuration last;
};

/// 1000 * (n+2) * |Q| * |Gamma|, or PEGMACHINE_STEP_LIMIT when set.
std::uint64_t default_step_limit(const Machine& m, std::size_t word_length);

/// Runs from the initial configuration until the machine halts or
/// `step_limit` moves were made. Hat moves must be desugared first.
RunResult run_direct(const Machine& m, std::string_view word,
                     std::optional<std::uint64_t> step_limit = std::nullopt,
                     const TraceSink& sink = {});

/// Throws ValidationError if `word` has letters outside the alphabet.
void check_word(const Machine& m, std::string_view word);

// ---------------------------------------------------------------------------
// Transformations

/// Replaces every hat move by a push of a fresh symbol followed by a
/// stay-pop, both named `hat:<state>:<letter>:<symbol>`.
Machine desugar_hat_moves(const Machine& m);

/// Normal form for one-way machines: pops go down or up only, pushes are
/// single symbols, a fresh bottom is pushed at position 1 and popped down
/// only from the final state. Throws ValidationError on two-way machines.
Machine normalize(const Machine& m);

/// Empty optional if `m` is in normal form, otherwise the first violation.
std::optional<std::string> normal_form_violation(const Machine& m);

/// The example machine over "abc", with a hat move. It accepts every
/// a^n b^n c^n (n >= 1), but also words such as "abca" and "abcbc": after
/// the check of the prefix a^n b^n c, the second pass skips any a at the
/// bottom level and matches b against c like brackets.
Machine builtin_anbncn();

}  // namespace pegmachine::pppda
