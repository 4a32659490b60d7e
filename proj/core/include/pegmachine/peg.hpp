#pragma once

// Parsing expression grammars: abstract syntax, text format, desugaring,
// well-formedness analysis, Chomsky normal form and two recognizers.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pegmachine::peg {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

enum class ExprKind : std::uint8_t {
  Empty,
  Terminal,
  Nonterminal,
  Sequence,
  Choice,
  Not,
  // Sugar forms, removed by desugar().
  Star,
  Plus,
  Option,
  And,
  AnyChar,
  Fail,
};

bool is_sugar(ExprKind kind) noexcept;

/// One expression node. Children are referenced by id inside the owning
/// Grammar's arena; `left` is the operand of unary forms.
struct Node {
  ExprKind kind = ExprKind::Empty;
  char letter = 0;
  std::string name;
  NodeId left = kNoNode;
  NodeId right = kNoNode;
};

struct Rule {
  std::string name;
  NodeId body = kNoNode;
};

/// A PEG (N, Sigma, P, S). Expressions live in an append-only arena, so a
/// node's id is its construction index: ids are dense and never reused.
class Grammar {
 public:
  NodeId empty();
  NodeId terminal(char letter);
  NodeId nonterminal(std::string name);
  NodeId sequence(NodeId first, NodeId second);
  NodeId choice(NodeId first, NodeId second);
  NodeId negate(NodeId inner);
  NodeId star(NodeId inner);
  NodeId plus(NodeId inner);
  NodeId option(NodeId inner);
  NodeId and_predicate(NodeId inner);
  NodeId any_char();
  NodeId fail();

  /// Right-folds `a b c` into Sequence(a, Sequence(b, c)); an empty list is Empty.
  NodeId sequence_of(const std::vector<NodeId>& items);
  /// Right-folds `a / b / c`; an empty list is Fail.
  NodeId choice_of(const std::vector<NodeId>& items);

  /// Throws ValidationError if `name` already has a rule.
  void add_rule(std::string name, NodeId body);
  void set_axiom(std::string name);
  void declare_letters(std::string_view letters);

  const Node& node(NodeId id) const { return nodes_.at(id); }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  const std::vector<Rule>& rules() const noexcept { return rules_; }
  const Rule* find_rule(std::string_view name) const;
  std::optional<std::size_t> rule_index(std::string_view name) const;
  std::vector<std::string> nonterminals() const;

  /// The axiom; defaults to the first rule's name.
  const std::string& axiom() const;
  /// Sigma as a sorted string of distinct letters (declared plus appearing).
  const std::string& alphabet() const noexcept { return alphabet_; }
  bool has_letter(char letter) const noexcept;

  bool core_only() const;
  /// Checks that every referenced nonterminal has a rule and the axiom exists.
  void validate() const;
  /// `base` if unused as a rule name, otherwise `base` with primes appended.
  std::string fresh_name(std::string base) const;

 private:
  NodeId push(Node node);

  std::vector<Node> nodes_;
  std::vector<Rule> rules_;
  std::unordered_map<std::string, std::size_t> rule_index_;
  std::string axiom_;
  std::string alphabet_;
};

/// Copies expression `id` of `from` into `to`, prefixing nonterminal names.
NodeId import_expression(Grammar& to, const Grammar& from, NodeId id, std::string_view prefix = {});

// ---------------------------------------------------------------------------
// Text format

Grammar parse_grammar_text(std::string_view text);
std::string format_grammar(const Grammar& grammar);
std::string format_expression(const Grammar& grammar, NodeId id);
/// Writes `name` as a bare identifier when possible, backquoted otherwise.
std::string format_name(std::string_view name);

// ---------------------------------------------------------------------------
// Transformations and analysis

/// Rewrites every sugar form into core forms. Fresh rule names are `#k`
/// where k is the id of the sugar node that required them.
Grammar desugar(const Grammar& grammar);

struct WfReport {
  bool well_formed = true;
  std::optional<std::vector<std::string>> offending_cycle;
  std::map<std::string, bool> nullable;
  std::map<std::string, bool> can_fail;
};

/// Left-recursion analysis. Grammars with sugar are desugared first.
WfReport check_well_formed(const Grammar& grammar);

/// A grammar whose rules all have one of the shapes B / C, B C, !B, a or
/// the empty string, and whose axiom never occurs on a right-hand side.
class CnfGrammar {
 public:
  /// Throws ValidationError if `grammar` is not in normal form.
  static CnfGrammar from(Grammar grammar);
  const Grammar& grammar() const noexcept { return grammar_; }

 private:
  explicit CnfGrammar(Grammar grammar) : grammar_(std::move(grammar)) {}
  Grammar grammar_;
};

/// Empty optional when `grammar` is in normal form, otherwise the reason.
std::optional<std::string> cnf_violation(const Grammar& grammar);

/// Acceptance-preserving normal form. Throws ValidationError on
/// ill-formed or sugared input.
CnfGrammar to_cnf(const Grammar& grammar);

enum class AcceptanceMode { ToPrefix, ToFullMatch };
/// Wraps the axiom: S' <- S (!.) for full-match, S' <- S (.)* for prefix mode.
Grammar convert_acceptance(const Grammar& grammar, AcceptanceMode direction);

// ---------------------------------------------------------------------------
// Recognition

struct ParseOutcome {
  enum class Kind : std::uint8_t { Consumed, Failure, Diverged };

  Kind kind = Kind::Failure;
  /// Offset of the unconsumed suffix; meaningful for Consumed only.
  std::size_t resume = 0;

  static ParseOutcome consumed(std::size_t resume) { return {Kind::Consumed, resume}; }
  static ParseOutcome failure() { return {Kind::Failure, 0}; }
  static ParseOutcome diverged() { return {Kind::Diverged, 0}; }

  bool succeeded() const noexcept { return kind == Kind::Consumed; }
  friend bool operator==(const ParseOutcome&, const ParseOutcome&) = default;
};

std::string to_string(const ParseOutcome& outcome);

inline constexpr std::uint64_t kDefaultNaiveBudget = 1'000'000;

/// The R function applied literally. Each clause application costs one unit
/// of `budget`; exhausting it yields Diverged. `steps_used` receives the
/// number of clause applications when non-null.
ParseOutcome interpret_naive(const Grammar& grammar, NodeId expression, std::string_view input,
                             std::size_t pos, std::uint64_t budget = kDefaultNaiveBudget,
                             std::uint64_t* steps_used = nullptr);

/// Memoizing recognizer over (node, position). Each entry is computed at
/// most once; re-entering an entry under evaluation (runtime left
/// recursion) reports Diverged.
class PackratParser {
 public:
  PackratParser(const Grammar& grammar, std::string_view input);

  ParseOutcome parse(NodeId expression, std::size_t pos);
  ParseOutcome parse_axiom() { return parse(axiom_body_, 0); }

  /// Completed memo entry, if any.
  std::optional<ParseOutcome> memo(NodeId expression, std::size_t pos) const;
  std::uint64_t computations() const noexcept { return computations_; }
  std::uint64_t lookups() const noexcept { return lookups_; }

 private:
  const Grammar& grammar_;
  std::string_view input_;
  std::vector<NodeId> call_target_;
  std::vector<std::uint32_t> table_;
  NodeId axiom_body_ = kNoNode;
  std::uint64_t computations_ = 0;
  std::uint64_t lookups_ = 0;
};

/// Packrat outcome of the axiom at position 0.
ParseOutcome interpret_packrat(const Grammar& grammar, std::string_view input);

/// True iff the axiom consumes the whole input. Sugared grammars are
/// desugared first.
bool accepts(const Grammar& grammar, std::string_view input);

}  // namespace pegmachine::peg
