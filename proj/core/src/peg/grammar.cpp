#include <algorithm>

#include "pegmachine/error.hpp"
#include "pegmachine/peg.hpp"

namespace pegmachine::peg {

bool is_sugar(ExprKind kind) noexcept {
  switch (kind) {
    case ExprKind::Star:
    case ExprKind::Plus:
    case ExprKind::Option:
    case ExprKind::And:
    case ExprKind::AnyChar:
    case ExprKind::Fail:
      return true;
    default:
      return false;
  }
}

NodeId Grammar::push(Node node) {
  if (nodes_.size() >= kNoNode) throw ValidationError("expression arena overflow");
  nodes_.push_back(std::move(node));
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId Grammar::empty() { return push({ExprKind::Empty}); }

NodeId Grammar::terminal(char letter) {
  declare_letters(std::string_view(&letter, 1));
  Node n{ExprKind::Terminal};
  n.letter = letter;
  return push(std::move(n));
}

NodeId Grammar::nonterminal(std::string name) {
  Node n{ExprKind::Nonterminal};
  n.name = std::move(name);
  return push(std::move(n));
}

NodeId Grammar::sequence(NodeId first, NodeId second) {
  return push({ExprKind::Sequence, 0, {}, first, second});
}

NodeId Grammar::choice(NodeId first, NodeId second) {
  return push({ExprKind::Choice, 0, {}, first, second});
}

NodeId Grammar::negate(NodeId inner) { return push({ExprKind::Not, 0, {}, inner}); }
NodeId Grammar::star(NodeId inner) { return push({ExprKind::Star, 0, {}, inner}); }
NodeId Grammar::plus(NodeId inner) { return push({ExprKind::Plus, 0, {}, inner}); }
NodeId Grammar::option(NodeId inner) { return push({ExprKind::Option, 0, {}, inner}); }
NodeId Grammar::and_predicate(NodeId inner) { return push({ExprKind::And, 0, {}, inner}); }
NodeId Grammar::any_char() { return push({ExprKind::AnyChar}); }
NodeId Grammar::fail() { return push({ExprKind::Fail}); }

NodeId Grammar::sequence_of(const std::vector<NodeId>& items) {
  if (items.empty()) return empty();
  NodeId acc = items.back();
  for (auto it = items.rbegin() + 1; it != items.rend(); ++it) acc = sequence(*it, acc);
  return acc;
}

NodeId Grammar::choice_of(const std::vector<NodeId>& items) {
  if (items.empty()) return fail();
  NodeId acc = items.back();
  for (auto it = items.rbegin() + 1; it != items.rend(); ++it) acc = choice(*it, acc);
  return acc;
}

void Grammar::add_rule(std::string name, NodeId body) {
  if (body >= nodes_.size()) throw ValidationError("rule '" + name + "' has no body");
  if (rule_index_.contains(name)) throw ValidationError("duplicate rule for nonterminal '" + name + "'");
  rule_index_.emplace(name, rules_.size());
  rules_.push_back({std::move(name), body});
}

void Grammar::set_axiom(std::string name) { axiom_ = std::move(name); }

void Grammar::declare_letters(std::string_view letters) {
  for (char c : letters) {
    auto pos = std::lower_bound(alphabet_.begin(), alphabet_.end(), c);
    if (pos == alphabet_.end() || *pos != c) alphabet_.insert(pos, c);
  }
}

const Rule* Grammar::find_rule(std::string_view name) const {
  auto idx = rule_index(name);
  return idx ? &rules_[*idx] : nullptr;
}

std::optional<std::size_t> Grammar::rule_index(std::string_view name) const {
  auto it = rule_index_.find(std::string(name));
  if (it == rule_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> Grammar::nonterminals() const {
  std::vector<std::string> out;
  out.reserve(rules_.size());
  for (const auto& r : rules_) out.push_back(r.name);
  return out;
}

const std::string& Grammar::axiom() const {
  if (axiom_.empty() && !rules_.empty()) return rules_.front().name;
  return axiom_;
}

bool Grammar::has_letter(char letter) const noexcept {
  return std::binary_search(alphabet_.begin(), alphabet_.end(), letter);
}

bool Grammar::core_only() const {
  return std::none_of(nodes_.begin(), nodes_.end(), [](const Node& n) { return is_sugar(n.kind); });
}

void Grammar::validate() const {
  if (rules_.empty()) throw ValidationError("grammar has no rules");
  if (!find_rule(axiom())) throw ValidationError("axiom '" + axiom() + "' has no rule");
  for (const auto& n : nodes_) {
    if (n.kind == ExprKind::Nonterminal && !find_rule(n.name))
      throw ValidationError("undefined nonterminal '" + n.name + "'");
  }
}

std::string Grammar::fresh_name(std::string base) const {
  while (rule_index_.contains(base)) base += '\'';
  return base;
}

NodeId import_expression(Grammar& to, const Grammar& from, NodeId id, std::string_view prefix) {
  const Node& n = from.node(id);
  auto sub = [&](NodeId child) { return import_expression(to, from, child, prefix); };
  switch (n.kind) {
    case ExprKind::Empty: return to.empty();
    case ExprKind::Terminal: return to.terminal(n.letter);
    case ExprKind::Nonterminal: return to.nonterminal(std::string(prefix) + n.name);
    case ExprKind::Sequence: {
      NodeId l = sub(n.left);
      return to.sequence(l, sub(n.right));
    }
    case ExprKind::Choice: {
      NodeId l = sub(n.left);
      return to.choice(l, sub(n.right));
    }
    case ExprKind::Not: return to.negate(sub(n.left));
    case ExprKind::Star: return to.star(sub(n.left));
    case ExprKind::Plus: return to.plus(sub(n.left));
    case ExprKind::Option: return to.option(sub(n.left));
    case ExprKind::And: return to.and_predicate(sub(n.left));
    case ExprKind::AnyChar: return to.any_char();
    case ExprKind::Fail: return to.fail();
  }
  return to.fail();
}

std::string to_string(const ParseOutcome& outcome) {
  switch (outcome.kind) {
    case ParseOutcome::Kind::Consumed:
      return "Consumed(" + std::to_string(outcome.resume) + ")";
    case ParseOutcome::Kind::Failure:
      return "Failure";
    case ParseOutcome::Kind::Diverged:
      return "Diverged";
  }
  return "?";
}

}  // namespace pegmachine::peg
