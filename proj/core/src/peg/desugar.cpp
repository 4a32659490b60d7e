#include <set>
#include <unordered_map>

#include "pegmachine/peg.hpp"

namespace pegmachine::peg {
namespace {

class Desugarer {
 public:
  explicit Desugarer(const Grammar& source) : src_(source) {}

  Grammar run() {
    out_.declare_letters(src_.alphabet());
    std::vector<Rule> copied;
    copied.reserve(src_.rules().size());
    for (const auto& rule : src_.rules()) copied.push_back({rule.name, copy(rule.body)});
    for (auto& rule : copied) out_.add_rule(std::move(rule.name), rule.body);
    for (auto& rule : fresh_rules_) out_.add_rule(std::move(rule.name), rule.body);
    out_.set_axiom(src_.axiom());
    return std::move(out_);
  }

 private:
  std::string fresh(NodeId origin) {
    std::string name = "#" + std::to_string(origin);
    while (src_.find_rule(name) || used_.contains(name)) name += '\'';
    used_.insert(name);
    return name;
  }

  // Rule `X <- e X / ""` for the node `origin`, whose operand is `inner`.
  std::string star_rule(NodeId origin, NodeId inner) {
    if (auto it = star_names_.find(origin); it != star_names_.end()) return it->second;
    std::string name = fresh(origin);
    star_names_.emplace(origin, name);
    NodeId body = out_.choice(out_.sequence(copy(inner), out_.nonterminal(name)), out_.empty());
    fresh_rules_.push_back({name, body});
    return name;
  }

  NodeId copy(NodeId id) {
    const Node& n = src_.node(id);
    switch (n.kind) {
      case ExprKind::Empty: return out_.empty();
      case ExprKind::Terminal: return out_.terminal(n.letter);
      case ExprKind::Nonterminal: return out_.nonterminal(n.name);
      case ExprKind::Sequence: {
        NodeId l = copy(n.left);
        return out_.sequence(l, copy(n.right));
      }
      case ExprKind::Choice: {
        NodeId l = copy(n.left);
        return out_.choice(l, copy(n.right));
      }
      case ExprKind::Not: return out_.negate(copy(n.left));
      case ExprKind::Star: return out_.nonterminal(star_rule(id, n.left));
      case ExprKind::Plus: {
        NodeId first = copy(n.left);
        return out_.sequence(first, out_.nonterminal(star_rule(id, n.left)));
      }
      case ExprKind::Option: return out_.choice(copy(n.left), out_.empty());
      case ExprKind::And: return out_.negate(out_.negate(copy(n.left)));
      case ExprKind::AnyChar: {
        if (src_.alphabet().empty()) return out_.negate(out_.empty());
        std::vector<NodeId> letters;
        for (char c : src_.alphabet()) letters.push_back(out_.terminal(c));
        return out_.choice_of(letters);
      }
      case ExprKind::Fail: return out_.negate(out_.empty());
    }
    return out_.empty();
  }

  const Grammar& src_;
  Grammar out_;
  std::vector<Rule> fresh_rules_;
  std::unordered_map<NodeId, std::string> star_names_;
  std::set<std::string> used_;
};

}  // namespace

Grammar desugar(const Grammar& grammar) {
  if (grammar.core_only()) return grammar;
  return Desugarer(grammar).run();
}

}  // namespace pegmachine::peg
