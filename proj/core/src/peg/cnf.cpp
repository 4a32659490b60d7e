#include <set>

#include "pegmachine/error.hpp"
#include "pegmachine/peg.hpp"

namespace pegmachine::peg {
namespace {

bool is_nonterminal(const Grammar& g, NodeId id) {
  return g.node(id).kind == ExprKind::Nonterminal;
}

class CnfBuilder {
 public:
  explicit CnfBuilder(const Grammar& source) : src_(source) {
    for (const auto& rule : src_.rules()) used_.insert(rule.name);
  }

  Grammar run() {
    out_.declare_letters(src_.alphabet());
    for (const auto& rule : src_.rules()) {
      pending_.clear();
      NodeId body = shape(rule.body);
      out_.add_rule(rule.name, body);
      for (auto& r : pending_) out_.add_rule(std::move(r.name), r.body);
    }
    std::string axiom = src_.axiom();
    if (mentioned_.contains(axiom)) {
      std::string wrapper = fresh(axiom + "'");
      std::string eps = fresh("#e");
      NodeId body = out_.sequence(out_.nonterminal(axiom), out_.nonterminal(eps));
      out_.add_rule(wrapper, body);
      out_.add_rule(eps, out_.empty());
      axiom = wrapper;
    }
    out_.set_axiom(axiom);
    return std::move(out_);
  }

 private:
  std::string fresh(std::string base) {
    while (used_.contains(base)) base += '\'';
    used_.insert(base);
    return base;
  }

  NodeId reference(const std::string& name) {
    mentioned_.insert(name);
    return out_.nonterminal(name);
  }

  std::string lift(NodeId id) {
    const Node& n = src_.node(id);
    if (n.kind == ExprKind::Nonterminal) {
      mentioned_.insert(n.name);
      return n.name;
    }
    std::string name = fresh("#" + std::to_string(id));
    NodeId body = shape(id);
    pending_.push_back({name, body});
    return name;
  }

  NodeId shape(NodeId id) {
    const Node& n = src_.node(id);
    switch (n.kind) {
      case ExprKind::Empty: return out_.empty();
      case ExprKind::Terminal: return out_.terminal(n.letter);
      case ExprKind::Nonterminal: {
        // A <- B becomes A <- B E with E <- "".
        std::string eps = fresh("#" + std::to_string(id));
        NodeId body = out_.sequence(reference(n.name), out_.nonterminal(eps));
        pending_.push_back({eps, out_.empty()});
        return body;
      }
      case ExprKind::Sequence: {
        std::string l = lift(n.left);
        std::string r = lift(n.right);
        return out_.sequence(reference(l), reference(r));
      }
      case ExprKind::Choice: {
        std::string l = lift(n.left);
        std::string r = lift(n.right);
        return out_.choice(reference(l), reference(r));
      }
      case ExprKind::Not: return out_.negate(reference(lift(n.left)));
      default: throw ValidationError("normal form requires a desugared grammar");
    }
  }

  const Grammar& src_;
  Grammar out_;
  std::vector<Rule> pending_;
  std::set<std::string> used_;
  std::set<std::string> mentioned_;
};

}  // namespace

std::optional<std::string> cnf_violation(const Grammar& g) {
  if (g.rules().empty()) return "grammar has no rules";
  for (const auto& rule : g.rules()) {
    const Node& n = g.node(rule.body);
    bool ok = false;
    switch (n.kind) {
      case ExprKind::Empty:
      case ExprKind::Terminal: ok = true; break;
      case ExprKind::Sequence:
      case ExprKind::Choice: ok = is_nonterminal(g, n.left) && is_nonterminal(g, n.right); break;
      case ExprKind::Not: ok = is_nonterminal(g, n.left); break;
      default: break;
    }
    if (!ok) return "rule '" + rule.name + "' is not in normal form: " + format_expression(g, rule.body);
  }
  for (NodeId id = 0; id < g.node_count(); ++id) {
    const Node& n = g.node(id);
    if (n.kind != ExprKind::Nonterminal) continue;
    if (!g.find_rule(n.name)) return "undefined nonterminal '" + n.name + "'";
  }
  for (const auto& rule : g.rules()) {
    const Node& n = g.node(rule.body);
    for (NodeId child : {n.left, n.right})
      if (child != kNoNode && g.node(child).name == g.axiom())
        return "axiom '" + g.axiom() + "' occurs in the body of '" + rule.name + "'";
  }
  if (!g.find_rule(g.axiom())) return "axiom '" + g.axiom() + "' has no rule";
  return std::nullopt;
}

CnfGrammar CnfGrammar::from(Grammar grammar) {
  if (auto why = cnf_violation(grammar)) throw ValidationError(*why);
  return CnfGrammar(std::move(grammar));
}

CnfGrammar to_cnf(const Grammar& grammar) {
  if (!grammar.core_only()) throw ValidationError("normal form requires a desugared grammar");
  grammar.validate();
  WfReport wf = check_well_formed(grammar);
  if (!wf.well_formed) {
    std::string cycle;
    for (const auto& name : *wf.offending_cycle) cycle += (cycle.empty() ? "" : " -> ") + name;
    throw ValidationError("grammar is left-recursive: " + cycle);
  }
  return CnfGrammar::from(CnfBuilder(grammar).run());
}

}  // namespace pegmachine::peg
