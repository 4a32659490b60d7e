#include <algorithm>
#include <functional>

#include "pegmachine/peg.hpp"

namespace pegmachine::peg {
namespace {

// Abstract outcomes of one expression: may succeed without consuming, may
// succeed after consuming, may fail.
struct Behaviour {
  bool empty = false;
  bool consuming = false;
  bool fails = false;

  bool succeeds() const { return empty || consuming; }
  bool operator==(const Behaviour&) const = default;
};

std::vector<Behaviour> analyse(const Grammar& g) {
  std::vector<Behaviour> b(g.node_count());
  std::vector<NodeId> target(g.node_count(), kNoNode);
  for (NodeId id = 0; id < g.node_count(); ++id) {
    const Node& n = g.node(id);
    if (n.kind == ExprKind::Nonterminal)
      if (const Rule* r = g.find_rule(n.name)) target[id] = r->body;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (NodeId id = 0; id < g.node_count(); ++id) {
      const Node& n = g.node(id);
      Behaviour next;
      switch (n.kind) {
        case ExprKind::Empty: next.empty = true; break;
        case ExprKind::Terminal: next.consuming = next.fails = true; break;
        case ExprKind::Nonterminal:
          if (target[id] != kNoNode) next = b[target[id]];
          break;
        case ExprKind::Sequence: {
          const Behaviour& l = b[n.left];
          const Behaviour& r = b[n.right];
          next.empty = l.empty && r.empty;
          next.consuming = (l.consuming && r.succeeds()) || (l.empty && r.consuming);
          next.fails = l.fails || (l.succeeds() && r.fails);
          break;
        }
        case ExprKind::Choice: {
          const Behaviour& l = b[n.left];
          const Behaviour& r = b[n.right];
          next.empty = l.empty || (l.fails && r.empty);
          next.consuming = l.consuming || (l.fails && r.consuming);
          next.fails = l.fails && r.fails;
          break;
        }
        case ExprKind::Not: {
          const Behaviour& inner = b[n.left];
          next.empty = inner.fails;
          next.fails = inner.succeeds();
          break;
        }
        default: break;
      }
      if (!(next == b[id])) {
        b[id] = next;
        changed = true;
      }
    }
  }
  return b;
}

}  // namespace

WfReport check_well_formed(const Grammar& input) {
  const Grammar g = desugar(input);
  const auto behaviour = analyse(g);
  const auto& rules = g.rules();

  // Nonterminals each rule may call before consuming anything.
  std::vector<std::vector<std::size_t>> calls(rules.size());
  for (std::size_t i = 0; i < rules.size(); ++i) {
    std::function<void(NodeId)> walk = [&](NodeId id) {
      const Node& n = g.node(id);
      switch (n.kind) {
        case ExprKind::Nonterminal:
          if (auto idx = g.rule_index(n.name)) calls[i].push_back(*idx);
          break;
        case ExprKind::Sequence:
          walk(n.left);
          if (behaviour[n.left].empty) walk(n.right);
          break;
        case ExprKind::Choice:
          walk(n.left);
          walk(n.right);
          break;
        case ExprKind::Not: walk(n.left); break;
        default: break;
      }
    };
    walk(rules[i].body);
  }

  WfReport report;
  for (const auto& rule : rules) {
    report.nullable[rule.name] = behaviour[rule.body].empty;
    report.can_fail[rule.name] = behaviour[rule.body].fails;
  }

  enum Colour : std::uint8_t { White, Grey, Black };
  std::vector<Colour> colour(rules.size(), White);
  std::vector<std::size_t> path;
  std::function<bool(std::size_t)> dfs = [&](std::size_t v) {
    colour[v] = Grey;
    path.push_back(v);
    for (std::size_t w : calls[v]) {
      if (colour[w] == Grey) {
        std::vector<std::string> cycle;
        auto it = std::find(path.begin(), path.end(), w);
        for (; it != path.end(); ++it) cycle.push_back(rules[*it].name);
        report.offending_cycle = std::move(cycle);
        return true;
      }
      if (colour[w] == White && dfs(w)) return true;
    }
    path.pop_back();
    colour[v] = Black;
    return false;
  };
  for (std::size_t v = 0; v < rules.size() && !report.offending_cycle; ++v)
    if (colour[v] == White) dfs(v);
  report.well_formed = !report.offending_cycle.has_value();
  return report;
}

}  // namespace pegmachine::peg
