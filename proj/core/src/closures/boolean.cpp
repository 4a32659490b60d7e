#include "pegmachine/closures.hpp"

namespace pegmachine::closures {
namespace {

void import_rules(const peg::Grammar& from, peg::Grammar& to, const std::string& prefix) {
  from.validate();
  to.declare_letters(from.alphabet());
  for (const auto& r : from.rules())
    to.add_rule(prefix + r.name, peg::import_expression(to, from, r.body, prefix));
}

peg::NodeId full_match(peg::Grammar& g, const std::string& name) {
  return g.sequence(g.nonterminal(name), g.negate(g.any_char()));
}

std::string fresh_axiom(const peg::Grammar& g) { return g.fresh_name("S"); }

}  // namespace

peg::Grammar pel_complement(const peg::Grammar& g) {
  peg::Grammar out;
  import_rules(g, out, "");
  const std::string axiom = out.fresh_name(g.axiom() + "'");
  peg::NodeId body = out.sequence(out.negate(full_match(out, g.axiom())), out.star(out.any_char()));
  out.add_rule(axiom, body);
  out.set_axiom(axiom);
  return out;
}

peg::Grammar pel_union(const peg::Grammar& left, const peg::Grammar& right) {
  peg::Grammar out;
  import_rules(left, out, "L:");
  import_rules(right, out, "R:");
  const std::string axiom = fresh_axiom(out);
  out.add_rule(axiom, out.choice(full_match(out, "L:" + left.axiom()), out.nonterminal("R:" + right.axiom())));
  out.set_axiom(axiom);
  return out;
}

peg::Grammar pel_intersection(const peg::Grammar& left, const peg::Grammar& right) {
  peg::Grammar out;
  import_rules(left, out, "L:");
  import_rules(right, out, "R:");
  const std::string axiom = fresh_axiom(out);
  out.add_rule(axiom, out.sequence(out.and_predicate(full_match(out, "L:" + left.axiom())),
                                   out.nonterminal("R:" + right.axiom())));
  out.set_axiom(axiom);
  return out;
}

}  // namespace pegmachine::closures
