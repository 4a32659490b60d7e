#include "pegmachine/peg.hpp"

namespace pegmachine::peg {

Grammar convert_acceptance(const Grammar& grammar, AcceptanceMode direction) {
  Grammar out = grammar;
  const std::string axiom = grammar.axiom();
  NodeId tail = direction == AcceptanceMode::ToFullMatch ? out.negate(out.any_char())
                                                         : out.star(out.any_char());
  std::string wrapper = out.fresh_name(axiom + "'");
  out.add_rule(wrapper, out.sequence(out.nonterminal(axiom), tail));
  out.set_axiom(wrapper);
  return out;
}

}  // namespace pegmachine::peg
