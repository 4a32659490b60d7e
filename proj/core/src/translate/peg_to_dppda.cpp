#include "pegmachine/error.hpp"
#include "pegmachine/translate.hpp"

namespace pegmachine::translate {
namespace {

using pppda::Direction;
using pppda::Hat;
using Kind = PegStateName::Kind;

std::string main_state() { return PegStateName{Kind::MainWork}.str(); }
std::string signed_state(const std::string& a, bool positive) {
  return PegStateName{Kind::Signed, a, positive}.str();
}
std::string aux_state(const std::string& a, bool positive) {
  return PegStateName{Kind::Aux, a, positive, 2}.str();
}

}  // namespace

pppda::Machine peg_to_dppda(const peg::CnfGrammar& cnf) {
  const peg::Grammar& g = cnf.grammar();
  pppda::MachineBuilder b;
  b.set_alphabet(g.alphabet());

  const std::string q0 = PegStateName{Kind::Initial}.str();
  const std::string q = main_state();
  const std::string qf = PegStateName{Kind::Final}.str();
  b.state(q0);
  b.state(q);
  b.state(qf);
  b.set_initial(q0);
  b.add_final(qf);
  b.symbol("Z0");
  b.set_bottom("Z0");

  // Gamma is fixed before wildcards over stack symbols are expanded.
  for (const auto& rule : g.rules()) {
    b.state(signed_state(rule.name, true));
    b.state(signed_state(rule.name, false));
    b.symbol(symbol_name(rule.name));
  }
  for (const auto& rule : g.rules()) {
    auto kind = g.node(rule.body).kind;
    if (kind == peg::ExprKind::Sequence || kind == peg::ExprKind::Choice || kind == peg::ExprKind::Not)
      b.symbol(symbol_name(rule.name, 1));
    if (kind == peg::ExprKind::Sequence || kind == peg::ExprKind::Choice)
      b.symbol(symbol_name(rule.name, 2));
  }
  const std::vector<std::string> gamma = b.symbol_names();
  const auto sigmas = b.all_letters();

  b.push_move(q0, b.left_end(), "Z0", q, {symbol_name(g.axiom())}, Direction::Right);
  for (const auto& rule : g.rules())
    for (bool sign : {true, false})
      for (auto s : sigmas)
        b.pop_move(signed_state(rule.name, sign), s, symbol_name(rule.name), signed_state(rule.name, sign),
                   Direction::Down);
  b.pop_move(signed_state(g.axiom(), true), b.right_end(), "Z0", qf, Direction::Down);

  for (const auto& rule : g.rules()) {
    const std::string& a = rule.name;
    const std::string sa = symbol_name(a), a1 = symbol_name(a, 1), a2 = symbol_name(a, 2);
    const peg::Node& n = g.node(rule.body);
    auto child = [&](peg::NodeId id) { return g.node(id).name; };
    switch (n.kind) {
      case peg::ExprKind::Sequence: {
        const std::string bn = child(n.left), cn = child(n.right);
        for (auto s : sigmas) {
          b.push_move(q, s, sa, q, {symbol_name(bn), a1}, Direction::Down);
          b.push_move(signed_state(bn, true), s, a1, q, {symbol_name(cn), a2}, Direction::Down);
          b.pop_move(signed_state(bn, false), s, a1, signed_state(a, false), Direction::Up);
          b.pop_move(signed_state(cn, true), s, a2, aux_state(a, true), Direction::Down);
          b.pop_move(aux_state(a, true), s, a1, signed_state(a, true), Direction::Down);
          b.pop_move(signed_state(cn, false), s, a2, aux_state(a, false), Direction::Up);
          b.pop_move(aux_state(a, false), s, a1, signed_state(a, false), Direction::Up);
        }
        break;
      }
      case peg::ExprKind::Choice: {
        const std::string bn = child(n.left), cn = child(n.right);
        for (auto s : sigmas) {
          b.push_move(q, s, sa, q, {symbol_name(bn), a1}, Direction::Down);
          b.pop_move(signed_state(bn, true), s, a1, signed_state(a, true), Direction::Down);
          b.pop_move(signed_state(bn, false), s, a1, aux_state(a, true), Direction::Up);
          for (const auto& z : gamma) b.push_move(aux_state(a, true), s, z, q, {symbol_name(cn), a2}, Direction::Down);
          b.pop_move(signed_state(cn, true), s, a2, signed_state(a, true), Direction::Down);
          b.pop_move(signed_state(cn, false), s, a2, signed_state(a, false), Direction::Up);
        }
        break;
      }
      case peg::ExprKind::Empty:
        for (auto s : sigmas) b.hat_move(q, s, sa, signed_state(a, true), Hat::Down);
        break;
      case peg::ExprKind::Not: {
        const std::string bn = child(n.left);
        for (auto s : sigmas) {
          b.push_move(q, s, sa, q, {symbol_name(bn), a1}, Direction::Down);
          b.pop_move(signed_state(bn, true), s, a1, signed_state(a, false), Direction::Up);
          b.pop_move(signed_state(bn, false), s, a1, signed_state(a, true), Direction::Up);
        }
        break;
      }
      case peg::ExprKind::Terminal: {
        const pppda::Letter match = b.letter(n.letter);
        for (auto s : sigmas) {
          if (s == match) b.hat_move(q, s, sa, signed_state(a, true), Hat::Right);
          else b.hat_move(q, s, sa, signed_state(a, false), Hat::Down);
        }
        break;
      }
      default: throw ValidationError("rule '" + a + "' is not in normal form");
    }
  }
  return b.build();
}

pppda::Machine compile(const peg::Grammar& g) {
  return pppda::desugar_hat_moves(peg_to_dppda(peg::to_cnf(peg::desugar(g))));
}

}  // namespace pegmachine::translate
