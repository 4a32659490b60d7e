#include <cctype>
#include <cstdio>

#include "pegmachine/pppda.hpp"

namespace pegmachine::pppda {
namespace {

std::string letter_tag(const Machine& m, Letter a) {
  if (a == m.left_end()) return "begin";
  if (a == m.right_end()) return "end";
  char c = m.alphabet()[a - 1];
  if (std::isalnum(static_cast<unsigned char>(c))) return std::string(1, c);
  char buf[8];
  std::snprintf(buf, sizeof buf, "x%02x", static_cast<unsigned char>(c));
  return buf;
}

}  // namespace

Machine desugar_hat_moves(const Machine& m) {
  if (!m.has_hats()) return m;
  MachineBuilder b(m);
  for (const auto& e : m.entries()) {
    if (e.move.hat == Hat::None) continue;
    std::string fresh = "hat:" + m.state_name(e.state) + ':' + letter_tag(m, e.letter) + ':' +
                        m.symbol_name(e.symbol);
    while (b.has_state(fresh) || b.has_symbol(fresh)) fresh += '\'';
    Move push;
    push.next = b.state(fresh);
    push.push = {b.symbol(fresh)};
    push.direction = e.move.hat == Hat::Left    ? Direction::Left
                     : e.move.hat == Hat::Right ? Direction::Right
                                                : Direction::Down;
    b.replace(e.state, e.letter, e.symbol, push);
    Move pop;
    pop.next = e.move.next;
    pop.direction = Direction::Down;
    for (Letter sigma : b.all_letters()) b.add(push.next, sigma, push.push[0], pop);
  }
  return b.build();
}

}  // namespace pegmachine::pppda
