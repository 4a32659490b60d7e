#include "pegmachine/pppda.hpp"

namespace pegmachine::pppda {

Machine builtin_anbncn() {
  MachineBuilder b;
  b.set_alphabet("abc");
  for (const char* q : {"q0", "q1", "qf"}) b.state(q);
  for (const char* z : {"Z0", "Y", "X"}) b.symbol(z);
  b.set_initial("q0");
  b.set_bottom("Z0");
  b.add_final("qf");
  const Letter a = b.letter('a'), bl = b.letter('b'), c = b.letter('c');
  b.push_move("q0", b.left_end(), "Z0", "q0", {"Y"}, Direction::Right);
  b.push_move("q0", a, "Y", "q0", {"X"}, Direction::Right);
  b.push_move("q0", a, "X", "q0", {"X"}, Direction::Right);
  b.pop_move("q0", bl, "X", "q0", Direction::Right);
  b.pop_move("q0", c, "Y", "q1", Direction::Up);
  b.hat_move("q1", a, "Z0", "q1", Hat::Right);
  b.push_move("q1", bl, "Z0", "q1", {"X"}, Direction::Right);
  b.push_move("q1", bl, "X", "q1", {"X"}, Direction::Right);
  b.pop_move("q1", c, "X", "q1", Direction::Right);
  b.pop_move("q1", b.right_end(), "Z0", "qf", Direction::Down);
  return b.build();
}

}  // namespace pegmachine::pppda
