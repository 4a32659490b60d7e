#include "pegmachine/error.hpp"
#include "pegmachine/pppda.hpp"

namespace pegmachine::pppda {
namespace {

// While the source machine reads the left endmarker, the normalized one
// already sits on position 1 in a "begin" copy of the state. Symbols pushed
// at position 0 of the source are renamed into begin-symbols so that an up
// pop of them knows to re-enter begin mode.
class Normalizer {
 public:
  explicit Normalizer(const Machine& m) : m_(m) {
    auto taken = [&](const std::string& prefix) {
      for (const auto& n : m_.states())
        if (n.rfind(prefix, 0) == 0) return true;
      for (const auto& n : m_.symbols())
        if (n.rfind(prefix, 0) == 0) return true;
      return false;
    };
    for (int k = 2; taken(prefix_); ++k) prefix_ = "norm" + std::to_string(k) + ":";
    bracketable_.assign(m_.symbols().size(), false);
    bracketable_[m_.bottom()] = true;
    for (const auto& e : m_.entries())
      if (e.letter == m_.left_end() && e.move.direction == Direction::Down)
        for (SymbolId s : e.move.push) bracketable_[s] = true;
  }

  Machine run() {
    b_.set_alphabet(m_.alphabet());
    const std::string init = prefix_ + "init";
    const std::string final_state = prefix_ + "final";
    const std::string bottom = prefix_ + "Z0";
    b_.state(init);
    for (const auto& q : m_.states()) b_.state(q);
    for (const auto& q : m_.states()) b_.state(begin(q));
    b_.state(final_state);
    b_.set_initial(init);
    b_.add_final(final_state);
    b_.set_bottom(bottom);

    b_.push_move(init, b_.left_end(), bottom, begin(m_.state_name(m_.initial())),
                 {bracket(m_.symbol_name(m_.bottom()))}, Direction::Right);
    for (const auto& e : m_.entries()) {
      const std::string& z = m_.symbol_name(e.symbol);
      if (e.letter == m_.left_end()) {
        if (!bracketable_[e.symbol]) continue;
        for (Letter sigma = 1; sigma <= b_.right_end(); ++sigma)
          translate(begin(m_.state_name(e.state)), sigma, bracket(z), true, true, e.move);
      } else {
        translate(m_.state_name(e.state), e.letter, z, false, false, e.move);
        if (bracketable_[e.symbol])
          translate(m_.state_name(e.state), e.letter, bracket(z), true, false, e.move);
      }
    }
    for (StateId f : m_.finals())
      b_.pop_move(m_.state_name(f), b_.right_end(), bottom, final_state, Direction::Down);
    return desugar_hat_moves(b_.build());
  }

 private:
  std::string begin(const std::string& name) const { return prefix_ + "begin:" + name; }
  std::string bracket(const std::string& name) const { return prefix_ + "begin:" + name; }

  void translate(const std::string& from, Letter a, const std::string& top, bool top_bracketed,
                 bool in_begin, const Move& mv) {
    const std::string& p = m_.state_name(mv.next);
    if (mv.push.empty()) {
      switch (mv.direction) {
        case Direction::Down:
          b_.pop_move(from, a, top, in_begin ? begin(p) : p, Direction::Down);
          break;
        case Direction::Up:
          b_.pop_move(from, a, top, top_bracketed ? begin(p) : p, Direction::Up);
          break;
        case Direction::Right:
          if (in_begin) {
            b_.pop_move(from, a, top, p, Direction::Down);
          } else {
            const std::string step = prefix_ + "popr:" + p;
            b_.hat_move(from, a, top, step, Hat::Right);
            Move pop;
            pop.next = b_.state(p);
            for (Letter sigma = 1; sigma <= b_.right_end(); ++sigma)
              b_.add_or_keep(b_.state(step), sigma, b_.symbol(top), pop);
          }
          break;
        case Direction::Left: throw ValidationError("left move in a one-way machine");
      }
      return;
    }
    std::vector<std::string> syms;
    for (SymbolId s : mv.push) syms.push_back(m_.symbol_name(s));
    if (in_begin && mv.direction == Direction::Down) {
      for (auto& s : syms) s = bracket(s);
      chain(from, a, top, begin(p), syms, Direction::Down);
    } else if (in_begin) {
      chain(from, a, top, p, syms, Direction::Down);
    } else {
      chain(from, a, top, p, syms, mv.direction);
    }
  }

  // Pushes syms (top first) one at a time: the deepest with `first`, the
  // rest with down moves through intermediate states.
  void chain(const std::string& from, Letter a, const std::string& top, const std::string& target,
             const std::vector<std::string>& syms, Direction first) {
    const std::size_t k = syms.size();
    if (k == 1) {
      b_.push_move(from, a, top, target, syms, first);
      return;
    }
    std::string joined;
    for (const auto& s : syms) joined += (joined.empty() ? "" : "|") + s;
    auto link = [&](std::size_t i) {
      return i == 0 ? target : prefix_ + "chain:" + target + ":" + joined + ":" + std::to_string(i);
    };
    b_.push_move(from, a, top, link(k - 1), {syms[k - 1]}, first);
    for (std::size_t i = k - 1; i >= 1; --i) {
      Move push;
      push.next = b_.state(link(i - 1));
      push.push = {b_.symbol(syms[i - 1])};
      push.direction = Direction::Down;
      for (Letter sigma = 1; sigma <= b_.right_end(); ++sigma)
        b_.add_or_keep(b_.state(link(i)), sigma, b_.symbol(syms[i]), push);
    }
  }

  const Machine& m_;
  MachineBuilder b_;
  std::string prefix_ = "norm:";
  std::vector<bool> bracketable_;
};

}  // namespace

Machine normalize(const Machine& input) {
  if (input.two_way()) throw ValidationError("normalization requires a one-way machine");
  Machine m = desugar_hat_moves(input);
  return Normalizer(m).run();
}

std::optional<std::string> normal_form_violation(const Machine& m) {
  if (m.two_way()) return "machine is two-way";
  if (m.has_hats()) return "machine has hat moves";
  const Move* first = m.move(m.initial(), m.left_end(), m.bottom());
  if (!first || first->push.size() != 1 || first->direction != Direction::Right)
    return "the initial move must push one symbol while moving right";
  for (const auto& e : m.entries()) {
    std::string where = "(" + m.state_name(e.state) + ", " + m.letter_name(e.letter) + ", " +
                        m.symbol_name(e.symbol) + ")";
    const Move& mv = e.move;
    if (mv.push.empty()) {
      if (mv.direction != Direction::Down && mv.direction != Direction::Up)
        return where + " pops moving " + to_string(mv.direction);
      if (e.symbol == m.bottom() && (mv.direction != Direction::Down || !m.is_final(mv.next) ||
                                     e.letter != m.right_end()))
        return where + " pops the bottom other than down into a final state at the right end";
    } else {
      if (mv.push.size() != 1) return where + " pushes more than one symbol";
      if (mv.push[0] == m.bottom()) return where + " pushes the bottom symbol";
    }
  }
  return std::nullopt;
}

}  // namespace pegmachine::pppda
