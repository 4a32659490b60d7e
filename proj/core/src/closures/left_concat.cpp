#include "dpda_embedding.hpp"
#include "pegmachine/closures.hpp"
#include "pegmachine/error.hpp"

namespace pegmachine::closures {

using pppda::Direction;
using pppda::Letter;

// Simulates x; whenever x is in a final state for the first time at a
// position, a checkpoint ck:s is pushed under y's bottom and y runs on the
// rest. When y gets stuck, its symbols are popped, its bottom with an up
// move that restores the head, and x resumes in state x!:s.
pppda::Machine left_concat_dcfl(const Dpda& x, const pppda::Machine& y) {
  if (y.two_way()) throw ValidationError("the right factor must be a one-way machine");
  const pppda::Machine yn = pppda::normalize(y);
  const pppda::Move* start = yn.move(yn.initial(), yn.left_end(), yn.bottom());
  const std::string y_first = "y:" + yn.symbol_name(start->push.at(0));
  const std::string y_bottom = "y:" + yn.symbol_name(yn.bottom());
  const std::string y_start = "y:" + yn.state_name(start->next);

  pppda::MachineBuilder b;
  b.set_alphabet(x.alphabet() + y.alphabet());
  b.state("init");
  b.set_initial("init");
  b.set_bottom("bot");
  b.add_final("acc");
  const Letter end = b.right_end();
  auto xs = [&](StateId s, bool flagged) { return (flagged ? "x!:" : "x:") + x.state_name(s); };
  auto xz = [&](SymbolId z) { return "x:" + x.symbol_name(z); };
  auto yq = [&](StateId q) { return "y:" + yn.state_name(q); };
  auto yz = [&](SymbolId z) { return "y:" + yn.symbol_name(z); };
  for (StateId s = 0; s < x.states().size(); ++s) b.state(xs(s, false)), b.state(xs(s, true));
  for (SymbolId z = 0; z < x.symbols().size(); ++z) b.symbol(xz(z));
  for (StateId q = 0; q < yn.states().size(); ++q) b.state(yq(q));
  for (SymbolId z = 0; z < yn.symbols().size(); ++z) b.symbol(yz(z));

  b.push_move("init", b.left_end(), "bot", xs(x.initial(), false), {xz(x.bottom())}, Direction::Right);

  DpdaEmbedding embed(b);
  for (StateId s = 0; s < x.states().size(); ++s) {
    for (bool flagged : {false, true}) {
      for (Letter sigma = 1; sigma <= end; ++sigma) {
        if (!flagged && x.is_final(s)) {
          for (SymbolId z = 0; z <= x.symbols().size(); ++z) {
            std::string top = z == x.symbols().size() ? "bot" : xz(z);
            b.push_move(xs(s, false), sigma, top, y_start, {y_first, y_bottom, "ck:" + x.state_name(s)},
                        Direction::Down);
          }
          continue;
        }
        for (SymbolId z = 0; z < x.symbols().size(); ++z) {
          if (const DpdaMove* mv = x.epsilon_move(s, z)) {
            std::vector<std::string> push;
            for (SymbolId p : mv->push) push.push_back(xz(p));
            embed.simulate(xs(s, flagged), sigma, xz(z), xs(mv->next, flagged), push, false);
            continue;
          }
          if (sigma == end) continue;
          auto a = x.letter_of(b.alphabet()[sigma - 1]);
          const DpdaMove* mv = a ? x.move(s, *a, z) : nullptr;
          if (!mv) continue;
          std::vector<std::string> push;
          for (SymbolId p : mv->push) push.push_back(xz(p));
          embed.simulate(xs(s, flagged), sigma, xz(z), xs(mv->next, false), push, true);
        }
      }
    }
  }

  for (StateId q = 0; q < yn.states().size(); ++q) {
    if (q == yn.initial()) continue;
    for (Letter sigma = 1; sigma <= end; ++sigma) {
      std::optional<Letter> letter =
          sigma == end ? std::optional<Letter>(yn.right_end()) : yn.letter_of(b.alphabet()[sigma - 1]);
      for (SymbolId z = 0; z < yn.symbols().size(); ++z) {
        const pppda::Move* mv = letter ? yn.move(q, *letter, z) : nullptr;
        if (!mv) {
          if (z == yn.bottom()) b.pop_move(yq(q), sigma, yz(z), "resume", Direction::Up);
          else b.pop_move(yq(q), sigma, yz(z), "roll", Direction::Down);
        } else if (mv->push.empty()) {
          b.pop_move(yq(q), sigma, yz(z), z == yn.bottom() ? "drain" : yq(mv->next), mv->direction);
        } else {
          b.push_move(yq(q), sigma, yz(z), yq(mv->next), {yz(mv->push.at(0))}, mv->direction);
        }
      }
    }
  }

  for (Letter sigma = 1; sigma <= end; ++sigma) {
    for (SymbolId z = 0; z < yn.symbols().size(); ++z)
      b.pop_move("roll", sigma, yz(z), z == yn.bottom() ? "resume" : "roll",
                 z == yn.bottom() ? Direction::Up : Direction::Down);
    for (StateId s = 0; s < x.states().size(); ++s)
      if (x.is_final(s)) b.pop_move("resume", sigma, "ck:" + x.state_name(s), xs(s, true), Direction::Down);
  }
  embed.finish();
  for (const auto& z : std::vector<std::string>(b.symbol_names()))
    b.pop_move("drain", end, z, z == "bot" ? "acc" : "drain", Direction::Down);
  return pppda::desugar_hat_moves(b.build());
}

}  // namespace pegmachine::closures
