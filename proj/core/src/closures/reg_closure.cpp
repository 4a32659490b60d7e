#include "dpda_embedding.hpp"
#include "pegmachine/closures.hpp"
#include "pegmachine/error.hpp"

namespace pegmachine::closures {

using pppda::Direction;
using pppda::Letter;

// Depth-first search over factorizations. try:q starts label 0 from DFA
// state q by pushing the frame fr:q:j and the bottom of automaton j. A
// final state of automaton j pushes ck:q:j:s and continues with try:q'. A
// stuck automaton pops down to its frame, whose up pop restores the head for
// label j+1; after the last label, the checkpoint below is popped and the
// suspended automaton resumes without checkpointing again.
pppda::Machine reg_closure_machine(const CompositionSpec& spec) {
  spec.validate();
  const LabeledDfa& dfa = spec.dfa;
  const std::size_t m = dfa.labels.size();
  std::string alphabet;
  for (std::size_t j = 0; j < m; ++j) {
    if (dpda_accepts(spec.bindings[j], ""))
      throw ValidationError("the automaton bound to '" + dfa.labels[j] + "' accepts the empty word");
    alphabet += spec.bindings[j].alphabet();
  }

  pppda::MachineBuilder b;
  b.set_alphabet(alphabet);
  const Letter end = b.right_end();
  auto num = [](std::size_t i) { return std::to_string(i); };
  auto try_state = [&](StateId q) { return "try:" + num(q); };
  auto sim = [&](StateId q, std::size_t j, StateId s, bool flagged) {
    return (flagged ? "sim!:" : "sim:") + num(q) + ":" + num(j) + ":" + num(s);
  };
  auto next = [&](StateId q, std::size_t j) { return "next:" + num(q) + ":" + num(j); };
  auto frame = [&](StateId q, std::size_t j) { return "fr:" + num(q) + ":" + num(j); };
  auto check = [&](StateId q, std::size_t j, StateId s) {
    return "ck:" + num(q) + ":" + num(j) + ":" + num(s);
  };
  auto sym = [&](std::size_t j, SymbolId z) { return "L" + num(j) + ":" + num(z); };

  b.state("init");
  b.set_initial("init");
  b.set_bottom("bot");
  b.add_final("acc");
  // Symbols that can lie under a frame: the bottom and the checkpoints.
  struct Below {
    std::string name;
    StateId q = 0;
    std::size_t j = 0;
    StateId s = 0;
  };
  std::vector<Below> below{{"bot"}};
  for (StateId q = 0; q < dfa.states.size(); ++q)
    for (std::size_t j = 0; j < m; ++j) {
      b.symbol(frame(q, j));
      for (StateId s = 0; s < spec.bindings[j].states().size(); ++s)
        if (spec.bindings[j].is_final(s)) below.push_back({check(q, j, s), q, j, s});
    }
  for (std::size_t j = 0; j < m; ++j)
    for (SymbolId z = 0; z < spec.bindings[j].symbols().size(); ++z) b.symbol(sym(j, z));

  b.hat_move("init", b.left_end(), "bot", try_state(dfa.initial), pppda::Hat::Right);

  // Entering a label from `from`, or giving up on the current position.
  auto start = [&](const std::string& from, Letter sigma, const std::string& top, StateId q, std::size_t j) {
    const Dpda& d = spec.bindings[j];
    b.push_move(from, sigma, top, sim(q, j, d.initial(), true), {sym(j, d.bottom()), frame(q, j)},
                Direction::Down);
  };
  auto back = [&](const std::string& from, Letter sigma, const Below& top) {
    if (top.name == "bot") return;
    b.pop_move(from, sigma, top.name, sim(top.q, top.j, top.s, true), Direction::Down);
  };

  DpdaEmbedding embed(b);
  for (StateId q = 0; q < dfa.states.size(); ++q) {
    for (const auto& top : below) {
      for (Letter sigma = 1; sigma < end; ++sigma) start(try_state(q), sigma, top.name, q, 0);
      if (!dfa.finals[q]) back(try_state(q), end, top);
      else b.pop_move(try_state(q), end, top.name, top.name == "bot" ? "acc" : "drain", Direction::Down);
      for (std::size_t j = 0; j < m; ++j)
        for (Letter sigma = 1; sigma < end; ++sigma) {
          if (j + 1 < m) start(next(q, j), sigma, top.name, q, j + 1);
          else back(next(q, j), sigma, top);
        }
    }
    for (std::size_t j = 0; j < m; ++j) {
      const Dpda& d = spec.bindings[j];
      for (StateId s = 0; s < d.states().size(); ++s) {
        for (bool flagged : {false, true}) {
          const std::string from = sim(q, j, s, flagged);
          for (Letter sigma = 1; sigma <= end; ++sigma) {
            if (!flagged && d.is_final(s)) {
              b.push_move(from, sigma, frame(q, j), try_state(dfa.delta[q][j]), {check(q, j, s)},
                          Direction::Down);
              for (SymbolId z = 0; z < d.symbols().size(); ++z)
                b.push_move(from, sigma, sym(j, z), try_state(dfa.delta[q][j]), {check(q, j, s)},
                            Direction::Down);
              continue;
            }
            b.pop_move(from, sigma, frame(q, j), next(q, j), Direction::Up);
            for (SymbolId z = 0; z < d.symbols().size(); ++z) {
              auto rename = [&](const DpdaMove& mv) {
                std::vector<std::string> push;
                for (SymbolId p : mv.push) push.push_back(sym(j, p));
                return push;
              };
              if (const DpdaMove* mv = d.epsilon_move(s, z)) {
                embed.simulate(from, sigma, sym(j, z), sim(q, j, mv->next, flagged), rename(*mv), false);
                continue;
              }
              auto a = sigma == end ? std::nullopt : d.letter_of(b.alphabet()[sigma - 1]);
              if (const DpdaMove* mv = a ? d.move(s, *a, z) : nullptr)
                embed.simulate(from, sigma, sym(j, z), sim(q, j, mv->next, false), rename(*mv), true);
              else
                b.pop_move(from, sigma, sym(j, z), "roll", Direction::Down);
            }
          }
        }
      }
    }
  }
  for (Letter sigma = 1; sigma <= end; ++sigma) {
    for (std::size_t j = 0; j < m; ++j) {
      for (SymbolId z = 0; z < spec.bindings[j].symbols().size(); ++z)
        b.pop_move("roll", sigma, sym(j, z), "roll", Direction::Down);
      for (StateId q = 0; q < dfa.states.size(); ++q)
        b.pop_move("roll", sigma, frame(q, j), next(q, j), Direction::Up);
    }
  }
  embed.finish();
  for (const auto& z : std::vector<std::string>(b.symbol_names()))
    b.pop_move("drain", end, z, z == "bot" ? "acc" : "drain", Direction::Down);
  return pppda::desugar_hat_moves(b.build());
}

bool brute_force_membership(const CompositionSpec& spec, std::string_view word) {
  spec.validate();
  const LabeledDfa& dfa = spec.dfa;
  const std::size_t n = word.size();
  std::vector<std::vector<bool>> reach(n + 1, std::vector<bool>(dfa.states.size(), false));
  reach[0][dfa.initial] = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k <= n; ++k) {
      const std::string_view block = word.substr(i, k - i);
      for (std::size_t j = 0; j < dfa.labels.size(); ++j) {
        if (!dpda_accepts(spec.bindings[j], block)) continue;
        for (StateId q = 0; q < dfa.states.size(); ++q)
          if (reach[i][q]) reach[k][dfa.delta[q][j]] = true;
      }
    }
  }
  for (StateId q = 0; q < dfa.states.size(); ++q)
    if (reach[n][q] && dfa.finals[q]) return true;
  return false;
}

}  // namespace pegmachine::closures
