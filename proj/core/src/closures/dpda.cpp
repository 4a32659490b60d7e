#include <algorithm>
#include <cctype>

#include "pegmachine/closures.hpp"
#include "pegmachine/error.hpp"

namespace pegmachine::closures {
namespace {

void check_name(std::string_view kind, std::string_view name) {
  if (name.empty()) throw ValidationError(std::string(kind) + " name is empty");
  if (name == "-" || name == "eps") throw ValidationError(std::string(kind) + " name '" + std::string(name) + "' is reserved");
  for (char c : name)
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '`')
      throw ValidationError(std::string(kind) + " name '" + std::string(name) +
                            "' contains whitespace, a comma or a backquote");
}

}  // namespace

std::string to_string(DpdaVerdict v) {
  switch (v) {
    case DpdaVerdict::Accept: return "accept";
    case DpdaVerdict::Reject: return "reject";
    case DpdaVerdict::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

std::optional<DpdaLetter> Dpda::letter_of(char c) const {
  auto pos = alphabet_.find(c);
  if (pos == std::string::npos) return std::nullopt;
  return static_cast<DpdaLetter>(pos + 1);
}

const DpdaMove* Dpda::move(StateId q, DpdaLetter a, SymbolId z) const {
  auto it = moves_.find({q, a, z});
  return it == moves_.end() ? nullptr : &it->second;
}

void DpdaBuilder::set_alphabet(std::string_view letters) {
  if (!moves_.empty()) throw ValidationError("alphabet must be set before adding moves");
  std::string sorted(letters);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  alphabet_ = std::move(sorted);
}

DpdaLetter DpdaBuilder::letter(char c) const {
  auto pos = alphabet_.find(c);
  if (pos == std::string::npos)
    throw ValidationError(std::string("letter '") + c + "' is not in the alphabet");
  return static_cast<DpdaLetter>(pos + 1);
}

StateId DpdaBuilder::state(std::string_view name) {
  auto it = state_ids_.find(std::string(name));
  if (it != state_ids_.end()) return it->second;
  check_name("state", name);
  StateId id = static_cast<StateId>(states_.size());
  states_.emplace_back(name);
  state_ids_.emplace(std::string(name), id);
  return id;
}

SymbolId DpdaBuilder::symbol(std::string_view name) {
  auto it = symbol_ids_.find(std::string(name));
  if (it != symbol_ids_.end()) return it->second;
  check_name("stack symbol", name);
  SymbolId id = static_cast<SymbolId>(symbols_.size());
  symbols_.emplace_back(name);
  symbol_ids_.emplace(std::string(name), id);
  return id;
}

void DpdaBuilder::add_final(std::string_view name) { finals_.push_back(state(name)); }

void DpdaBuilder::add(StateId q, DpdaLetter a, SymbolId z, DpdaMove m) {
  if (!moves_.emplace(std::make_tuple(q, a, z), std::move(m)).second)
    throw ValidationError("duplicate transition for (" + states_.at(q) + ", " +
                          (a == kEpsilon ? std::string("eps") : std::string(1, alphabet_.at(a - 1))) +
                          ", " + symbols_.at(z) + ")");
}

void DpdaBuilder::add(std::string_view q, std::optional<char> letter, std::string_view z,
                      std::string_view p, const std::vector<std::string>& push) {
  DpdaMove m;
  m.next = state(p);
  for (const auto& s : push) m.push.push_back(symbol(s));
  DpdaLetter a = letter ? this->letter(*letter) : kEpsilon;
  StateId from = state(q);
  add(from, a, symbol(z), std::move(m));
}

Dpda DpdaBuilder::build() const {
  if (states_.empty()) throw ValidationError("automaton has no states");
  if (symbols_.empty()) throw ValidationError("automaton has no stack symbols");
  for (const auto& [key, mv] : moves_) {
    auto [q, a, z] = key;
    if (a == kEpsilon) continue;
    if (moves_.contains({q, kEpsilon, z}))
      throw ValidationError("nondeterministic: (" + states_.at(q) + ", " + symbols_.at(z) +
                            ") has both an epsilon rule and a letter rule");
  }
  Dpda d;
  d.states_ = states_;
  d.symbols_ = symbols_;
  d.alphabet_ = alphabet_;
  d.finals_.assign(states_.size(), false);
  for (StateId f : finals_) d.finals_[f] = true;
  d.initial_ = initial_;
  d.bottom_ = bottom_;
  d.moves_ = moves_;
  return d;
}

DpdaVerdict dpda_run(const Dpda& d, std::string_view word, std::optional<std::uint64_t> step_limit) {
  StateId q = d.initial();
  std::vector<SymbolId> stack{d.bottom()};
  std::size_t pos = 0;
  std::uint64_t steps = 0, epsilon_run = 0;
  auto apply = [&](const DpdaMove& m) {
    stack.pop_back();
    for (auto it = m.push.rbegin(); it != m.push.rend(); ++it) stack.push_back(*it);
    q = m.next;
  };
  while (true) {
    if (pos == word.size() && d.is_final(q)) return DpdaVerdict::Accept;
    if (stack.empty()) return DpdaVerdict::Reject;
    if (step_limit && steps == *step_limit) return DpdaVerdict::BudgetExhausted;
    const SymbolId z = stack.back();
    if (const DpdaMove* m = d.epsilon_move(q, z)) {
      if (!step_limit && epsilon_run == 64 * (word.size() - pos + 1)) return DpdaVerdict::BudgetExhausted;
      ++epsilon_run;
      ++steps;
      apply(*m);
      continue;
    }
    if (pos == word.size()) return DpdaVerdict::Reject;
    auto a = d.letter_of(word[pos]);
    const DpdaMove* m = a ? d.move(q, *a, z) : nullptr;
    if (!m) return DpdaVerdict::Reject;
    apply(*m);
    ++pos;
    ++steps;
    epsilon_run = 0;
  }
}

bool dpda_accepts(const Dpda& d, std::string_view word) {
  return dpda_run(d, word) == DpdaVerdict::Accept;
}

// Pairs every state with a flag recording whether a letter was read.
Dpda without_empty_word(const Dpda& d) {
  DpdaBuilder b;
  b.set_alphabet(d.alphabet());
  std::vector<std::string> fresh(d.states().size()), seen(d.states().size());
  for (StateId q = 0; q < d.states().size(); ++q) {
    fresh[q] = "e0:" + d.state_name(q);
    seen[q] = "e1:" + d.state_name(q);
  }
  for (StateId q = 0; q < d.states().size(); ++q) {
    b.state(fresh[q]);
    b.state(seen[q]);
  }
  for (const auto& z : d.symbols()) b.symbol(z);
  b.set_initial(fresh[d.initial()]);
  b.set_bottom(d.symbol_name(d.bottom()));
  for (StateId q = 0; q < d.states().size(); ++q)
    if (d.is_final(q)) b.add_final(seen[q]);
  for (const auto& [key, mv] : d.moves()) {
    auto [q, a, z] = key;
    for (bool read : {false, true}) {
      DpdaMove m = mv;
      m.next = b.state(a == kEpsilon && !read ? fresh[mv.next] : seen[mv.next]);
      b.add(b.state(read ? seen[q] : fresh[q]), a, z, m);
    }
  }
  return b.build();
}

}  // namespace pegmachine::closures
