#include <algorithm>
#include <cctype>

#include "pegmachine/error.hpp"
#include "pegmachine/pppda.hpp"

namespace pegmachine::pppda {
namespace {

void check_name(std::string_view kind, std::string_view name) {
  if (name.empty()) throw ValidationError(std::string(kind) + " name is empty");
  if (name == "-") throw ValidationError(std::string(kind) + " name '-' is reserved");
  for (char c : name) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '`')
      throw ValidationError(std::string(kind) + " name '" + std::string(name) +
                            "' contains whitespace, a comma or a backquote");
  }
}

}  // namespace

std::string to_string(Direction d) {
  switch (d) {
    case Direction::Left: return "left";
    case Direction::Down: return "down";
    case Direction::Up: return "up";
    case Direction::Right: return "right";
  }
  return "?";
}

std::optional<Letter> Machine::letter_of(char c) const {
  auto pos = alphabet_.find(c);
  if (pos == std::string::npos) return std::nullopt;
  return static_cast<Letter>(pos + 1);
}

Letter Machine::letter_at(std::string_view word, std::size_t pos) const {
  if (pos == 0) return left_end();
  if (pos > word.size()) return right_end();
  auto l = letter_of(word[pos - 1]);
  if (!l) throw ValidationError(std::string("letter '") + word[pos - 1] + "' is not in the alphabet");
  return *l;
}

std::string Machine::letter_name(Letter l) const {
  if (l == left_end()) return "<";
  if (l == right_end()) return ">";
  return std::string(1, alphabet_.at(l - 1));
}

std::vector<StateId> Machine::finals() const {
  std::vector<StateId> out;
  for (StateId q = 0; q < finals_.size(); ++q)
    if (finals_[q]) out.push_back(q);
  return out;
}

std::optional<StateId> Machine::find_state(std::string_view name) const {
  auto it = std::find(states_.begin(), states_.end(), name);
  if (it == states_.end()) return std::nullopt;
  return static_cast<StateId>(it - states_.begin());
}

std::optional<SymbolId> Machine::find_symbol(std::string_view name) const {
  auto it = std::find(symbols_.begin(), symbols_.end(), name);
  if (it == symbols_.end()) return std::nullopt;
  return static_cast<SymbolId>(it - symbols_.begin());
}

const Move* Machine::move(StateId q, Letter a, SymbolId z) const {
  const auto& slot = delta_[index(q, a, z)];
  return slot ? &*slot : nullptr;
}

std::vector<Entry> Machine::entries() const {
  std::vector<Entry> out;
  out.reserve(entry_count_);
  for (StateId q = 0; q < states_.size(); ++q)
    for (Letter a = 0; a < letter_count(); ++a)
      for (SymbolId z = 0; z < symbols_.size(); ++z)
        if (const Move* m = move(q, a, z)) out.push_back({q, a, z, *m});
  return out;
}

MachineBuilder::MachineBuilder(const Machine& m) {
  alphabet_ = m.alphabet();
  for (const auto& s : m.states()) state(s);
  for (const auto& z : m.symbols()) symbol(z);
  for (StateId q : m.finals()) finals_.insert(q);
  initial_ = m.initial();
  bottom_ = m.bottom();
  two_way_ = m.two_way();
  for (auto& e : m.entries()) moves_.emplace(std::make_tuple(e.state, e.letter, e.symbol), e.move);
}

void MachineBuilder::set_alphabet(std::string_view letters) {
  if (!moves_.empty()) throw ValidationError("alphabet must be set before adding moves");
  std::string sorted(letters);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  alphabet_ = std::move(sorted);
}

Letter MachineBuilder::letter(char c) const {
  auto pos = alphabet_.find(c);
  if (pos == std::string::npos)
    throw ValidationError(std::string("letter '") + c + "' is not in the alphabet");
  return static_cast<Letter>(pos + 1);
}

std::vector<Letter> MachineBuilder::all_letters() const {
  std::vector<Letter> out;
  for (Letter l = 0; l <= right_end(); ++l) out.push_back(l);
  return out;
}

StateId MachineBuilder::state(std::string_view name) {
  auto it = state_ids_.find(std::string(name));
  if (it != state_ids_.end()) return it->second;
  check_name("state", name);
  StateId id = static_cast<StateId>(states_.size());
  states_.emplace_back(name);
  state_ids_.emplace(std::string(name), id);
  return id;
}

SymbolId MachineBuilder::symbol(std::string_view name) {
  auto it = symbol_ids_.find(std::string(name));
  if (it != symbol_ids_.end()) return it->second;
  check_name("stack symbol", name);
  SymbolId id = static_cast<SymbolId>(symbols_.size());
  symbols_.emplace_back(name);
  symbol_ids_.emplace(std::string(name), id);
  return id;
}

void MachineBuilder::add(StateId q, Letter a, SymbolId z, Move m) {
  auto [it, inserted] = moves_.emplace(std::make_tuple(q, a, z), std::move(m));
  if (!inserted) {
    std::string letter = a == 0 ? "<" : a == right_end() ? ">" : std::string(1, alphabet_.at(a - 1));
    throw ValidationError("duplicate transition for (" + states_.at(q) + ", " + letter + ", " +
                          symbols_.at(z) + ")");
  }
}

void MachineBuilder::add_or_keep(StateId q, Letter a, SymbolId z, Move m) {
  if (const Move* existing = find(q, a, z); existing && *existing == m) return;
  add(q, a, z, std::move(m));
}

void MachineBuilder::replace(StateId q, Letter a, SymbolId z, Move m) {
  moves_[std::make_tuple(q, a, z)] = std::move(m);
}

void MachineBuilder::erase(StateId q, Letter a, SymbolId z) { moves_.erase(std::make_tuple(q, a, z)); }

const Move* MachineBuilder::find(StateId q, Letter a, SymbolId z) const {
  auto it = moves_.find(std::make_tuple(q, a, z));
  return it == moves_.end() ? nullptr : &it->second;
}

void MachineBuilder::push_move(std::string_view q, Letter a, std::string_view z, std::string_view p,
                               const std::vector<std::string>& push, Direction d) {
  Move m;
  m.next = state(p);
  for (const auto& s : push) m.push.push_back(symbol(s));
  m.direction = d;
  StateId from = state(q);
  add(from, a, symbol(z), std::move(m));
}

void MachineBuilder::pop_move(std::string_view q, Letter a, std::string_view z, std::string_view p,
                              Direction d) {
  push_move(q, a, z, p, {}, d);
}

void MachineBuilder::hat_move(std::string_view q, Letter a, std::string_view z, std::string_view p,
                              Hat h) {
  Move m;
  m.next = state(p);
  m.hat = h;
  StateId from = state(q);
  add(from, a, symbol(z), std::move(m));
}

Machine MachineBuilder::build() const {
  if (states_.empty()) throw ValidationError("machine has no states");
  if (symbols_.empty()) throw ValidationError("machine has no stack symbols");
  Machine m;
  m.states_ = states_;
  m.symbols_ = symbols_;
  m.alphabet_ = alphabet_;
  m.finals_.assign(states_.size(), false);
  for (StateId q : finals_) m.finals_.at(q) = true;
  m.initial_ = initial_;
  m.bottom_ = bottom_;
  m.two_way_ = two_way_;
  m.delta_.assign(states_.size() * m.letter_count() * symbols_.size(), std::nullopt);

  for (const auto& [key, move] : moves_) {
    auto [q, a, z] = key;
    auto where = [&, q = q, a = a, z = z] {
      return "(" + states_.at(q) + ", " + m.letter_name(a) + ", " + symbols_.at(z) + "): ";
    };
    if (q >= states_.size() || move.next >= states_.size() || z >= symbols_.size() ||
        a >= m.letter_count())
      throw ValidationError("transition refers to an unknown state, letter or symbol");
    for (SymbolId s : move.push)
      if (s >= symbols_.size()) throw ValidationError(where() + "push of an unknown symbol");
    bool left = move.hat == Hat::Left || (move.hat == Hat::None && move.direction == Direction::Left);
    bool right = move.hat == Hat::Right || (move.hat == Hat::None && move.direction == Direction::Right);
    if (move.hat != Hat::None && !move.push.empty())
      throw ValidationError(where() + "hat move with a push string");
    if (move.hat == Hat::None && move.direction == Direction::Up && !move.push.empty())
      throw ValidationError(where() + "up move with a nonempty push string");
    if (left && a == m.left_end()) throw ValidationError(where() + "left move off the left endmarker");
    if (right && a == m.right_end()) throw ValidationError(where() + "right move off the right endmarker");
    if (left && !two_way_) throw ValidationError(where() + "left move in a one-way machine");
    m.delta_[m.index(q, a, z)] = move;
    ++m.entry_count_;
    if (move.hat != Hat::None) m.has_hats_ = true;
    m.max_push_ = std::max(m.max_push_, move.push.size());
  }
  return m;
}

}  // namespace pegmachine::pppda
