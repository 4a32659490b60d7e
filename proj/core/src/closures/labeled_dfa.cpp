#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "pegmachine/closures.hpp"
#include "pegmachine/error.hpp"
#include "text/tokens.hpp"

namespace pegmachine::closures {

void LabeledDfa::validate() const {
  if (states.empty()) throw ValidationError("DFA has no states");
  if (initial >= states.size()) throw ValidationError("DFA initial state out of range");
  if (finals.size() != states.size()) throw ValidationError("DFA final flags do not match its states");
  if (delta.size() != states.size()) throw ValidationError("DFA transition table does not match its states");
  for (std::size_t q = 0; q < states.size(); ++q) {
    if (delta[q].size() != labels.size())
      throw ValidationError("DFA state '" + states[q] + "' lacks transitions for some labels");
    for (std::size_t j = 0; j < labels.size(); ++j)
      if (delta[q][j] >= states.size())
        throw ValidationError("DFA transition from '" + states[q] + "' on '" + labels[j] + "' is undefined");
  }
}

std::optional<std::size_t> LabeledDfa::label_index(std::string_view label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels.begin());
}

bool LabeledDfa::accepts(const std::vector<std::size_t>& word) const {
  StateId q = initial;
  for (std::size_t j : word) q = delta.at(q).at(j);
  return finals.at(q);
}

LabeledDfa parse_dfa_text(std::string_view source) {
  const auto lines = text::tokenize_lines(source);
  LabeledDfa dfa;
  std::map<std::string, StateId> ids;
  bool have_kind = false, have_initial = false;
  std::size_t last_line = 0;
  auto state_of = [&](const text::Token& t, std::size_t line_no) {
    auto it = ids.find(t.text);
    if (it == ids.end()) throw SyntaxError("undeclared state '" + t.text + "'", line_no, t.column);
    return it->second;
  };
  for (const auto& [line_no, toks] : lines) {
    last_line = line_no;
    if (!text::is_directive(toks)) continue;
    const std::string& head = toks[0].text;
    if (head == "@kind") {
      if (toks.size() != 2 || toks[1].text != "dfa")
        throw SyntaxError("expected '@kind dfa'", line_no, toks[0].column);
      have_kind = true;
    } else if (head == "@labels") {
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (dfa.label_index(toks[i].text))
          throw SyntaxError("duplicate label '" + toks[i].text + "'", line_no, toks[i].column);
        dfa.labels.push_back(toks[i].text);
      }
    } else if (head == "@states") {
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (ids.contains(toks[i].text))
          throw SyntaxError("duplicate state '" + toks[i].text + "'", line_no, toks[i].column);
        ids.emplace(toks[i].text, static_cast<StateId>(dfa.states.size()));
        dfa.states.push_back(toks[i].text);
      }
    } else if (head == "@initial") {
      if (toks.size() != 2) throw SyntaxError("@initial expects 1 argument(s)", line_no, toks[0].column);
      dfa.initial = state_of(toks[1], line_no);
      have_initial = true;
    } else if (head == "@final") {
      dfa.finals.resize(dfa.states.size(), false);
      for (std::size_t i = 1; i < toks.size(); ++i) dfa.finals[state_of(toks[i], line_no)] = true;
    } else {
      throw SyntaxError("unknown directive '" + head + "'", line_no, toks[0].column);
    }
  }
  if (!have_kind) throw SyntaxError("missing '@kind dfa'", last_line, 1);
  if (!have_initial) throw SyntaxError("missing @initial", last_line, 1);
  dfa.finals.resize(dfa.states.size(), false);
  constexpr StateId kUnset = static_cast<StateId>(-1);
  dfa.delta.assign(dfa.states.size(), std::vector<StateId>(dfa.labels.size(), kUnset));
  for (const auto& [line_no, toks] : lines) {
    if (text::is_directive(toks)) continue;
    if (toks.size() != 4 || toks[2].text != "->")
      throw SyntaxError("expected 'state label -> state'", line_no, toks[0].column);
    StateId q = state_of(toks[0], line_no), p = state_of(toks[3], line_no);
    auto j = dfa.label_index(toks[1].text);
    if (!j) throw SyntaxError("undeclared label '" + toks[1].text + "'", line_no, toks[1].column);
    if (dfa.delta[q][*j] != kUnset)
      throw SyntaxError("duplicate transition for (" + toks[0].text + ", " + toks[1].text + ")", line_no,
                        toks[0].column);
    dfa.delta[q][*j] = p;
  }
  try {
    dfa.validate();
  } catch (const ValidationError& e) {
    throw SyntaxError(e.what(), last_line, 1);
  }
  return dfa;
}

std::string format_dfa(const LabeledDfa& dfa) {
  std::ostringstream os;
  os << "@kind dfa\n@labels";
  for (const auto& l : dfa.labels) os << ' ' << l;
  os << "\n@states";
  for (const auto& q : dfa.states) os << ' ' << q;
  os << "\n@initial " << dfa.states.at(dfa.initial) << "\n@final";
  for (std::size_t q = 0; q < dfa.states.size(); ++q)
    if (dfa.finals[q]) os << ' ' << dfa.states[q];
  os << '\n';
  for (std::size_t q = 0; q < dfa.states.size(); ++q)
    for (std::size_t j = 0; j < dfa.labels.size(); ++j)
      os << dfa.states[q] << ' ' << dfa.labels[j] << " -> " << dfa.states[dfa.delta[q][j]] << '\n';
  return os.str();
}

LabeledDfa absorb_empty_labels(const LabeledDfa& dfa, const std::vector<bool>& nullable) {
  dfa.validate();
  if (nullable.size() != dfa.labels.size()) throw ValidationError("one nullable flag per label expected");
  using Subset = std::set<StateId>;
  auto closure = [&](Subset s) {
    std::vector<StateId> work(s.begin(), s.end());
    while (!work.empty()) {
      StateId q = work.back();
      work.pop_back();
      for (std::size_t j = 0; j < dfa.labels.size(); ++j)
        if (nullable[j] && s.insert(dfa.delta[q][j]).second) work.push_back(dfa.delta[q][j]);
    }
    return s;
  };
  auto name = [&](const Subset& s) {
    std::string out = "{";
    for (StateId q : s) out += (out.size() > 1 ? "|" : "") + dfa.states[q];
    return out + "}";
  };

  LabeledDfa out;
  out.labels = dfa.labels;
  std::map<Subset, StateId> ids;
  std::vector<Subset> order;
  auto intern = [&](const Subset& s) {
    auto [it, inserted] = ids.emplace(s, static_cast<StateId>(order.size()));
    if (inserted) order.push_back(s);
    return it->second;
  };
  out.initial = intern(closure({dfa.initial}));
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::vector<StateId> row;
    for (std::size_t j = 0; j < dfa.labels.size(); ++j) {
      Subset next;
      for (StateId q : order[i]) next.insert(dfa.delta[q][j]);
      row.push_back(intern(closure(next)));
    }
    out.delta.push_back(std::move(row));
  }
  for (const auto& s : order) {
    out.states.push_back(name(s));
    out.finals.push_back(std::any_of(s.begin(), s.end(), [&](StateId q) { return dfa.finals[q]; }));
  }
  return out;
}

}  // namespace pegmachine::closures
