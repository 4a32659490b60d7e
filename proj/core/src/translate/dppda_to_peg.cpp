#include <deque>
#include <map>
#include <set>

#include "pegmachine/error.hpp"
#include "pegmachine/translate.hpp"

namespace pegmachine::translate {
namespace {

using pppda::Direction;
using pppda::Letter;
using pppda::StateId;
using pppda::SymbolId;
using NtKind = ExtractedNonterminal::Kind;

struct Key {
  NtKind kind;
  StateId q;
  SymbolId z;
  StateId p;
  auto operator<=>(const Key&) const = default;
};

class Extractor {
 public:
  explicit Extractor(const pppda::Machine& m) : m_(m) {
    check_preconditions();
    compute_pop_summary();
  }

  peg::Grammar run() {
    g_.declare_letters(m_.alphabet());
    std::vector<peg::NodeId> finals;
    for (StateId f : m_.finals())
      if (possible({NtKind::PopDown, m_.initial(), m_.bottom(), f}))
        finals.push_back(ref({NtKind::PopDown, m_.initial(), m_.bottom(), f}));
    std::vector<peg::Rule> rules;
    rules.push_back({ExtractedNonterminal{}.str(), g_.choice_of(finals)});
    while (!work_.empty()) {
      Key k = work_.front();
      work_.pop_front();
      rules.push_back({name(k), body(k)});
    }
    for (auto& r : rules) g_.add_rule(std::move(r.name), r.body);
    g_.set_axiom(ExtractedNonterminal{}.str());
    return std::move(g_);
  }

 private:
  void check_preconditions() const {
    if (auto why = pppda::normal_form_violation(m_))
      throw ValidationError("extraction requires a machine in normal form: " + *why);
  }

  // may_pop_[q][z] holds (p, up?) pairs such that Z pushed in state q may
  // be popped into p with that direction, ignoring the input.
  void compute_pop_summary() {
    const std::size_t nq = m_.states().size(), nz = m_.symbols().size();
    may_pop_.assign(nq * nz, {});
    auto entries = m_.entries();
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& e : entries) {
        if (!reads(e.state, e.letter, e.symbol)) continue;
        auto& dst = may_pop_[e.state * nz + e.symbol];
        const std::size_t before = dst.size();
        if (e.move.push.empty()) {
          dst.insert({e.move.next, e.move.direction == Direction::Up});
        } else {
          const auto inner = may_pop_[e.move.next * nz + e.move.push[0]];
          for (auto [s, up] : inner) {
            const auto& cont = may_pop_[s * nz + e.symbol];
            if (&cont == &dst) continue;
            const auto copy = cont;
            dst.insert(copy.begin(), copy.end());
          }
        }
        if (dst.size() != before) changed = true;
      }
    }
  }

  // Entries reading the left endmarker are dead except the first move.
  bool reads(StateId q, Letter a, SymbolId z) const {
    return a != m_.left_end() || (q == m_.initial() && z == m_.bottom());
  }

  bool can_pop(StateId q, SymbolId z, StateId p, bool up) const {
    return may_pop_[q * m_.symbols().size() + z].contains({p, up});
  }

  bool possible(const Key& k) const {
    switch (k.kind) {
      case NtKind::PopDown: return can_pop(k.q, k.z, k.p, false);
      case NtKind::PopUp:
      case NtKind::Bar: return can_pop(k.q, k.z, k.p, true);
      case NtKind::Either: return can_pop(k.q, k.z, k.p, false) || can_pop(k.q, k.z, k.p, true);
      case NtKind::Axiom: return true;
    }
    return false;
  }

  std::string name(const Key& k) const {
    return ExtractedNonterminal{k.kind, m_.state_name(k.q), m_.symbol_name(k.z), m_.state_name(k.p)}.str();
  }

  peg::NodeId ref(const Key& k) {
    if (seen_.insert(k).second) work_.push_back(k);
    return g_.nonterminal(name(k));
  }

  // `a` consumed, or nothing for the endmarkers.
  peg::NodeId letter(Letter a) {
    if (a == m_.left_end() || a == m_.right_end()) return g_.empty();
    return g_.terminal(m_.alphabet()[a - 1]);
  }

  // `&a`; at the right end it is `!.`.
  peg::NodeId peek(Letter a) {
    if (a == m_.left_end()) return g_.empty();
    if (a == m_.right_end()) return g_.negate(g_.any_char());
    return g_.and_predicate(g_.terminal(m_.alphabet()[a - 1]));
  }

  peg::NodeId body(const Key& k) {
    if (k.kind == NtKind::Either) {
      std::vector<peg::NodeId> alts;
      for (NtKind part : {NtKind::PopDown, NtKind::PopUp}) {
        Key sub{part, k.q, k.z, k.p};
        if (possible(sub)) alts.push_back(ref(sub));
      }
      return g_.choice_of(alts);
    }
    std::vector<peg::NodeId> alts;
    for (Letter a = 0; a < m_.letter_count(); ++a) {
      if (!reads(k.q, a, k.z)) continue;
      const pppda::Move* mv = m_.move(k.q, a, k.z);
      if (!mv) continue;
      if (mv->push.empty()) {
        if (mv->next != k.p) continue;
        bool up = mv->direction == Direction::Up;
        if (k.kind == NtKind::PopDown && !up) alts.push_back(peek(a));
        if (k.kind != NtKind::PopDown && up) alts.push_back(peek(a));
        continue;
      }
      const StateId r = mv->next;
      const SymbolId x = mv->push[0];
      const bool right = mv->direction == Direction::Right;
      const NtKind rest = k.kind == NtKind::PopDown ? NtKind::PopDown : NtKind::Bar;
      for (StateId s = 0; s < m_.states().size(); ++s) {
        Key inner{NtKind::Either, r, x, s};
        Key cont{rest, s, k.z, k.p};
        if (!possible(inner) || !possible(cont)) continue;
        peg::NodeId tail = g_.sequence(ref(inner), ref(cont));
        if (k.kind == NtKind::PopUp) {
          alts.push_back(right ? g_.and_predicate(g_.sequence(letter(a), tail))
                               : g_.sequence(peek(a), g_.and_predicate(tail)));
        } else {
          alts.push_back(g_.sequence(right ? letter(a) : peek(a), tail));
        }
      }
    }
    return g_.choice_of(alts);
  }

  const pppda::Machine& m_;
  peg::Grammar g_;
  std::vector<std::set<std::pair<StateId, bool>>> may_pop_;
  std::set<Key> seen_;
  std::deque<Key> work_;
};

}  // namespace

peg::Grammar dppda_to_peg(const pppda::Machine& m) { return Extractor(m).run(); }

peg::Grammar extract(const pppda::Machine& m) { return dppda_to_peg(pppda::normalize(m)); }

}  // namespace pegmachine::translate
