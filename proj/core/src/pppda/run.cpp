#include <cstdlib>
#include <limits>

#include "pegmachine/error.hpp"
#include "pegmachine/pppda.hpp"

namespace pegmachine::pppda {
namespace {

// Applies `mv` to `c` in place and returns the popped entry, if any.
std::optional<StackEntry> apply(const Move& mv, Configuration& c) {
  if (mv.hat != Hat::None) throw ValidationError("hat moves must be desugared before running");
  StackEntry top = c.stack.back();
  if (mv.push.empty()) {
    c.stack.pop_back();
    switch (mv.direction) {
      case Direction::Left: --c.head; break;
      case Direction::Down: break;
      case Direction::Up: c.head = top.origin; break;
      case Direction::Right: ++c.head; break;
    }
    c.state = mv.next;
    return top;
  }
  if (mv.direction == Direction::Left) --c.head;
  else if (mv.direction == Direction::Right) ++c.head;
  for (auto it = mv.push.rbegin(); it != mv.push.rend(); ++it) c.stack.push_back({*it, c.head});
  c.state = mv.next;
  return std::nullopt;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Accept: return "accept";
    case Verdict::Reject: return "reject";
    case Verdict::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

std::string to_string(RejectReason r) {
  switch (r) {
    case RejectReason::None: return "none";
    case RejectReason::NoTransition: return "no-transition";
    case RejectReason::NonFinalHalt: return "non-final-halt";
    case RejectReason::NotAtRightEnd: return "not-at-right-end";
    case RejectReason::StackNotEmpty: return "stack-not-empty";
  }
  return "?";
}

Configuration initial_configuration(const Machine& m) {
  return Configuration{m.initial(), {{m.bottom(), 0}}, 0};
}

std::string format_configuration(const Machine& m, const Configuration& c) {
  std::string out = "(" + m.state_name(c.state) + ", ";
  if (c.stack.empty()) {
    out += "()";
  } else {
    for (auto it = c.stack.rbegin(); it != c.stack.rend(); ++it) out += m.symbol_name(it->symbol);
    out += " x ";
    for (auto it = c.stack.rbegin(); it != c.stack.rend(); ++it)
      out += (it == c.stack.rbegin() ? "" : ":") + std::to_string(it->origin);
  }
  return out + ", " + std::to_string(c.head) + ")";
}

void check_word(const Machine& m, std::string_view word) {
  for (char ch : word)
    if (!m.letter_of(ch)) throw ValidationError(std::string("letter '") + ch + "' is not in the alphabet");
}

StepResult step(const Machine& m, const Configuration& c, std::string_view word) {
  StepResult r;
  if (c.stack.empty()) {
    r.halt = HaltReason::EmptyStack;
    return r;
  }
  const Move* mv = m.move(c.state, m.letter_at(word, c.head), c.stack.back().symbol);
  if (!mv) return r;
  Configuration next = c;
  apply(*mv, next);
  r.next = std::move(next);
  return r;
}

std::uint64_t default_step_limit(const Machine& m, std::size_t word_length) {
  if (const char* env = std::getenv("PEGMACHINE_STEP_LIMIT")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  long double bound = 1000.0L * static_cast<long double>(word_length + 2) *
                      static_cast<long double>(m.states().size()) *
                      static_cast<long double>(m.symbols().size());
  if (bound >= static_cast<long double>(std::numeric_limits<std::uint64_t>::max()))
    return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(bound);
}

RunResult run_direct(const Machine& m, std::string_view word, std::optional<std::uint64_t> step_limit,
                     const TraceSink& sink) {
  check_word(m, word);
  if (m.has_hats()) throw ValidationError("hat moves must be desugared before running");
  const std::uint64_t limit = step_limit ? *step_limit : default_step_limit(m, word.size());
  RunResult r;
  r.last = initial_configuration(m);
  Configuration& c = r.last;
  while (true) {
    if (c.stack.empty()) {
      if (!m.is_final(c.state)) {
        r.reason = RejectReason::NonFinalHalt;
      } else if (c.head != word.size() + 1) {
        r.reason = RejectReason::NotAtRightEnd;
      } else {
        r.verdict = Verdict::Accept;
      }
      return r;
    }
    if (r.steps == limit) {
      r.verdict = Verdict::BudgetExhausted;
      return r;
    }
    const Move* mv = m.move(c.state, m.letter_at(word, c.head), c.stack.back().symbol);
    if (!mv) {
      r.reason = m.is_final(c.state) ? RejectReason::StackNotEmpty : RejectReason::NoTransition;
      return r;
    }
    ++r.steps;
    if (sink) {
      TraceEvent ev;
      ev.step = r.steps;
      ev.before = c;
      ev.direction = mv->direction;
      ev.popped = apply(*mv, c);
      ev.kind = ev.popped ? TraceEvent::Kind::Pop : TraceEvent::Kind::Push;
      ev.after = c;
      sink(ev);
    } else {
      apply(*mv, c);
    }
  }
}

}  // namespace pegmachine::pppda
