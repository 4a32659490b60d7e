#include <vector>

#include "pegmachine/cooksim.hpp"
#include "pegmachine/error.hpp"

namespace pegmachine::cook {
namespace {

using Status = TableEntry::Status;

struct Frame {
  enum class Phase : std::uint8_t { Start, Chase, Tail };
  SurfaceConfig c;
  Phase phase = Phase::Start;
  const pppda::Move* push = nullptr;
  std::size_t index = 0;
  std::size_t pushed_at = 0;
};

std::size_t head_after(const pppda::Move& mv, std::size_t head, std::size_t origin) {
  switch (mv.direction) {
    case pppda::Direction::Left: return head - 1;
    case pppda::Direction::Down: return head;
    case pppda::Direction::Up: return origin;
    case pppda::Direction::Right: return head + 1;
  }
  return head;
}

}  // namespace

std::string to_string(RejectReason r) {
  switch (r) {
    case RejectReason::None: return "none";
    case RejectReason::Loop: return "loop";
    case RejectReason::Stuck: return "stuck";
    case RejectReason::NonFinal: return "non-final";
    case RejectReason::NotAtRightEnd: return "not-at-right-end";
  }
  return "?";
}

Simulator::Simulator(const pppda::Machine& m, std::string_view word) : m_(m), word_(word) {
  if (m.has_hats()) throw ValidationError("hat moves must be desugared before simulation");
  pppda::check_word(m, word);
}

std::uint64_t Simulator::key(const SurfaceConfig& c) const {
  const std::uint64_t width = word_.size() + 2;
  return ((static_cast<std::uint64_t>(c.state) * m_.symbols().size() + c.symbol) * width + c.head) *
             width +
         c.origin;
}

TableEntry Simulator::entry(const SurfaceConfig& c) const {
  auto it = table_.find(key(c));
  return it == table_.end() ? TableEntry{} : it->second;
}

void Simulator::write(const SurfaceConfig& c, TableEntry e) {
  ++ops_;
  TableEntry& slot = table_[key(c)];
  if (slot.status == Status::Done || slot.status == Status::DoneNoTerminator)
    throw Error("terminator table entry written twice");
  slot = e;
}

TerminatorResult Simulator::terminator(const SurfaceConfig& start) {
  std::vector<Frame> stack{{start}};
  TerminatorResult res;
  auto finish = [&](TerminatorResult r) {
    res = r;
    write(stack.back().c, r.kind == TerminatorResult::Kind::Done
                              ? TableEntry{Status::Done, r.terminator}
                              : TableEntry{Status::DoneNoTerminator, {}});
    stack.pop_back();
  };

  while (!stack.empty()) {
    Frame& f = stack.back();
    switch (f.phase) {
      case Frame::Phase::Start: {
        ++ops_;
        auto it = table_.find(key(f.c));
        if (it != table_.end()) {
          if (it->second.status == Status::InProgress) {
            res = {TerminatorResult::Kind::LoopDetected, {}, f.c};
            return res;
          }
          res.kind = it->second.status == Status::Done ? TerminatorResult::Kind::Done
                                                       : TerminatorResult::Kind::NoTerminator;
          res.terminator = it->second.terminator;
          stack.pop_back();
          break;
        }
        write(f.c, {Status::InProgress, {}});
        const pppda::Move* mv = m_.move(f.c.state, m_.letter_at(word_, f.c.head), f.c.symbol);
        if (!mv) {
          finish({TerminatorResult::Kind::NoTerminator});
          break;
        }
        if (mv->push.empty()) {
          finish({TerminatorResult::Kind::Done, f.c});
          break;
        }
        f.phase = Frame::Phase::Chase;
        f.push = mv;
        f.index = 0;
        f.pushed_at = head_after(*mv, f.c.head, f.c.origin);
        SurfaceConfig d{mv->next, mv->push[0], f.pushed_at, f.pushed_at};
        stack.push_back({d});
        break;
      }
      case Frame::Phase::Chase: {
        if (res.kind != TerminatorResult::Kind::Done) {
          finish({TerminatorResult::Kind::NoTerminator});
          break;
        }
        const SurfaceConfig t = res.terminator;
        const pppda::Move* pop = m_.move(t.state, m_.letter_at(word_, t.head), t.symbol);
        const std::size_t head = head_after(*pop, t.head, t.origin);
        ++f.index;
        if (f.index < f.push->push.size()) {
          SurfaceConfig d{pop->next, f.push->push[f.index], head, f.pushed_at};
          stack.push_back({d});
        } else {
          f.phase = Frame::Phase::Tail;
          SurfaceConfig next{pop->next, f.c.symbol, head, f.c.origin};
          stack.push_back({next});
        }
        break;
      }
      case Frame::Phase::Tail: finish(res); break;
    }
  }
  return res;
}

LinearResult Simulator::run() {
  LinearResult out;
  const SurfaceConfig start{m_.initial(), m_.bottom(), 0, 0};
  TerminatorResult t = terminator(start);
  out.ops = ops_;
  out.table_size = table_.size();
  switch (t.kind) {
    case TerminatorResult::Kind::LoopDetected:
      out.reason = RejectReason::Loop;
      out.loop_at = t.loop_at;
      return out;
    case TerminatorResult::Kind::NoTerminator: out.reason = RejectReason::Stuck; return out;
    case TerminatorResult::Kind::Done: break;
  }
  const pppda::Move* pop = m_.move(t.terminator.state, m_.letter_at(word_, t.terminator.head), t.terminator.symbol);
  const std::size_t head = head_after(*pop, t.terminator.head, t.terminator.origin);
  if (!m_.is_final(pop->next)) out.reason = RejectReason::NonFinal;
  else if (head != word_.size() + 1) out.reason = RejectReason::NotAtRightEnd;
  else out.accepted = true;
  return out;
}

LinearResult run_linear(const pppda::Machine& m, std::string_view word) {
  return Simulator(m, word).run();
}

WorkReport work_bound_check(const pppda::Machine& m, std::string_view word) {
  WorkReport r;
  r.ops = run_linear(m, word).ops;
  r.bound = 2 * m.states().size() * m.symbols().size() * (word.size() + 2) * kWorkConstant;
  return r;
}

pppda::Machine looping_machine(std::string_view alphabet) {
  pppda::MachineBuilder b;
  b.set_alphabet(alphabet);
  b.state("q");
  b.set_initial("q");
  b.set_bottom("Z0");
  b.symbol("Z'");
  for (pppda::Letter s : b.all_letters()) {
    b.push_move("q", s, "Z0", "q", {"Z'"}, pppda::Direction::Down);
    b.pop_move("q", s, "Z'", "q", pppda::Direction::Up);
  }
  return b.build();
}

}  // namespace pegmachine::cook
