#include "pegmachine/error.hpp"
#include "pegmachine/peg.hpp"

namespace pegmachine::peg {
namespace {

std::vector<NodeId> resolve_calls(const Grammar& g) {
  std::vector<NodeId> target(g.node_count(), kNoNode);
  for (NodeId id = 0; id < g.node_count(); ++id) {
    const Node& n = g.node(id);
    if (is_sugar(n.kind)) throw ValidationError("recognizers require a desugared grammar");
    if (n.kind != ExprKind::Nonterminal) continue;
    const Rule* r = g.find_rule(n.name);
    if (!r) throw ValidationError("undefined nonterminal '" + n.name + "'");
    target[id] = r->body;
  }
  return target;
}

struct Frame {
  NodeId node;
  std::size_t pos;
  std::uint8_t stage;
};

constexpr std::uint32_t kUnvisited = 0;
constexpr std::uint32_t kInProgress = 1;
constexpr std::uint32_t kFailure = 2;
constexpr std::uint32_t kDiverged = 3;
constexpr std::uint32_t kConsumedBase = 4;

std::uint32_t encode(const ParseOutcome& o) {
  switch (o.kind) {
    case ParseOutcome::Kind::Failure: return kFailure;
    case ParseOutcome::Kind::Diverged: return kDiverged;
    case ParseOutcome::Kind::Consumed: break;
  }
  return kConsumedBase + static_cast<std::uint32_t>(o.resume);
}

ParseOutcome decode(std::uint32_t v) {
  if (v == kFailure) return ParseOutcome::failure();
  if (v == kDiverged) return ParseOutcome::diverged();
  return ParseOutcome::consumed(v - kConsumedBase);
}

}  // namespace

ParseOutcome interpret_naive(const Grammar& g, NodeId expression, std::string_view input,
                             std::size_t pos, std::uint64_t budget, std::uint64_t* steps_used) {
  const auto target = resolve_calls(g);
  std::uint64_t used = 0;
  auto report = [&](ParseOutcome o) {
    if (steps_used) *steps_used = used;
    return o;
  };

  std::vector<Frame> stack{{expression, pos, 0}};
  ParseOutcome res;
  while (!stack.empty()) {
    Frame& f = stack.back();
    const Node& n = g.node(f.node);
    if (f.stage == 0) {
      if (used == budget) return report(ParseOutcome::diverged());
      ++used;
    }
    const std::size_t at = f.pos;
    switch (n.kind) {
      case ExprKind::Empty:
        res = ParseOutcome::consumed(at);
        stack.pop_back();
        break;
      case ExprKind::Terminal:
        res = at < input.size() && input[at] == n.letter ? ParseOutcome::consumed(at + 1)
                                                         : ParseOutcome::failure();
        stack.pop_back();
        break;
      case ExprKind::Nonterminal:
        if (f.stage == 0) {
          f.stage = 1;
          stack.push_back({target[f.node], at, 0});
        } else {
          stack.pop_back();
        }
        break;
      case ExprKind::Sequence:
        if (f.stage == 0) {
          f.stage = 1;
          stack.push_back({n.left, at, 0});
        } else if (f.stage == 1 && res.succeeded()) {
          f.stage = 2;
          stack.push_back({n.right, res.resume, 0});
        } else {
          stack.pop_back();
        }
        break;
      case ExprKind::Choice:
        if (f.stage == 0) {
          f.stage = 1;
          stack.push_back({n.left, at, 0});
        } else if (f.stage == 1 && !res.succeeded()) {
          f.stage = 2;
          stack.push_back({n.right, at, 0});
        } else {
          stack.pop_back();
        }
        break;
      case ExprKind::Not:
        if (f.stage == 0) {
          f.stage = 1;
          stack.push_back({n.left, at, 0});
        } else {
          res = res.succeeded() ? ParseOutcome::failure() : ParseOutcome::consumed(at);
          stack.pop_back();
        }
        break;
      default: break;
    }
  }
  return report(res);
}

PackratParser::PackratParser(const Grammar& grammar, std::string_view input)
    : grammar_(grammar),
      input_(input),
      call_target_(resolve_calls(grammar)),
      table_(grammar.node_count() * (input.size() + 1), kUnvisited) {
  if (const Rule* r = grammar.find_rule(grammar.axiom())) axiom_body_ = r->body;
  else throw ValidationError("axiom '" + grammar.axiom() + "' has no rule");
}

std::optional<ParseOutcome> PackratParser::memo(NodeId expression, std::size_t pos) const {
  std::uint32_t v = table_.at(static_cast<std::size_t>(expression) * (input_.size() + 1) + pos);
  if (v == kUnvisited || v == kInProgress) return std::nullopt;
  return decode(v);
}

ParseOutcome PackratParser::parse(NodeId expression, std::size_t pos) {
  const std::size_t width = input_.size() + 1;
  auto slot = [&](NodeId node, std::size_t at) -> std::uint32_t& {
    return table_[static_cast<std::size_t>(node) * width + at];
  };

  std::vector<Frame> stack;
  ParseOutcome res;
  // Either answers from the table or opens a new entry.
  auto enter = [&](NodeId node, std::size_t at) {
    ++lookups_;
    std::uint32_t v = slot(node, at);
    if (v == kInProgress) {
      res = ParseOutcome::diverged();
    } else if (v != kUnvisited) {
      res = decode(v);
    } else {
      slot(node, at) = kInProgress;
      ++computations_;
      stack.push_back({node, at, 0});
    }
  };
  auto leave = [&](ParseOutcome o) {
    res = o;
    slot(stack.back().node, stack.back().pos) = encode(o);
    stack.pop_back();
  };

  enter(expression, pos);
  while (!stack.empty()) {
    Frame& f = stack.back();
    const Node& n = grammar_.node(f.node);
    const std::size_t at = f.pos;
    if (f.stage > 0 && res.kind == ParseOutcome::Kind::Diverged) {
      leave(res);
      continue;
    }
    switch (n.kind) {
      case ExprKind::Empty: leave(ParseOutcome::consumed(at)); break;
      case ExprKind::Terminal:
        leave(at < input_.size() && input_[at] == n.letter ? ParseOutcome::consumed(at + 1)
                                                            : ParseOutcome::failure());
        break;
      case ExprKind::Nonterminal:
        if (f.stage == 0) {
          f.stage = 1;
          enter(call_target_[f.node], at);
        } else {
          leave(res);
        }
        break;
      case ExprKind::Sequence:
        if (f.stage == 0) {
          f.stage = 1;
          enter(n.left, at);
        } else if (f.stage == 1 && res.succeeded()) {
          f.stage = 2;
          enter(n.right, res.resume);
        } else {
          leave(res);
        }
        break;
      case ExprKind::Choice:
        if (f.stage == 0) {
          f.stage = 1;
          enter(n.left, at);
        } else if (f.stage == 1 && !res.succeeded()) {
          f.stage = 2;
          enter(n.right, at);
        } else {
          leave(res);
        }
        break;
      case ExprKind::Not:
        if (f.stage == 0) {
          f.stage = 1;
          enter(n.left, at);
        } else {
          leave(res.succeeded() ? ParseOutcome::failure() : ParseOutcome::consumed(at));
        }
        break;
      default: leave(ParseOutcome::failure()); break;
    }
  }
  return res;
}

ParseOutcome interpret_packrat(const Grammar& grammar, std::string_view input) {
  if (!grammar.core_only()) {
    Grammar core = desugar(grammar);
    return PackratParser(core, input).parse_axiom();
  }
  return PackratParser(grammar, input).parse_axiom();
}

bool accepts(const Grammar& grammar, std::string_view input) {
  ParseOutcome o = interpret_packrat(grammar, input);
  return o.succeeded() && o.resume == input.size();
}

}  // namespace pegmachine::peg
