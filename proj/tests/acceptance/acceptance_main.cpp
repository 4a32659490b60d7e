// Prints one PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pegmachine/cli/app.hpp"
#include "pegmachine/cli/random.hpp"
#include "pegmachine/closures.hpp"
#include "pegmachine/cooksim.hpp"
#include "pegmachine/error.hpp"
#include "pegmachine/peg.hpp"
#include "pegmachine/pppda.hpp"
#include "pegmachine/translate.hpp"
#include "test_support.hpp"

namespace {

using namespace pegmachine;
using pegmachine::testing::read_data;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

bool packrat_accepts(const peg::Grammar& g, std::string_view w) {
  peg::ParseOutcome r = peg::interpret_packrat(g, w);
  return r.succeeded() && r.resume == w.size();
}

bool naive_accepts(const peg::Grammar& g, std::string_view w) {
  const peg::Rule* axiom = g.find_rule(g.axiom());
  peg::ParseOutcome r = peg::interpret_naive(g, axiom->body, w, 0);
  return r.succeeded() && r.resume == w.size();
}

bool direct_accepts(const pppda::Machine& m, std::string_view w) {
  return pppda::run_direct(m, w).verdict == pppda::Verdict::Accept;
}

bool cook_accepts(const pppda::Machine& m, std::string_view w) { return cook::run_linear(m, w).accepted; }

// ---------------------------------------------------------------------------

Outcome criterion_trace() {
  const std::vector<std::string> checkpoints = {
      "(q0, Z0 x 0, 0)",       "(q0, YZ0 x 1:0, 1)",        "(q0, XYZ0 x 2:1:0, 2)",
      "(q0, XXXYZ0 x 4:3:2:1:0, 4)", "(q0, XXYZ0 x 3:2:1:0, 5)", "(q0, YZ0 x 1:0, 7)",
      "(q1, Z0 x 0, 1)",       "(q1, Z0 x 0, 4)",           "(q1, XZ0 x 5:0, 5)",
      "(q1, XXXZ0 x 7:6:5:0, 7)", "(q1, XXZ0 x 6:5:0, 8)",   "(q1, Z0 x 0, 10)",
      "(qf, (), 10)",
  };
  Outcome o;
  pppda::Machine m = pppda::desugar_hat_moves(pppda::builtin_anbncn());
  std::vector<std::string> seen = {pppda::format_configuration(m, pppda::initial_configuration(m))};
  pppda::RunResult r = pppda::run_direct(m, "aaabbbccc", std::nullopt, [&](const pppda::TraceEvent& e) {
    seen.push_back(pppda::format_configuration(m, e.after));
  });
  if (r.verdict != pppda::Verdict::Accept) o.fail("aaabbbccc not accepted");
  std::size_t next = 0;
  for (const std::string& c : seen)
    if (next < checkpoints.size() && c == checkpoints[next]) ++next;
  if (next != checkpoints.size()) o.fail("missing checkpoint " + checkpoints[next]);
  o.detail = o.pass ? std::to_string(checkpoints.size()) + " checkpoints in " + std::to_string(seen.size()) +
                          " configurations"
                    : o.detail;
  return o;
}

Outcome criterion_engines() {
  Outcome o;
  struct Case {
    std::string file;
    std::function<bool(std::string_view)> oracle;
  };
  peg::Grammar choice = peg::parse_grammar_text(read_data("choice.peg"));
  std::map<std::string, bool> choice_expect = {{"aab", true}, {"abbc", false}};
  const std::vector<Case> cases = {{"anbn_or_ancn.peg", pegmachine::testing::in_anbn_or_ancn},
                                   {"anbncn.peg", pegmachine::testing::in_anbncn}};

  auto check_all = [&](const peg::Grammar& g, const std::string& label, std::string_view w, bool want) {
    peg::Grammar core = peg::desugar(g);
    pppda::Machine m = translate::compile(g);
    const std::pair<const char*, bool> got[] = {{"naive", naive_accepts(core, w)},
                                                {"packrat", packrat_accepts(core, w)},
                                                {"direct", direct_accepts(m, w)},
                                                {"cook", cook_accepts(m, w)}};
    for (const auto& [engine, v] : got)
      if (v != want) o.fail(label + " '" + std::string(w) + "' " + engine);
  };
  for (const auto& [w, want] : choice_expect) check_all(choice, "choice", w, want);

  std::size_t words = 0;
  for (const Case& c : cases) {
    peg::Grammar g = peg::parse_grammar_text(read_data(c.file));
    peg::Grammar core = peg::desugar(g);
    pppda::Machine m = translate::compile(g);
    for (const std::string& w : translate::all_words("abc", 9)) {
      const bool want = c.oracle(w);
      ++words;
      if (naive_accepts(core, w) != want) o.fail(c.file + " '" + w + "' naive");
      if (packrat_accepts(core, w) != want) o.fail(c.file + " '" + w + "' packrat");
      if (direct_accepts(m, w) != want) o.fail(c.file + " '" + w + "' direct");
      if (cook_accepts(m, w) != want) o.fail(c.file + " '" + w + "' cook");
    }
  }
  if (o.pass) o.detail = "choice plus " + std::to_string(words) + " words on 4 engines";
  return o;
}

std::vector<peg::CnfGrammar> cnf_corpus() {
  cli::Rng rng(20240601);
  cli::RandomGrammarOptions opts;
  opts.max_nonterminals = 6;
  opts.alphabet = "ab";
  std::vector<peg::CnfGrammar> out;
  for (int i = 0; i < 500; ++i) out.push_back(cli::random_cnf_grammar(rng, opts));
  return out;
}

Outcome criterion_compile(const std::vector<peg::CnfGrammar>& corpus) {
  Outcome o;
  const auto words = translate::all_words("ab", 6);
  std::size_t accepted = 0;
  for (std::size_t i = 0; i < corpus.size() && o.pass; ++i) {
    const peg::Grammar& g = corpus[i].grammar();
    pppda::Machine m = translate::compile(g);
    for (const std::string& w : words) {
      const bool want = packrat_accepts(g, w);
      accepted += want;
      if (direct_accepts(m, w) != want) {
        o.fail("grammar " + std::to_string(i) + " word '" + w + "'");
        break;
      }
    }
  }
  if (o.pass)
    o.detail = std::to_string(corpus.size()) + " grammars, " + std::to_string(accepted) + " accepting pairs";
  return o;
}

Outcome criterion_extract(const std::vector<peg::CnfGrammar>& corpus) {
  Outcome o;
  const auto words = translate::all_words("ab", 6);
  for (std::size_t i = 0; i < corpus.size() && o.pass; ++i) {
    pppda::Machine m = translate::compile(corpus[i].grammar());
    peg::Grammar x = peg::desugar(translate::extract(m));
    for (const std::string& w : words) {
      if (packrat_accepts(x, w) != direct_accepts(m, w)) {
        o.fail("grammar " + std::to_string(i) + " word '" + w + "'");
        break;
      }
    }
  }
  if (o.pass) o.detail = std::to_string(corpus.size()) + " grammars";
  return o;
}

Outcome criterion_linear() {
  Outcome o;
  pppda::Machine m = pppda::desugar_hat_moves(pppda::builtin_anbncn());
  std::vector<std::uint64_t> ops;
  for (std::size_t n : {50, 100, 200, 400}) {
    std::string w = std::string(n, 'a') + std::string(n, 'b') + std::string(n, 'c');
    cook::WorkReport r = cook::work_bound_check(m, w);
    if (!r.within_bound()) o.fail("n=" + std::to_string(n) + " exceeds bound");
    ops.push_back(r.ops);
  }
  std::ostringstream detail;
  detail << "ops";
  for (std::size_t i = 0; i < ops.size(); ++i) {
    detail << ' ' << ops[i];
    if (i == 0) continue;
    double ratio = static_cast<double>(ops[i]) / static_cast<double>(ops[i - 1]);
    if (ratio < 1.8 || ratio > 2.2) o.fail("ratio " + std::to_string(ratio));
  }

  pppda::Machine loop = cook::looping_machine("ab");
  double worst_ms = 0;
  for (std::size_t n : {0, 1, 10, 100, 1000, 10000}) {
    std::string w(n, 'a');
    auto t0 = std::chrono::steady_clock::now();
    cook::LinearResult r = cook::run_linear(loop, w);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    worst_ms = std::max(worst_ms, ms);
    if (r.accepted || r.reason != cook::RejectReason::Loop) o.fail("loop machine not rejected by loop, n=" + std::to_string(n));
    if (ms >= 10.0) o.fail("loop detection took " + std::to_string(ms) + " ms at n=" + std::to_string(n));
  }
  if (o.pass) {
    detail << ", loop worst " << worst_ms << " ms";
    o.detail = detail.str();
  }
  return o;
}

Outcome criterion_cnf() {
  Outcome o;
  cli::Rng rng(7);
  cli::RandomGrammarOptions opts;
  const auto words = translate::all_words("ab", 6);
  std::size_t accepted = 0;
  for (int i = 0; i < 200 && o.pass; ++i) {
    peg::Grammar g = peg::desugar(cli::random_grammar(rng, opts));
    peg::CnfGrammar c = peg::to_cnf(g);
    for (const std::string& w : words) {
      const bool want = naive_accepts(g, w);
      accepted += want;
      if (packrat_accepts(c.grammar(), w) != want) {
        o.fail("grammar " + std::to_string(i) + " word '" + w + "'");
        break;
      }
    }
  }
  if (o.pass) o.detail = "200 grammars, " + std::to_string(accepted) + " accepting pairs";
  return o;
}

Outcome criterion_boolean() {
  Outcome o;
  cli::Rng rng(11);
  cli::RandomGrammarOptions opts;
  opts.max_nonterminals = 4;
  const auto words = translate::all_words("ab", 6);
  std::size_t both = 0, one = 0;
  for (int i = 0; i < 50 && o.pass; ++i) {
    peg::Grammar g1 = cli::random_grammar(rng, opts);
    peg::Grammar g2 = cli::random_grammar(rng, opts);
    peg::Grammar neg = peg::desugar(closures::pel_complement(g1));
    peg::Grammar uni = peg::desugar(closures::pel_union(g1, g2));
    peg::Grammar inter = peg::desugar(closures::pel_intersection(g1, g2));
    peg::Grammar d1 = peg::desugar(g1), d2 = peg::desugar(g2);
    for (const std::string& w : words) {
      const bool a = naive_accepts(d1, w), b = naive_accepts(d2, w);
      both += a && b;
      one += a != b;
      if (packrat_accepts(neg, w) != !a || packrat_accepts(uni, w) != (a || b) ||
          packrat_accepts(inter, w) != (a && b)) {
        o.fail("pair " + std::to_string(i) + " word '" + w + "'");
        break;
      }
    }
  }
  if (o.pass)
    o.detail = "50 pairs, " + std::to_string(both) + " words in both, " + std::to_string(one) + " in exactly one";
  return o;
}

bool dpda_member(const closures::Dpda& d, std::string_view w) {
  for (char c : w)
    if (!d.letter_of(c)) return false;
  return closures::dpda_accepts(d, w);
}

// Tries every factorization of `w` into binding words along a DFA path.
// Empty factors are allowed; `seen` keeps them from cycling.
class SpecOracle {
 public:
  explicit SpecOracle(const closures::CompositionSpec& s) : s_(s) {}

  bool member(std::string_view w) {
    memo_.clear();
    w_ = w;
    return from(0, s_.dfa.initial);
  }

 private:
  bool from(std::size_t pos, closures::StateId q) {
    std::vector<closures::StateId> closure = {q};
    std::vector<bool> seen(s_.dfa.states.size(), false);
    seen[q] = true;
    for (std::size_t k = 0; k < closure.size(); ++k)
      for (std::size_t j = 0; j < s_.dfa.labels.size(); ++j) {
        closures::StateId r = s_.dfa.delta[closure[k]][j];
        if (!seen[r] && dpda_member(s_.bindings[j], "")) {
          seen[r] = true;
          closure.push_back(r);
        }
      }
    for (closures::StateId p : closure) {
      if (pos == w_.size() && s_.dfa.finals[p]) return true;
      auto [it, fresh] = memo_.try_emplace({pos, p}, false);
      if (!fresh) {
        if (it->second) return true;
        continue;
      }
      for (std::size_t end = pos + 1; end <= w_.size(); ++end)
        for (std::size_t j = 0; j < s_.dfa.labels.size(); ++j)
          if (dpda_member(s_.bindings[j], w_.substr(pos, end - pos)) && from(end, s_.dfa.delta[p][j]))
            return memo_[{pos, p}] = true;
    }
    return false;
  }

  const closures::CompositionSpec& s_;
  std::string_view w_;
  std::map<std::pair<std::size_t, closures::StateId>, bool> memo_;
};

Outcome criterion_closures() {
  Outcome o;
  std::size_t words_checked = 0;
  for (const char* name : {"pairs.spec", "single.spec", "tail.spec"}) {
    closures::CompositionSpec spec = closures::parse_spec_text(read_data(name), PEGMACHINE_TEST_DATA);
    pppda::Machine m = closures::reg_closure_machine(closures::make_epsilon_free(spec));
    SpecOracle oracle(spec);
    for (const std::string& w : translate::all_words(m.alphabet(), 8)) {
      ++words_checked;
      if (direct_accepts(m, w) != oracle.member(w)) {
        o.fail(std::string(name) + " word '" + w + "'");
        break;
      }
    }
  }
  const std::pair<const char*, const char*> concats[] = {
      {"anbn.dpda", "cstar.peg"}, {"a.dpda", "b.peg"}, {"anbn.dpda", "choice.peg"}};
  for (const auto& [left, right] : concats) {
    closures::Dpda x = closures::parse_dpda_text(read_data(left));
    peg::Grammar y = peg::parse_grammar_text(read_data(right));
    pppda::Machine m = closures::left_concat_dcfl(x, translate::compile(y));
    for (const std::string& w : translate::all_words(m.alphabet(), 8)) {
      ++words_checked;
      bool want = false;
      for (std::size_t i = 0; i <= w.size() && !want; ++i)
        want = dpda_member(x, std::string_view(w).substr(0, i)) && peg::accepts(y, std::string_view(w).substr(i));
      if (direct_accepts(m, w) != want) {
        o.fail(std::string(left) + " . " + right + " word '" + w + "'");
        break;
      }
    }
  }
  if (o.pass) o.detail = "3 specs and 3 concatenations, " + std::to_string(words_checked) + " words";
  return o;
}

Outcome criterion_fuzz() {
  Outcome o;
  const char* argv[] = {"pegmachine", "fuzz", "--seed", "1", "--cases", "200"};
  std::ostringstream out, err;
  int code = cli::run_app(6, argv, out, err);
  if (code != 0) o.fail("exit " + std::to_string(code) + ": " + err.str() + out.str());
  if (o.pass) o.detail = "exit 0";
  return o;
}

}  // namespace

int main() {
  using Check = std::function<Outcome()>;
  std::vector<peg::CnfGrammar> corpus;
  auto corpus_ref = [&]() -> const std::vector<peg::CnfGrammar>& {
    if (corpus.empty()) corpus = cnf_corpus();
    return corpus;
  };
  const std::vector<Check> checks = {
      criterion_trace,
      criterion_engines,
      [&] { return criterion_compile(corpus_ref()); },
      [&] { return criterion_extract(corpus_ref()); },
      criterion_linear,
      criterion_cnf,
      criterion_boolean,
      criterion_closures,
      criterion_fuzz,
  };
  int failures = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = checks[i]();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !o.pass;
    std::printf("criterion %zu: %s (%s; %.2fs)\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str(), s);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
