#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pegmachine/cli/app.hpp"
#include "pegmachine/cli/fuzz.hpp"
#include "pegmachine/closures.hpp"
#include "pegmachine/cooksim.hpp"
#include "pegmachine/error.hpp"
#include "pegmachine/translate.hpp"

namespace pegmachine::cli {
namespace {

enum class FileKind { Grammar, Machine, Dpda, Dfa, Spec };

struct Loaded {
  FileKind kind = FileKind::Grammar;
  std::filesystem::path path;
  std::optional<peg::Grammar> grammar;
  std::optional<pppda::Machine> machine;
  std::optional<closures::Dpda> dpda;
  std::optional<closures::LabeledDfa> dfa;
  std::optional<closures::CompositionSpec> spec;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

FileKind detect(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream words(line);
    std::string head, arg;
    words >> head >> arg;
    if (head == "@kind") {
      if (arg == "pppda") return FileKind::Machine;
      if (arg == "dpda") return FileKind::Dpda;
      if (arg == "dfa") return FileKind::Dfa;
      throw ValidationError("unknown file kind '" + arg + "'");
    }
    if (head == "@states" || head == "@twoway") return FileKind::Machine;
    if (head == "@dfa" || head == "@bind") return FileKind::Spec;
  }
  return FileKind::Grammar;
}

Loaded load(const std::string& path) {
  Loaded l;
  l.path = path;
  const std::string text = read_file(path);
  l.kind = detect(text);
  switch (l.kind) {
    case FileKind::Grammar:
      l.grammar = peg::parse_grammar_text(text);
      l.grammar->validate();
      break;
    case FileKind::Machine: l.machine = pppda::parse_machine_text(text); break;
    case FileKind::Dpda: l.dpda = closures::parse_dpda_text(text); break;
    case FileKind::Dfa: l.dfa = closures::parse_dfa_text(text); break;
    case FileKind::Spec: l.spec = closures::parse_spec_text(text, l.path.parent_path()); break;
  }
  return l;
}

const peg::Grammar& need_grammar(const Loaded& l) {
  if (!l.grammar) throw ValidationError("'" + l.path.string() + "' is not a grammar");
  return *l.grammar;
}

// Machines are taken as they are; grammars are compiled and specs built.
pppda::Machine as_machine(const Loaded& l) {
  if (l.machine) return pppda::desugar_hat_moves(*l.machine);
  if (l.grammar) return translate::compile(*l.grammar);
  if (l.spec) return closures::reg_closure_machine(closures::make_epsilon_free(*l.spec));
  throw ValidationError("'" + l.path.string() + "' is not a grammar, machine or composition spec");
}

peg::Grammar as_grammar(const Loaded& l) {
  if (l.grammar) return *l.grammar;
  return translate::extract(as_machine(l));
}

struct Globals {
  std::optional<std::uint64_t> step_limit;
  std::uint64_t budget = peg::kDefaultNaiveBudget;
  std::uint64_t seed = 1;
  std::string engine;
};

struct Emitter {
  std::string output;
  std::ostream& out;

  void emit(const std::string& text) const {
    if (output.empty()) {
      out << text;
      return;
    }
    std::ofstream f(output, std::ios::binary);
    if (!f) throw ValidationError("cannot write '" + output + "'");
    f << text;
  }
};

void check_grammar_word(const peg::Grammar& g, std::string_view word) {
  for (char c : word)
    if (!g.has_letter(c))
      throw ValidationError(std::string("letter '") + c + "' is not in the alphabet \"" +
                            g.alphabet() + "\"");
}

struct RunOptions {
  std::string path;
  std::string word;
  std::string input_file;
  bool trace = false;
  bool stats = false;
};

int cmd_check(const std::string& path, std::ostream& out) {
  Loaded l = load(path);
  switch (l.kind) {
    case FileKind::Grammar: {
      peg::WfReport r = peg::check_well_formed(*l.grammar);
      if (!r.well_formed) {
        out << "not well-formed: left recursion";
        const auto& cycle = *r.offending_cycle;
        for (std::size_t i = 0; i < cycle.size(); ++i) out << (i ? " -> " : " ") << cycle[i];
        if (!cycle.empty()) out << " -> " << cycle.front();
        out << '\n';
        return kExitReject;
      }
      out << "well-formed grammar: " << l.grammar->rules().size() << " rules, alphabet \""
          << l.grammar->alphabet() << "\"\n";
      return kExitAccept;
    }
    case FileKind::Machine: {
      const pppda::Machine& m = *l.machine;
      auto why = pppda::normal_form_violation(m);
      out << "valid machine: " << m.states().size() << " states, " << m.symbols().size() << " symbols, "
          << m.entry_count() << " transitions, " << (m.two_way() ? "two-way" : "one-way") << '\n'
          << "normal form: " << (why ? "no (" + *why + ")" : std::string("yes")) << '\n';
      return kExitAccept;
    }
    case FileKind::Dpda:
      out << "valid dpda: " << l.dpda->states().size() << " states, " << l.dpda->symbols().size()
          << " symbols, " << l.dpda->moves().size() << " transitions\n";
      return kExitAccept;
    case FileKind::Dfa:
      out << "valid dfa: " << l.dfa->states.size() << " states, " << l.dfa->labels.size() << " labels\n";
      return kExitAccept;
    case FileKind::Spec:
      out << "valid composition spec: " << l.spec->dfa.labels.size() << " labels\n";
      return kExitAccept;
  }
  return kExitAccept;
}

using Stats = std::vector<std::pair<std::string, std::string>>;

int finish_run(std::ostream& out, const std::string& verdict, int code, const Stats& stats, bool show) {
  out << verdict << '\n';
  if (show) {
    out << "---\n";
    for (const auto& [k, v] : stats) out << k << '=' << v << '\n';
  }
  return code;
}

int cmd_run(const RunOptions& o, const Globals& gl, std::ostream& out, std::ostream& err) {
  Loaded l = load(o.path);
  std::string word = o.word;
  if (!o.input_file.empty()) {
    word = read_file(o.input_file);
    while (!word.empty() && (word.back() == '\n' || word.back() == '\r')) word.pop_back();
  }
  Stats stats;

  if (l.dpda) {
    for (char c : word)
      if (!l.dpda->letter_of(c)) throw ValidationError(std::string("letter '") + c + "' is not in the alphabet");
    auto v = closures::dpda_run(*l.dpda, word, gl.step_limit);
    stats.emplace_back("engine", "dpda");
    int code = v == closures::DpdaVerdict::Accept   ? kExitAccept
               : v == closures::DpdaVerdict::Reject ? kExitReject
                                                    : kExitBudget;
    return finish_run(out, closures::to_string(v), code, stats, o.stats);
  }

  std::string engine = gl.engine;
  if (engine.empty()) engine = l.grammar ? "packrat" : "direct";
  stats.emplace_back("engine", engine);
  if (o.trace && engine != "direct") err << "note: --trace is only available for the direct engine\n";

  if (engine == "naive" || engine == "packrat") {
    peg::Grammar g = peg::desugar(as_grammar(l));
    check_grammar_word(g, word);
    peg::ParseOutcome outcome;
    if (engine == "naive") {
      std::uint64_t steps = 0;
      outcome = peg::interpret_naive(g, g.find_rule(g.axiom())->body, word, 0, gl.budget, &steps);
      stats.emplace_back("naive.steps", std::to_string(steps));
    } else {
      peg::PackratParser p(g, word);
      outcome = p.parse_axiom();
      stats.emplace_back("packrat.computations", std::to_string(p.computations()));
      stats.emplace_back("packrat.lookups", std::to_string(p.lookups()));
    }
    stats.emplace_back("outcome", peg::to_string(outcome));
    if (outcome.kind == peg::ParseOutcome::Kind::Diverged)
      return finish_run(out, "budget-exhausted", kExitBudget, stats, o.stats);
    bool ok = outcome.succeeded() && outcome.resume == word.size();
    return finish_run(out, ok ? "accept" : "reject", ok ? kExitAccept : kExitReject, stats, o.stats);
  }

  if (engine != "direct" && engine != "cook")
    throw ValidationError("unknown engine '" + engine + "' (naive, packrat, direct, cook)");
  pppda::Machine m = as_machine(l);
  pppda::check_word(m, word);
  if (engine == "cook") {
    cook::LinearResult r = cook::run_linear(m, word);
    stats.emplace_back("cook.ops", std::to_string(r.ops));
    stats.emplace_back("cook.table", std::to_string(r.table_size));
    stats.emplace_back("cook.reason", cook::to_string(r.reason));
    return finish_run(out, r.accepted ? "accept" : "reject", r.accepted ? kExitAccept : kExitReject, stats,
                      o.stats);
  }
  pppda::TraceSink sink;
  if (o.trace) {
    sink = [&](const pppda::TraceEvent& e) {
      out << e.step << ' ' << (e.kind == pppda::TraceEvent::Kind::Push ? "push" : "pop") << ' '
          << pppda::to_string(e.direction) << ' ' << pppda::format_configuration(m, e.before) << " -> "
          << pppda::format_configuration(m, e.after) << '\n';
    };
  }
  pppda::RunResult r = pppda::run_direct(m, word, gl.step_limit, sink);
  stats.emplace_back("direct.steps", std::to_string(r.steps));
  stats.emplace_back("direct.reason", pppda::to_string(r.reason));
  switch (r.verdict) {
    case pppda::Verdict::Accept: return finish_run(out, "accept", kExitAccept, stats, o.stats);
    case pppda::Verdict::Reject: return finish_run(out, "reject", kExitReject, stats, o.stats);
    case pppda::Verdict::BudgetExhausted: break;
  }
  return finish_run(out, "budget-exhausted", kExitBudget, stats, o.stats);
}

std::string family_word(const std::string& family, std::size_t n) {
  if (family == "anbncn") return std::string(n, 'a') + std::string(n, 'b') + std::string(n, 'c');
  if (family == "anbn") return std::string(n, 'a') + std::string(n, 'b');
  if (family == "an") return std::string(n, 'a');
  if (family == "abn") {
    std::string w;
    for (std::size_t i = 0; i < n; ++i) w += "ab";
    return w;
  }
  throw ValidationError("unknown word family '" + family + "' (anbncn, anbn, an, abn)");
}

int cmd_bench(const std::string& path, const std::string& family, const std::vector<std::size_t>& sizes,
              bool assert_linear, const Globals& gl, std::ostream& out, std::ostream& err) {
  pppda::Machine m = as_machine(load(path));
  std::map<std::size_t, std::uint64_t> ops;
  bool ok = true;
  out << "n cook.ops direct.steps\n";
  for (std::size_t n : sizes) {
    const std::string w = family_word(family, n);
    pppda::check_word(m, w);
    cook::WorkReport wr = cook::work_bound_check(m, w);
    pppda::RunResult r = pppda::run_direct(m, w, gl.step_limit);
    out << n << ' ' << wr.ops << ' ' << r.steps << '\n';
    ops[n] = wr.ops;
    if (assert_linear && !wr.within_bound()) {
      err << "n=" << n << ": cook.ops " << wr.ops << " exceeds the bound " << wr.bound << '\n';
      ok = false;
    }
  }
  if (assert_linear) {
    for (const auto& [n, count] : ops) {
      auto twice = ops.find(2 * n);
      if (n == 0 || twice == ops.end()) continue;
      double ratio = static_cast<double>(twice->second) / static_cast<double>(count);
      if (ratio < 1.8 || ratio > 2.2) {
        err << "ratio cook.ops(" << 2 * n << ")/cook.ops(" << n << ") = " << ratio << " outside [1.8, 2.2]\n";
        ok = false;
      }
    }
  }
  return ok ? kExitAccept : kExitReject;
}

int cmd_compose(const std::string& op, const std::vector<std::string>& paths, const Emitter& emit) {
  auto arity = [&](std::size_t n) {
    if (paths.size() != n)
      throw ValidationError("compose " + op + " expects " + std::to_string(n) + " file(s)");
  };
  if (op == "complement") {
    arity(1);
    emit.emit(peg::format_grammar(closures::pel_complement(need_grammar(load(paths[0])))));
  } else if (op == "union" || op == "intersect") {
    arity(2);
    Loaded la = load(paths[0]), lb = load(paths[1]);
    const peg::Grammar& a = need_grammar(la);
    const peg::Grammar& b = need_grammar(lb);
    emit.emit(peg::format_grammar(op == "union" ? closures::pel_union(a, b) : closures::pel_intersection(a, b)));
  } else if (op == "concat-dcfl") {
    arity(2);
    Loaded x = load(paths[0]);
    if (!x.dpda) throw ValidationError("'" + paths[0] + "' is not a dpda");
    emit.emit(pppda::format_machine(closures::left_concat_dcfl(*x.dpda, as_machine(load(paths[1])))));
  } else if (op == "reg-closure") {
    arity(1);
    Loaded s = load(paths[0]);
    if (!s.spec) throw ValidationError("'" + paths[0] + "' is not a composition spec");
    emit.emit(pppda::format_machine(closures::reg_closure_machine(closures::make_epsilon_free(*s.spec))));
  } else {
    throw ValidationError("unknown composition '" + op +
                          "' (complement, union, intersect, concat-dcfl, reg-closure)");
  }
  return kExitAccept;
}

}  // namespace

int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parsing expression grammars and pointer pushdown automata", "pegmachine"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals gl;
  std::uint64_t step_limit = 0;
  auto* step_opt = app.add_option("--step-limit", step_limit, "Step limit of the direct engine");
  app.add_option("--budget", gl.budget, "Clause budget of the naive engine");
  app.add_option("--seed", gl.seed, "Random seed");
  app.add_option("--engine", gl.engine, "naive, packrat, direct or cook")
      ->check(CLI::IsMember({"naive", "packrat", "direct", "cook"}));

  std::string path, output;
  auto file_command = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("file", path, "Input file")->required();
    c->add_option("-o,--output", output, "Output file");
    return c;
  };
  auto* check = app.add_subcommand("check", "Validate a file; grammars are checked for left recursion");
  check->add_option("file", path, "Input file")->required();
  auto* desugar = file_command("desugar", "Rewrite sugar into core expressions");
  auto* cnf = file_command("cnf", "Chomsky normal form of a grammar");
  auto* normalize = file_command("normalize", "Normal form of a one-way machine");
  auto* compile = file_command("compile", "Compile a grammar to a machine");
  auto* extract = file_command("extract", "Extract a grammar from a one-way machine");

  RunOptions ro;
  auto run_command = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("file", ro.path, "Grammar, machine, dpda or composition spec")->required();
    c->add_option("word", ro.word, "Input word (default empty)");
    c->add_option("--input-file", ro.input_file, "Read the word from a file");
    c->add_flag("--stats", ro.stats, "Print counters after ---");
    return c;
  };
  auto* run = run_command("run", "Decide membership of a word");
  run->add_flag("--trace", ro.trace, "Print every move of the direct engine");
  auto* trace = run_command("trace", "Same as run --trace");

  std::string family = "anbncn";
  std::vector<std::size_t> sizes{0, 50, 100, 200, 400};
  bool assert_linear = false;
  auto* bench = app.add_subcommand("bench", "Count simulator work on a word family");
  bench->add_option("file", path, "Grammar or machine")->required();
  bench->add_option("--family", family, "anbncn, anbn, an or abn");
  bench->add_option("--sizes", sizes, "Values of n")->delimiter(',');
  bench->add_flag("--assert-linear", assert_linear, "Fail unless work doubles with n");

  FuzzConfig fc;
  auto* fuzz = app.add_subcommand("fuzz", "Differential test of all engines on random grammars");
  fuzz->add_option("--cases", fc.cases, "Number of grammars");
  fuzz->add_option("--max-length", fc.max_word_length, "Longest word");
  fuzz->add_option("--alphabet-size", fc.alphabet_size, "Letters, starting at 'a'")->check(CLI::Range(1, 26));
  fuzz->add_option("--max-nonterminals", fc.max_nonterminals, "Largest grammar")->check(CLI::Range(1, 12));
  fuzz->add_option("--words", fc.words_per_case, "Words per grammar");

  std::string op;
  std::vector<std::string> operands;
  auto* compose = app.add_subcommand("compose", "Closure constructions");
  compose->add_option("op", op, "complement, union, intersect, concat-dcfl or reg-closure")->required();
  compose->add_option("files", operands, "Operands")->required();
  compose->add_option("-o,--output", output, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitAccept : kExitInvalidInput;
  }
  if (step_opt->count() > 0) gl.step_limit = step_limit;
  fc.seed = gl.seed;
  Emitter emit{output, out};

  try {
    if (check->parsed()) return cmd_check(path, out);
    if (desugar->parsed()) {
      emit.emit(peg::format_grammar(peg::desugar(need_grammar(load(path)))));
    } else if (cnf->parsed()) {
      emit.emit(peg::format_grammar(peg::to_cnf(peg::desugar(need_grammar(load(path)))).grammar()));
    } else if (normalize->parsed()) {
      Loaded l = load(path);
      if (!l.machine) throw ValidationError("'" + path + "' is not a machine");
      emit.emit(pppda::format_machine(pppda::normalize(*l.machine)));
    } else if (compile->parsed()) {
      emit.emit(pppda::format_machine(translate::compile(need_grammar(load(path)))));
    } else if (extract->parsed()) {
      Loaded l = load(path);
      if (l.grammar) throw ValidationError("'" + path + "' is already a grammar");
      emit.emit(peg::format_grammar(as_grammar(l)));
    } else if (run->parsed() || trace->parsed()) {
      if (trace->parsed()) ro.trace = true;
      return cmd_run(ro, gl, out, err);
    } else if (bench->parsed()) {
      return cmd_bench(path, family, sizes, assert_linear, gl, out, err);
    } else if (fuzz->parsed()) {
      FuzzReport r = run_fuzz(fc);
      if (r.divergence) {
        print_divergence(out, *r.divergence);
        return kExitDivergence;
      }
      out << "no divergence: " << r.cases << " grammars, " << r.words << " words\n";
    } else if (compose->parsed()) {
      return cmd_compose(op, operands, emit);
    }
    return kExitAccept;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitDivergence;
  }
}

}  // namespace pegmachine::cli
