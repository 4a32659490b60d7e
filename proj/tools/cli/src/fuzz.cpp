#include <ostream>
#include <set>

#include "pegmachine/cli/fuzz.hpp"
#include "pegmachine/cli/random.hpp"
#include "pegmachine/cooksim.hpp"
#include "pegmachine/translate.hpp"

namespace pegmachine::cli {
namespace {

class Engines {
 public:
  explicit Engines(const peg::CnfGrammar& g)
      : grammar_(g.grammar()),
        machine_(translate::compile(g.grammar())),
        extracted_(peg::desugar(translate::extract(machine_))) {}

  bool verdict(Engine e, const std::string& word) const {
    switch (e) {
      case Engine::Naive: {
        const peg::Rule* axiom = grammar_.find_rule(grammar_.axiom());
        auto o = peg::interpret_naive(grammar_, axiom->body, word, 0);
        return o.succeeded() && o.resume == word.size();
      }
      case Engine::Packrat: {
        auto o = peg::interpret_packrat(grammar_, word);
        return o.succeeded() && o.resume == word.size();
      }
      case Engine::CompiledDirect:
        return pppda::run_direct(machine_, word).verdict == pppda::Verdict::Accept;
      case Engine::CompiledCook: return cook::run_linear(machine_, word).accepted;
      case Engine::Extracted: return peg::accepts(extracted_, word);
    }
    return false;
  }

 private:
  const peg::Grammar& grammar_;
  pppda::Machine machine_;
  peg::Grammar extracted_;
};

std::vector<std::pair<Engine, bool>> verdicts_of(const Engines& engines, const std::string& word,
                                                 const FuzzConfig& config) {
  std::vector<std::pair<Engine, bool>> out;
  for (Engine e : kEngines) {
    bool v = engines.verdict(e, word);
    if (config.corrupt) v = config.corrupt(e, word, v);
    out.emplace_back(e, v);
  }
  return out;
}

bool disagree(const std::vector<std::pair<Engine, bool>>& v) {
  for (const auto& [e, verdict] : v)
    if (verdict != v.front().second) return true;
  return false;
}

// `g` with rule `index` replaced by the empty string, or the same grammar
// when index is out of range. Rules unreachable from the axiom are dropped.
peg::Grammar with_empty_rule(const peg::Grammar& g, std::size_t index) {
  std::set<std::string> reachable{g.axiom()};
  std::vector<std::string> work{g.axiom()};
  while (!work.empty()) {
    const std::string name = work.back();
    work.pop_back();
    const auto idx = g.rule_index(name);
    if (*idx == index) continue;
    std::vector<peg::NodeId> nodes{g.rules()[*idx].body};
    while (!nodes.empty()) {
      const peg::Node& n = g.node(nodes.back());
      nodes.pop_back();
      if (n.kind == peg::ExprKind::Nonterminal && reachable.insert(n.name).second) work.push_back(n.name);
      if (n.left != peg::kNoNode) nodes.push_back(n.left);
      if (n.right != peg::kNoNode) nodes.push_back(n.right);
    }
  }
  peg::Grammar out;
  out.declare_letters(g.alphabet());
  for (std::size_t i = 0; i < g.rules().size(); ++i) {
    const peg::Rule& r = g.rules()[i];
    if (!reachable.contains(r.name)) continue;
    out.add_rule(r.name, i == index ? out.empty() : peg::import_expression(out, g, r.body));
  }
  out.set_axiom(g.axiom());
  return out;
}

std::optional<peg::CnfGrammar> as_cnf(const peg::Grammar& g) {
  if (peg::cnf_violation(g) || !peg::check_well_formed(g).well_formed) return std::nullopt;
  return peg::CnfGrammar::from(g);
}

Divergence shrink(Divergence d, const FuzzConfig& config) {
  auto diverges = [&](const peg::CnfGrammar& g, const std::string& w) {
    auto v = verdicts_of(Engines(g), w, config);
    return disagree(v) ? std::optional(v) : std::nullopt;
  };
  peg::CnfGrammar g = peg::CnfGrammar::from(d.grammar);
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t i = 0; i < d.word.size(); ++i) {
      std::string shorter = d.word.substr(0, i) + d.word.substr(i + 1);
      if (auto v = diverges(g, shorter)) {
        d.word = shorter;
        d.verdicts = *v;
        progress = true;
        break;
      }
    }
  }
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t i = 0; i < g.grammar().rules().size(); ++i) {
      if (g.grammar().rules()[i].name == g.grammar().axiom()) continue;
      if (g.grammar().node(g.grammar().rules()[i].body).kind == peg::ExprKind::Empty) continue;
      auto candidate = as_cnf(with_empty_rule(g.grammar(), i));
      if (!candidate) continue;
      if (auto v = diverges(*candidate, d.word)) {
        g = std::move(*candidate);
        d.verdicts = *v;
        progress = true;
        break;
      }
    }
  }
  d.grammar = with_empty_rule(g.grammar(), g.grammar().rules().size());
  return d;
}

}  // namespace

std::string to_string(Engine e) {
  switch (e) {
    case Engine::Naive: return "naive";
    case Engine::Packrat: return "packrat";
    case Engine::CompiledDirect: return "compiled-direct";
    case Engine::CompiledCook: return "compiled-cook";
    case Engine::Extracted: return "extracted-packrat";
  }
  return "?";
}

std::vector<std::pair<Engine, bool>> engine_verdicts(const peg::CnfGrammar& g, const std::string& word,
                                                     const FuzzConfig& config) {
  return verdicts_of(Engines(g), word, config);
}

FuzzReport run_fuzz(const FuzzConfig& config) {
  FuzzReport report;
  Rng rng(config.seed);
  RandomGrammarOptions options;
  options.max_nonterminals = config.max_nonterminals;
  options.alphabet.clear();
  for (std::size_t i = 0; i < config.alphabet_size; ++i) options.alphabet += static_cast<char>('a' + i);
  for (std::size_t c = 0; c < config.cases; ++c) {
    peg::CnfGrammar g = random_cnf_grammar(rng, options);
    Engines engines(g);
    ++report.cases;
    for (std::size_t k = 0; k < config.words_per_case; ++k) {
      std::string w = random_word(rng, options.alphabet, config.max_word_length);
      ++report.words;
      auto v = verdicts_of(engines, w, config);
      if (disagree(v)) {
        report.divergence = shrink(Divergence{c, g.grammar(), w, v}, config);
        return report;
      }
    }
  }
  return report;
}

void print_divergence(std::ostream& out, const Divergence& d) {
  out << "divergence in case " << d.case_index << " on word \"" << d.word << "\"\n";
  for (const auto& [e, v] : d.verdicts) out << "  " << to_string(e) << ": " << (v ? "accept" : "reject") << '\n';
  out << "grammar:\n" << peg::format_grammar(d.grammar);
}

}  // namespace pegmachine::cli
