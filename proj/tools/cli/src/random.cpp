#include <algorithm>

#include "pegmachine/cli/random.hpp"

namespace pegmachine::cli {
namespace {

constexpr const char* kNames[] = {"S", "A", "B", "C", "D", "E", "F", "G", "H", "I", "J", "K"};
constexpr std::size_t kMaxNames = sizeof kNames / sizeof kNames[0];

// At least `wanted` accepted words of length 1 to 5.
bool has_rich_language(const peg::Grammar& g, const std::string& alphabet, int wanted) {
  std::vector<std::string> layer{""};
  int found = 0;
  for (int len = 1; len <= 5; ++len) {
    std::vector<std::string> next;
    for (const auto& w : layer)
      for (char c : alphabet) next.push_back(w + c);
    for (const auto& w : next)
      if (peg::accepts(g, w) && ++found == wanted) return true;
    layer = std::move(next);
  }
  return false;
}

// Small grammars cannot reach three words; long searches settle for one.
int wanted(std::size_t k, std::size_t attempts) { return k >= 4 && attempts < 2000 ? 3 : 1; }

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

char letter(Rng& rng, const std::string& alphabet) { return alphabet[pick(rng, alphabet.size())]; }

peg::NodeId random_expression(Rng& rng, peg::Grammar& g, const RandomGrammarOptions& o, std::size_t k,
                              int depth) {
  // 0 letter, 1 empty, 2 call, 3 seq, 4 choice, 5 not, 6 and, 7 star, 8 plus, 9 option, 10 any
  const std::size_t kind = depth >= o.max_depth ? pick(rng, 3) : pick(rng, 11);
  auto sub = [&] { return random_expression(rng, g, o, k, depth + 1); };
  switch (kind) {
    case 0: return g.terminal(letter(rng, o.alphabet));
    case 1: return g.empty();
    case 2: return g.nonterminal(kNames[pick(rng, k)]);
    case 3: {
      peg::NodeId a = sub();
      return g.sequence(a, sub());
    }
    case 4: {
      peg::NodeId a = sub();
      return g.choice(a, sub());
    }
    case 5: return g.negate(sub());
    case 6: return g.and_predicate(sub());
    case 7: return g.star(sub());
    case 8: return g.plus(sub());
    case 9: return g.option(sub());
    default: return g.any_char();
  }
}

}  // namespace

peg::CnfGrammar random_cnf_grammar(Rng& rng, const RandomGrammarOptions& o) {
  const std::size_t limit = std::min(std::max<std::size_t>(o.max_nonterminals, 1), kMaxNames);
  // Sizes are drawn first so that rejection does not favour small grammars.
  const std::size_t k = 1 + pick(rng, limit);
  for (std::size_t attempts = 0;; ++attempts) {
    peg::Grammar g;
    g.declare_letters(o.alphabet);
    // The axiom S (index 0) never occurs on a right-hand side.
    auto ref = [&] { return g.nonterminal(kNames[1 + pick(rng, k - 1)]); };
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t shape = k == 1 ? 3 + pick(rng, 2) : pick(rng, 10);
      peg::NodeId body;
      if (shape <= 2) {
        peg::NodeId a = ref();
        body = g.choice(a, ref());
      } else if (shape == 3 || shape == 7) {
        body = g.terminal(letter(rng, o.alphabet));
      } else if (shape == 4) {
        body = g.empty();
      } else if (shape == 8) {
        body = g.negate(ref());
      } else {
        peg::NodeId a = ref();
        body = g.sequence(a, ref());
      }
      g.add_rule(kNames[i], body);
    }
    g.set_axiom("S");
    if (!check_well_formed(g).well_formed) continue;
    if (o.require_nonempty && !has_rich_language(g, o.alphabet, wanted(k, attempts))) continue;
    return peg::CnfGrammar::from(std::move(g));
  }
}

peg::Grammar random_grammar(Rng& rng, const RandomGrammarOptions& o) {
  const std::size_t limit = std::min(std::max<std::size_t>(o.max_nonterminals, 1), kMaxNames);
  const std::size_t k = 1 + pick(rng, limit);
  for (std::size_t attempts = 0;; ++attempts) {
    peg::Grammar g;
    g.declare_letters(o.alphabet);
    for (std::size_t i = 0; i < k; ++i) g.add_rule(kNames[i], random_expression(rng, g, o, k, 0));
    g.set_axiom("S");
    if (!check_well_formed(g).well_formed) continue;
    if (o.require_nonempty && !has_rich_language(g, o.alphabet, wanted(k, attempts))) continue;
    return g;
  }
}

std::string random_word(Rng& rng, const std::string& alphabet, std::size_t max_length) {
  std::string w(pick(rng, max_length + 1), ' ');
  for (char& c : w) c = letter(rng, alphabet);
  return w;
}

}  // namespace pegmachine::cli
