#include <fstream>
#include <sstream>

#include "pegmachine/closures.hpp"
#include "pegmachine/error.hpp"
#include "text/tokens.hpp"

namespace pegmachine::closures {
namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

void CompositionSpec::validate() const {
  dfa.validate();
  if (dfa.labels.empty()) throw ValidationError("composition needs at least one label");
  if (bindings.size() != dfa.labels.size())
    throw ValidationError("every label must be bound to exactly one automaton");
}

CompositionSpec parse_spec_text(std::string_view source, const std::filesystem::path& base) {
  const auto lines = text::tokenize_lines(source);
  std::optional<LabeledDfa> dfa;
  std::vector<std::pair<std::size_t, std::vector<text::Token>>> binds;
  for (const auto& [line_no, toks] : lines) {
    const std::string& head = toks[0].text;
    auto load = [&, line_no = line_no](const text::Token& t) {
      try {
        return read_file(base / t.text);
      } catch (const ValidationError& e) {
        throw SyntaxError(e.what(), line_no, t.column);
      }
    };
    if (head == "@dfa" && toks.size() == 2) {
      if (dfa) throw SyntaxError("duplicate @dfa", line_no, toks[0].column);
      dfa = parse_dfa_text(load(toks[1]));
    } else if (head == "@bind" && toks.size() == 3) {
      binds.emplace_back(line_no, toks);
    } else {
      throw SyntaxError("expected '@dfa <path>' or '@bind <label> <path>'", line_no, toks[0].column);
    }
  }
  if (!dfa) throw SyntaxError("missing @dfa", lines.empty() ? 1 : lines.back().first, 1);
  CompositionSpec spec;
  spec.dfa = *dfa;
  std::vector<std::optional<Dpda>> bound(dfa->labels.size());
  for (const auto& [line_no, toks] : binds) {
    auto j = dfa->label_index(toks[1].text);
    if (!j) throw SyntaxError("label '" + toks[1].text + "' is not in the DFA", line_no, toks[1].column);
    if (bound[*j]) throw SyntaxError("label '" + toks[1].text + "' bound twice", line_no, toks[1].column);
    std::string body;
    try {
      body = read_file(base / toks[2].text);
    } catch (const ValidationError& e) {
      throw SyntaxError(e.what(), line_no, toks[2].column);
    }
    bound[*j] = parse_dpda_text(body);
  }
  for (std::size_t j = 0; j < bound.size(); ++j) {
    if (!bound[j]) throw ValidationError("label '" + dfa->labels[j] + "' is unbound");
    spec.bindings.push_back(std::move(*bound[j]));
  }
  spec.validate();
  return spec;
}

CompositionSpec make_epsilon_free(const CompositionSpec& spec) {
  spec.validate();
  std::vector<bool> nullable;
  CompositionSpec out;
  for (const auto& d : spec.bindings) {
    bool empty = dpda_accepts(d, "");
    nullable.push_back(empty);
    out.bindings.push_back(empty ? without_empty_word(d) : d);
  }
  out.dfa = absorb_empty_labels(spec.dfa, nullable);
  return out;
}

}  // namespace pegmachine::closures
