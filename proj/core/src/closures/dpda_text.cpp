#include <sstream>

#include "pegmachine/closures.hpp"
#include "pegmachine/error.hpp"
#include "text/tokens.hpp"

namespace pegmachine::closures {

Dpda parse_dpda_text(std::string_view source) {
  const auto lines = text::tokenize_lines(source);
  DpdaBuilder b;
  bool have_kind = false, have_states = false, have_initial = false, have_bottom = false;
  std::size_t last_line = 0;
  for (const auto& [line_no, toks] : lines) {
    last_line = line_no;
    if (!text::is_directive(toks)) continue;
    const std::string& head = toks[0].text;
    auto need = [&, line_no = line_no](std::size_t n) {
      if (toks.size() != n)
        throw SyntaxError(head + " expects " + std::to_string(n - 1) + " argument(s)", line_no,
                          toks[0].column);
    };
    auto declared = [&, line_no = line_no](const text::Token& t) {
      if (!b.has_state(t.text)) throw SyntaxError("undeclared state '" + t.text + "'", line_no, t.column);
      return t.text;
    };
    try {
      if (head == "@kind") {
        need(2);
        if (toks[1].text != "dpda")
          throw SyntaxError("expected '@kind dpda', found '" + toks[1].text + "'", line_no, toks[1].column);
        have_kind = true;
      } else if (head == "@alphabet") {
        need(2);
        if (!toks[1].quoted) throw SyntaxError("@alphabet expects a string literal", line_no, toks[1].column);
        b.set_alphabet(toks[1].text);
      } else if (head == "@states") {
        for (std::size_t i = 1; i < toks.size(); ++i) b.state(toks[i].text);
        have_states = true;
      } else if (head == "@final") {
        for (std::size_t i = 1; i < toks.size(); ++i) b.add_final(declared(toks[i]));
      } else if (head == "@initial") {
        need(2);
        b.set_initial(declared(toks[1]));
        have_initial = true;
      } else if (head == "@bottom") {
        need(2);
        b.set_bottom(toks[1].text);
        have_bottom = true;
      } else if (head == "@stack") {
        for (std::size_t i = 1; i < toks.size(); ++i) b.symbol(toks[i].text);
      } else {
        throw SyntaxError("unknown directive '" + head + "'", line_no, toks[0].column);
      }
    } catch (const SyntaxError&) {
      throw;
    } catch (const ValidationError& e) {
      throw SyntaxError(e.what(), line_no, toks[0].column);
    }
  }
  if (!have_kind) throw SyntaxError("missing '@kind dpda'", last_line, 1);
  if (!have_states) throw SyntaxError("missing @states", last_line, 1);
  if (!have_initial) throw SyntaxError("missing @initial", last_line, 1);
  if (!have_bottom) throw SyntaxError("missing @bottom", last_line, 1);

  for (const auto& [line_no, toks] : lines) {
    if (text::is_directive(toks)) continue;
    auto fail = [&, line_no = line_no](const std::string& msg, std::size_t col) {
      throw SyntaxError(msg, line_no, col);
    };
    if (toks.size() != 6 || toks[3].text != "->" || toks[3].quoted)
      fail("expected 'state letter symbol -> state push'", toks[0].column);
    for (std::size_t i : {0u, 4u})
      if (!b.has_state(toks[i].text)) fail("undeclared state '" + toks[i].text + "'", toks[i].column);
    std::optional<char> letter;
    const text::Token& lt = toks[1];
    if (lt.quoted) {
      if (lt.text.size() != 1) fail("letter literal must be one character", lt.column);
      letter = lt.text[0];
    } else if (lt.text != "eps") {
      fail("expected a quoted letter or 'eps'", lt.column);
    }
    std::vector<std::string> push;
    if (toks[5].text != "-") {
      std::string_view rest = toks[5].text;
      while (true) {
        auto comma = rest.find(',');
        std::string_view part = rest.substr(0, comma);
        if (part.empty()) fail("empty symbol in push string", toks[5].column);
        push.emplace_back(part);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
      }
    }
    try {
      b.add(toks[0].text, letter, toks[2].text, toks[4].text, push);
    } catch (const ValidationError& e) {
      fail(e.what(), toks[0].column);
    }
  }
  try {
    return b.build();
  } catch (const ValidationError& e) {
    throw SyntaxError(e.what(), last_line, 1);
  }
}

std::string format_dpda(const Dpda& d) {
  std::ostringstream os;
  os << "@kind dpda\n@alphabet " << text::quote(d.alphabet()) << "\n@states";
  for (const auto& q : d.states()) os << ' ' << q;
  os << "\n@final";
  for (StateId q = 0; q < d.states().size(); ++q)
    if (d.is_final(q)) os << ' ' << d.state_name(q);
  os << "\n@initial " << d.state_name(d.initial()) << "\n@bottom " << d.symbol_name(d.bottom())
     << "\n@stack";
  for (const auto& z : d.symbols()) os << ' ' << z;
  os << '\n';
  for (const auto& [key, mv] : d.moves()) {
    auto [q, a, z] = key;
    os << d.state_name(q) << ' '
       << (a == kEpsilon ? std::string("eps") : text::quote(std::string(1, d.alphabet()[a - 1]))) << ' '
       << d.symbol_name(z) << " -> " << d.state_name(mv.next) << ' ';
    if (mv.push.empty()) os << '-';
    for (std::size_t i = 0; i < mv.push.size(); ++i) os << (i ? "," : "") << d.symbol_name(mv.push[i]);
    os << '\n';
  }
  return os.str();
}

}  // namespace pegmachine::closures
