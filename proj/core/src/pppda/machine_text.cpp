#include <sstream>

#include "pegmachine/error.hpp"
#include "pegmachine/pppda.hpp"
#include "text/tokens.hpp"

namespace pegmachine::pppda {
namespace {

using text::quote;

struct DirectionWord {
  const char* word;
  Direction direction;
  Hat hat;
};

constexpr DirectionWord kDirections[] = {
    {"left", Direction::Left, Hat::None},       {"down", Direction::Down, Hat::None},
    {"up", Direction::Up, Hat::None},           {"right", Direction::Right, Hat::None},
    {"hatleft", Direction::Down, Hat::Left},    {"hatdown", Direction::Down, Hat::Down},
    {"hatright", Direction::Down, Hat::Right},
};

std::string direction_word(const Move& m) {
  for (const auto& d : kDirections)
    if (d.hat == m.hat && (m.hat != Hat::None || d.direction == m.direction)) return d.word;
  return "?";
}

}  // namespace

Machine parse_machine_text(std::string_view source) {
  const auto lines = text::tokenize_lines(source);

  MachineBuilder b;
  bool have_states = false, have_initial = false, have_bottom = false;
  std::size_t last_line = 0;
  for (const auto& [line_no, toks] : lines) {
    last_line = line_no;
    const std::string& head = toks[0].text;
    if (head.empty() || head[0] != '@' || toks[0].quoted) continue;
    auto need = [&, line_no = line_no](std::size_t n) {
      if (toks.size() != n)
        throw SyntaxError(head + " expects " + std::to_string(n - 1) + " argument(s)", line_no,
                          toks[0].column);
    };
    try {
      if (head == "@states") {
        for (std::size_t i = 1; i < toks.size(); ++i) b.state(toks[i].text);
        have_states = true;
      } else if (head == "@final") {
        for (std::size_t i = 1; i < toks.size(); ++i) {
          if (!b.has_state(toks[i].text))
            throw SyntaxError("undeclared state '" + toks[i].text + "'", line_no, toks[i].column);
          b.add_final(toks[i].text);
        }
      } else if (head == "@initial") {
        need(2);
        if (!b.has_state(toks[1].text))
          throw SyntaxError("undeclared state '" + toks[1].text + "'", line_no, toks[1].column);
        b.set_initial(toks[1].text);
        have_initial = true;
      } else if (head == "@bottom") {
        need(2);
        b.set_bottom(toks[1].text);
        have_bottom = true;
      } else if (head == "@stack") {
        for (std::size_t i = 1; i < toks.size(); ++i) b.symbol(toks[i].text);
      } else if (head == "@alphabet") {
        need(2);
        if (!toks[1].quoted) throw SyntaxError("@alphabet expects a string literal", line_no, toks[1].column);
        b.set_alphabet(toks[1].text);
      } else if (head == "@kind") {
        need(2);
        if (toks[1].text != "pppda")
          throw SyntaxError("expected '@kind pppda', found '" + toks[1].text + "'", line_no, toks[1].column);
      } else if (head == "@twoway") {
        need(2);
        if (toks[1].text == "yes") b.set_two_way(true);
        else if (toks[1].text == "no") b.set_two_way(false);
        else throw SyntaxError("@twoway expects yes or no", line_no, toks[1].column);
      } else {
        throw SyntaxError("unknown directive '" + head + "'", line_no, toks[0].column);
      }
    } catch (const SyntaxError&) {
      throw;
    } catch (const ValidationError& e) {
      throw SyntaxError(e.what(), line_no, toks[0].column);
    }
  }
  if (!have_states) throw SyntaxError("missing @states", last_line, 1);
  if (!have_initial) throw SyntaxError("missing @initial", last_line, 1);
  if (!have_bottom) throw SyntaxError("missing @bottom", last_line, 1);

  for (const auto& [line_no, toks] : lines) {
    if (text::is_directive(toks)) continue;
    auto fail = [&, line_no = line_no](const std::string& msg, std::size_t col) {
      throw SyntaxError(msg, line_no, col);
    };
    if (toks.size() != 7 || toks[3].text != "->" || toks[3].quoted)
      fail("expected 'state letter symbol -> state push direction'", toks[0].column);
    for (std::size_t i : {0u, 4u})
      if (!b.has_state(toks[i].text)) fail("undeclared state '" + toks[i].text + "'", toks[i].column);
    Letter letter = 0;
    const text::Token& lt = toks[1];
    if (lt.quoted) {
      if (lt.text.size() != 1) fail("letter literal must be one character", lt.column);
      if (b.alphabet().find(lt.text[0]) == std::string::npos)
        fail("letter '" + lt.text + "' is not in the alphabet", lt.column);
      letter = b.letter(lt.text[0]);
    } else if (lt.text == "<") {
      letter = b.left_end();
    } else if (lt.text == ">") {
      letter = b.right_end();
    } else {
      fail("expected a quoted letter, '<' or '>'", lt.column);
    }
    const DirectionWord* dir = nullptr;
    for (const auto& d : kDirections)
      if (toks[6].text == d.word) dir = &d;
    if (!dir) fail("unknown direction '" + toks[6].text + "'", toks[6].column);

    Move m;
    m.next = b.state(toks[4].text);
    if (toks[5].text != "-") {
      std::string_view rest = toks[5].text;
      while (true) {
        auto comma = rest.find(',');
        std::string_view part = rest.substr(0, comma);
        if (part.empty()) fail("empty symbol in push string", toks[5].column);
        m.push.push_back(b.symbol(part));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
      }
    }
    m.direction = dir->direction;
    m.hat = dir->hat;
    StateId q = b.state(toks[0].text);
    SymbolId z = b.symbol(toks[2].text);
    try {
      b.add(q, letter, z, std::move(m));
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line_no) + ", column " +
                            std::to_string(toks[0].column) + ": " + e.what());
    }
  }
  return b.build();
}

std::string format_machine(const Machine& m) {
  std::ostringstream os;
  os << "@kind pppda\n";
  os << "@alphabet " << quote(m.alphabet()) << '\n';
  os << "@states";
  for (const auto& q : m.states()) os << ' ' << q;
  os << "\n@final";
  for (StateId q : m.finals()) os << ' ' << m.state_name(q);
  os << "\n@initial " << m.state_name(m.initial()) << '\n';
  os << "@bottom " << m.symbol_name(m.bottom()) << '\n';
  os << "@stack";
  for (const auto& z : m.symbols()) os << ' ' << z;
  os << "\n@twoway " << (m.two_way() ? "yes" : "no") << '\n';
  for (const auto& e : m.entries()) {
    std::string letter = e.letter == m.left_end()    ? "<"
                         : e.letter == m.right_end() ? ">"
                                                     : quote(m.letter_name(e.letter));
    os << m.state_name(e.state) << ' ' << letter << ' ' << m.symbol_name(e.symbol) << " -> "
       << m.state_name(e.move.next) << ' ';
    if (e.move.push.empty()) {
      os << '-';
    } else {
      for (std::size_t i = 0; i < e.move.push.size(); ++i)
        os << (i ? "," : "") << m.symbol_name(e.move.push[i]);
    }
    os << ' ' << direction_word(e.move) << '\n';
  }
  return os.str();
}

}  // namespace pegmachine::pppda
