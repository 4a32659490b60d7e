#include <cctype>
#include <map>
#include <sstream>

#include "pegmachine/error.hpp"
#include "pegmachine/peg.hpp"

namespace pegmachine::peg {
namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

struct Reference {
  std::size_t line;
  std::size_t column;
};

// Parses one line at a time; `pos_` indexes into `line_`.
class LineParser {
 public:
  LineParser(Grammar& grammar, std::string_view line, std::size_t line_no,
             std::map<std::string, Reference>& refs)
      : g_(grammar), line_(line), line_no_(line_no), refs_(refs) {}

  void parse_line(std::optional<std::string>& start, bool& any_rule) {
    skip_ws();
    if (at_end()) return;
    if (peek() == '@') {
      std::string directive = read_directive();
      skip_ws();
      if (directive == "start") {
        start = read_name();
      } else if (directive == "alphabet") {
        std::string letters = read_string();
        g_.declare_letters(letters);
      } else {
        fail("unknown directive '@" + directive + "'");
      }
      expect_end();
      return;
    }
    std::size_t name_col = column();
    std::string name = read_name();
    skip_ws();
    if (!consume("<-")) fail("expected '<-' after rule name");
    NodeId body = parse_choice();
    expect_end();
    try {
      g_.add_rule(std::move(name), body);
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line_no_) + ", column " +
                            std::to_string(name_col) + ": " + e.what());
    }
    any_rule = true;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw SyntaxError(message, line_no_, column());
  }

  std::size_t column() const { return pos_ + 1; }
  bool at_end() const { return pos_ >= line_.size() || line_[pos_] == '#'; }
  char peek() const { return line_[pos_]; }

  void skip_ws() {
    while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t' || line_[pos_] == '\r'))
      ++pos_;
  }

  bool consume(std::string_view token) {
    if (line_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect_end() {
    skip_ws();
    if (!at_end()) fail(std::string("unexpected '") + peek() + "'");
  }

  std::string read_directive() {
    ++pos_;
    std::string out;
    while (pos_ < line_.size() && is_ident_char(line_[pos_])) out += line_[pos_++];
    if (out.empty()) fail("expected directive name after '@'");
    return out;
  }

  bool at_name() const {
    return pos_ < line_.size() && (is_ident_start(line_[pos_]) || line_[pos_] == '`');
  }

  std::string read_name() {
    if (pos_ >= line_.size()) fail("expected a nonterminal name");
    if (line_[pos_] == '`') {
      std::size_t close = line_.find('`', pos_ + 1);
      if (close == std::string_view::npos) fail("unterminated quoted name");
      std::string out(line_.substr(pos_ + 1, close - pos_ - 1));
      if (out.empty()) fail("empty quoted name");
      pos_ = close + 1;
      return out;
    }
    if (!is_ident_start(line_[pos_])) fail("expected a nonterminal name");
    std::string out;
    while (pos_ < line_.size() && is_ident_char(line_[pos_])) out += line_[pos_++];
    return out;
  }

  std::string read_string() {
    if (pos_ >= line_.size() || line_[pos_] != '"') fail("expected a string literal");
    ++pos_;
    std::string out;
    while (true) {
      if (pos_ >= line_.size()) fail("unterminated string literal");
      char c = line_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (pos_ >= line_.size()) fail("unterminated escape");
        char e = line_[pos_++];
        switch (e) {
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          case 'r': c = '\r'; break;
          case '\\': c = '\\'; break;
          case '"': c = '"'; break;
          default: fail(std::string("unknown escape '\\") + e + "'");
        }
      }
      out += c;
    }
    return out;
  }

  NodeId parse_choice() {
    std::vector<NodeId> alternatives{parse_sequence()};
    skip_ws();
    while (!at_end() && peek() == '/') {
      ++pos_;
      alternatives.push_back(parse_sequence());
      skip_ws();
    }
    return g_.choice_of(alternatives);
  }

  bool at_prefix_start() {
    skip_ws();
    if (at_end()) return false;
    char c = peek();
    return c == '!' || c == '&' || c == '"' || c == '.' || c == '(' || at_name();
  }

  NodeId parse_sequence() {
    std::vector<NodeId> items;
    while (at_prefix_start()) items.push_back(parse_prefix());
    if (items.empty()) fail("expected an expression");
    return g_.sequence_of(items);
  }

  NodeId parse_prefix() {
    skip_ws();
    if (peek() == '!') {
      ++pos_;
      return g_.negate(parse_prefix());
    }
    if (peek() == '&') {
      ++pos_;
      return g_.and_predicate(parse_prefix());
    }
    return parse_suffix();
  }

  NodeId parse_suffix() {
    NodeId e = parse_primary();
    while (pos_ < line_.size()) {
      char c = line_[pos_];
      if (c == '*') e = g_.star(e);
      else if (c == '+') e = g_.plus(e);
      else if (c == '?') e = g_.option(e);
      else break;
      ++pos_;
    }
    return e;
  }

  NodeId parse_primary() {
    skip_ws();
    if (at_end()) fail("expected an expression");
    char c = peek();
    if (c == '(') {
      ++pos_;
      NodeId inner = parse_choice();
      skip_ws();
      if (at_end() || peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == '.') {
      ++pos_;
      return g_.any_char();
    }
    if (c == '"') {
      std::string s = read_string();
      if (s.empty()) return g_.empty();
      std::vector<NodeId> letters;
      for (char l : s) letters.push_back(g_.terminal(l));
      return g_.sequence_of(letters);
    }
    std::size_t col = column();
    std::string name = read_name();
    refs_.try_emplace(name, Reference{line_no_, col});
    return g_.nonterminal(std::move(name));
  }

  Grammar& g_;
  std::string_view line_;
  std::size_t line_no_;
  std::map<std::string, Reference>& refs_;
  std::size_t pos_ = 0;
};

bool is_plain_identifier(std::string_view name) {
  if (name.empty() || !is_ident_start(name.front())) return false;
  for (char c : name)
    if (!is_ident_char(c)) return false;
  return true;
}

std::string quote_letters(std::string_view letters) {
  std::string out = "\"";
  for (char c : letters) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out + '"';
}

// Precedence levels, loosest first.
enum Level { kChoice = 0, kSequence = 1, kPrefix = 2, kSuffix = 3 };

void format_node(const Grammar& g, NodeId id, int context, std::string& out) {
  const Node& n = g.node(id);
  auto wrap = [&](int level, auto&& body) {
    bool parens = level < context;
    if (parens) out += '(';
    body();
    if (parens) out += ')';
  };
  switch (n.kind) {
    case ExprKind::Empty: out += "\"\""; break;
    case ExprKind::Terminal: out += quote_letters(std::string_view(&n.letter, 1)); break;
    case ExprKind::Nonterminal: out += format_name(n.name); break;
    case ExprKind::AnyChar: out += '.'; break;
    case ExprKind::Fail: wrap(kPrefix, [&] { out += "!\"\""; }); break;
    case ExprKind::Choice:
      wrap(kChoice, [&] {
        format_node(g, n.left, kSequence, out);
        out += " / ";
        format_node(g, n.right, kChoice, out);
      });
      break;
    case ExprKind::Sequence:
      wrap(kSequence, [&] {
        format_node(g, n.left, kPrefix, out);
        out += ' ';
        format_node(g, n.right, kSequence, out);
      });
      break;
    case ExprKind::Not:
    case ExprKind::And:
      wrap(kPrefix, [&] {
        out += n.kind == ExprKind::Not ? '!' : '&';
        format_node(g, n.left, kPrefix, out);
      });
      break;
    case ExprKind::Star:
    case ExprKind::Plus:
    case ExprKind::Option:
      wrap(kSuffix, [&] {
        format_node(g, n.left, kSuffix, out);
        out += n.kind == ExprKind::Star ? '*' : n.kind == ExprKind::Plus ? '+' : '?';
      });
      break;
  }
}

}  // namespace

Grammar parse_grammar_text(std::string_view text) {
  Grammar g;
  std::map<std::string, Reference> refs;
  std::optional<std::string> start;
  bool any_rule = false;
  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    LineParser(g, text.substr(begin, end - begin), line_no, refs).parse_line(start, any_rule);
    begin = end + 1;
  }
  if (!any_rule) throw SyntaxError("grammar has no rules", line_no, 1);
  for (const auto& [name, where] : refs) {
    if (!g.find_rule(name))
      throw ValidationError("line " + std::to_string(where.line) + ", column " +
                            std::to_string(where.column) + ": undefined nonterminal '" + name + "'");
  }
  if (start) {
    if (!g.find_rule(*start)) throw ValidationError("@start names undefined nonterminal '" + *start + "'");
    g.set_axiom(*start);
  }
  return g;
}

std::string format_name(std::string_view name) {
  if (is_plain_identifier(name)) return std::string(name);
  return "`" + std::string(name) + "`";
}

std::string format_expression(const Grammar& grammar, NodeId id) {
  std::string out;
  format_node(grammar, id, kChoice, out);
  return out;
}

std::string format_grammar(const Grammar& grammar) {
  std::ostringstream os;
  os << "@alphabet " << quote_letters(grammar.alphabet()) << '\n';
  os << "@start " << format_name(grammar.axiom()) << '\n';
  for (const auto& rule : grammar.rules())
    os << format_name(rule.name) << " <- " << format_expression(grammar, rule.body) << '\n';
  return os.str();
}

}  // namespace pegmachine::peg
