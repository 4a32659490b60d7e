#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pegmachine/error.hpp"

namespace pegmachine::text {

struct Token {
  std::string text;
  std::size_t column;
  bool quoted = false;
};

inline std::vector<Token> tokenize(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (c == '#') break;
    Token t{{}, i + 1};
    if (c == '"') {
      t.quoted = true;
      ++i;
      while (true) {
        if (i >= line.size()) throw SyntaxError("unterminated string literal", line_no, t.column);
        char d = line[i++];
        if (d == '"') break;
        if (d == '\\') {
          if (i >= line.size()) throw SyntaxError("unterminated escape", line_no, i);
          char e = line[i++];
          switch (e) {
            case 'n': d = '\n'; break;
            case 't': d = '\t'; break;
            case 'r': d = '\r'; break;
            case '\\': d = '\\'; break;
            case '"': d = '"'; break;
            default: throw SyntaxError(std::string("unknown escape '\\") + e + "'", line_no, i - 1);
          }
        }
        t.text += d;
      }
    } else {
      while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') t.text += line[i++];
    }
    out.push_back(std::move(t));
  }
  return out;
}

inline std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
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

/// Nonempty token lists with their 1-based line numbers.
inline std::vector<std::pair<std::size_t, std::vector<Token>>> tokenize_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::vector<Token>>> lines;
  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    auto tokens = tokenize(text.substr(begin, end - begin), line_no);
    if (!tokens.empty()) lines.emplace_back(line_no, std::move(tokens));
    begin = end + 1;
  }
  return lines;
}

inline bool is_directive(const std::vector<Token>& toks) {
  return !toks[0].quoted && !toks[0].text.empty() && toks[0].text[0] == '@';
}

}  // namespace pegmachine::text
