#include <cstdio>

#include "pegmachine/translate.hpp"

namespace pegmachine::translate {
namespace {

// Machine names may not contain whitespace, commas or backquotes, and ':'
// separates name components.
std::string mangle(std::string_view name) {
  std::string out;
  for (char c : name) {
    auto u = static_cast<unsigned char>(c);
    if (u <= ' ' || u >= 0x7f || c == ',' || c == '`' || c == ':' || c == '%') {
      char buf[4];
      std::snprintf(buf, sizeof buf, "%%%02X", u);
      out += buf;
    } else {
      out += c;
    }
  }
  return out;
}

}  // namespace

std::string PegStateName::str() const {
  switch (kind) {
    case Kind::MainWork: return "peg:q";
    case Kind::Initial: return "peg:q0";
    case Kind::Final: return "peg:f";
    case Kind::Signed: return "peg:" + mangle(nonterminal) + (positive ? "+" : "-");
    case Kind::Aux:
      return "peg:" + mangle(nonterminal) + ":" + std::to_string(slot) + (positive ? "" : "-");
  }
  return {};
}

std::string symbol_name(std::string_view nonterminal, int slot) {
  std::string out = "sym:" + mangle(nonterminal);
  if (slot > 0) out += ":" + std::to_string(slot);
  return out;
}

std::string ExtractedNonterminal::str() const {
  const char* tag = "";
  switch (kind) {
    case Kind::Axiom: return "S";
    case Kind::PopDown: tag = "dn"; break;
    case Kind::PopUp: tag = "up"; break;
    case Kind::Bar: tag = "bar"; break;
    case Kind::Either: tag = "ud"; break;
  }
  return "[" + q + "," + z + "," + p + "," + tag + "]";
}

std::vector<std::string> all_words(std::string_view alphabet, std::size_t max_length) {
  std::vector<std::string> out{""};
  std::size_t layer_begin = 0;
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::size_t layer_end = out.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i)
      for (char c : alphabet) out.push_back(out[i] + c);
    layer_begin = layer_end;
  }
  return out;
}

}  // namespace pegmachine::translate
