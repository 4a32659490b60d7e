#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pegmachine::testing {

inline std::filesystem::path data_path(std::string_view name) {
  return std::filesystem::path(PEGMACHINE_TEST_DATA) / name;
}

inline std::string read_data(std::string_view name) {
  std::ifstream in(data_path(name), std::ios::binary);
  if (!in) throw std::runtime_error("cannot open test data " + std::string(name));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Language oracles written against the definitions, not the engines.

/// Length of the run of `c` starting at `i`.
inline std::size_t run_of(std::string_view w, std::size_t i, char c) {
  std::size_t k = 0;
  while (i + k < w.size() && w[i + k] == c) ++k;
  return k;
}

/// a^n b^n c^n, n >= 1
inline bool in_anbncn(std::string_view w) {
  std::size_t n = run_of(w, 0, 'a');
  if (n == 0 || w.size() != 3 * n) return false;
  return run_of(w, n, 'b') == n && run_of(w, 2 * n, 'c') == n;
}

/// a^n b^n, n >= 0
inline bool in_anbn(std::string_view w) {
  std::size_t n = run_of(w, 0, 'a');
  return w.size() == 2 * n && run_of(w, n, 'b') == n;
}

/// a^n c^n, n >= 0
inline bool in_ancn(std::string_view w) {
  std::size_t n = run_of(w, 0, 'a');
  return w.size() == 2 * n && run_of(w, n, 'c') == n;
}

/// The language of the example pointer machine: the first pass checks a
/// prefix a^n b^n c (n >= 1); the second pass skips a's at the bottom level
/// and matches b against c like brackets, then needs the right end.
inline bool in_example_machine(std::string_view w) {
  std::size_t n = run_of(w, 0, 'a');
  if (n == 0 || run_of(w, n, 'b') < n || w.size() <= 2 * n || w[2 * n] != 'c') return false;
  std::size_t depth = 0;
  for (char c : w) {
    if (c == 'a' && depth == 0) continue;
    if (c == 'b') ++depth;
    else if (c == 'c' && depth > 0) --depth;
    else return false;
  }
  return depth == 0;
}

inline bool in_anbn_or_ancn(std::string_view w) { return in_anbn(w) || in_ancn(w); }

}  // namespace pegmachine::testing
