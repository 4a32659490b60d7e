#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "pegmachine/pppda.hpp"

namespace pegmachine::closures {

// Emits pointer-machine moves that replace the top stack symbol the way a
// classical DPDA move does.
class DpdaEmbedding {
 public:
  explicit DpdaEmbedding(pppda::MachineBuilder& b) : b_(b) {}

  // From `from` reading `a` with `top` on the stack: replace `top` by
  // `push` (top first) and enter `target`, consuming `a` when `consume`.
  void simulate(const std::string& from, pppda::Letter a, const std::string& top,
                const std::string& target, const std::vector<std::string>& push, bool consume);

  // Adds the moves of the intermediate states. Call once every stack
  // symbol of the machine exists.
  void finish();

 private:
  using MidKey = std::tuple<std::string, std::vector<std::string>, bool>;
  pppda::MachineBuilder& b_;
  std::map<MidKey, std::string> mids_;
  std::vector<MidKey> order_;
};

}  // namespace pegmachine::closures
