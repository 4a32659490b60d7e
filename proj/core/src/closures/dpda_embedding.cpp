#include "dpda_embedding.hpp"

namespace pegmachine::closures {

using pppda::Direction;
using pppda::Hat;
using pppda::Letter;

void DpdaEmbedding::simulate(const std::string& from, Letter a, const std::string& top,
                             const std::string& target, const std::vector<std::string>& push,
                             bool consume) {
  const Direction dir = consume ? Direction::Right : Direction::Down;
  for (const auto& s : push) b_.symbol(s);
  if (push.empty()) {
    b_.pop_move(from, a, top, target, dir);
    return;
  }
  if (push.back() == top) {
    if (push.size() == 1) {
      b_.hat_move(from, a, top, target, consume ? Hat::Right : Hat::Down);
    } else {
      b_.push_move(from, a, top, target, {push.begin(), push.end() - 1}, dir);
    }
    return;
  }
  MidKey key{target, push, consume};
  auto it = mids_.find(key);
  if (it == mids_.end()) {
    std::string name = "mid" + std::to_string(order_.size());
    while (b_.has_state(name)) name += '\'';
    b_.state(name);
    it = mids_.emplace(key, name).first;
    order_.push_back(key);
  }
  b_.pop_move(from, a, top, it->second, Direction::Down);
}

void DpdaEmbedding::finish() {
  const std::vector<std::string> symbols = b_.symbol_names();
  for (const auto& key : order_) {
    const auto& [target, push, consume] = key;
    const std::string& mid = mids_.at(key);
    const Letter last = consume ? b_.right_end() - 1 : b_.right_end();
    for (Letter sigma = 1; sigma <= last; ++sigma)
      for (const auto& y : symbols)
        b_.push_move(mid, sigma, y, target, push, consume ? Direction::Right : Direction::Down);
  }
}

}  // namespace pegmachine::closures
