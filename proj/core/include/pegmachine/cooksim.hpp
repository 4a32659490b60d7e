#pragma once

// Linear-time simulation of two-way pointer pushdown automata by memoizing
// the terminator of every surface configuration.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "pegmachine/pppda.hpp"

namespace pegmachine::cook {

/// State, top symbol, head position and the top symbol's push origin.
struct SurfaceConfig {
  pppda::StateId state = 0;
  pppda::SymbolId symbol = 0;
  std::size_t head = 0;
  std::size_t origin = 0;
  bool operator==(const SurfaceConfig&) const = default;
};

struct TableEntry {
  enum class Status : std::uint8_t { Unvisited, InProgress, Done, DoneNoTerminator };
  Status status = Status::Unvisited;
  SurfaceConfig terminator;
};

struct TerminatorResult {
  enum class Kind : std::uint8_t { Done, NoTerminator, LoopDetected };
  Kind kind = Kind::NoTerminator;
  SurfaceConfig terminator;
  /// The configuration found in progress, for LoopDetected.
  SurfaceConfig loop_at;
};

enum class RejectReason : std::uint8_t { None, Loop, Stuck, NonFinal, NotAtRightEnd };
std::string to_string(RejectReason r);

struct LinearResult {
  bool accepted = false;
  RejectReason reason = RejectReason::None;
  std::uint64_t ops = 0;
  std::size_t table_size = 0;
  std::optional<SurfaceConfig> loop_at;
};

/// Terminator table for one machine and one word.
class Simulator {
 public:
  /// Throws ValidationError on hat moves or letters outside the alphabet.
  Simulator(const pppda::Machine& m, std::string_view word);

  TerminatorResult terminator(const SurfaceConfig& c);
  LinearResult run();

  /// Table operations (lookups and writes) so far.
  std::uint64_t ops() const noexcept { return ops_; }
  std::size_t table_size() const noexcept { return table_.size(); }
  TableEntry entry(const SurfaceConfig& c) const;

 private:
  std::uint64_t key(const SurfaceConfig& c) const;
  void write(const SurfaceConfig& c, TableEntry e);

  const pppda::Machine& m_;
  std::string_view word_;
  std::unordered_map<std::uint64_t, TableEntry> table_;
  std::uint64_t ops_ = 0;
};

/// Runs the linear-time simulation from the initial configuration.
LinearResult run_linear(const pppda::Machine& m, std::string_view word);

struct WorkReport {
  std::uint64_t ops = 0;
  std::uint64_t bound = 0;
  bool within_bound() const noexcept { return ops <= bound; }
};

inline constexpr std::uint64_t kWorkConstant = 4;

/// ops against 2 * |Q| * |Gamma| * (n+2) * kWorkConstant.
WorkReport work_bound_check(const pppda::Machine& m, std::string_view word);

/// A machine that pushes and pops forever on every input.
pppda::Machine looping_machine(std::string_view alphabet);

}  // namespace pegmachine::cook
