#include <cstdint>

#include <benchmark/benchmark.h>

#include "pegmachine/cooksim.hpp"
#include "pegmachine/peg.hpp"
#include "pegmachine/pppda.hpp"
#include "pegmachine/translate.hpp"

namespace {

using namespace pegmachine;

const char* const kAnbncn = "S <- &(A \"c\") B C\nA <- \"a\" A \"b\" / \"\"\nB <- \"a\" B / \"a\"\nC <- \"b\" C \"c\" / \"\"\n";

std::string anbncn(std::size_t n) { return std::string(n, 'a') + std::string(n, 'b') + std::string(n, 'c'); }

void BM_Packrat(benchmark::State& state) {
  peg::Grammar g = peg::desugar(peg::parse_grammar_text(kAnbncn));
  std::string w = anbncn(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(peg::interpret_packrat(g, w));
  state.SetComplexityN(state.range(0));
}

void BM_Naive(benchmark::State& state) {
  peg::Grammar g = peg::desugar(peg::parse_grammar_text(kAnbncn));
  std::string w = anbncn(static_cast<std::size_t>(state.range(0)));
  const peg::NodeId body = g.find_rule(g.axiom())->body;
  for (auto _ : state) benchmark::DoNotOptimize(peg::interpret_naive(g, body, w, 0, 1'000'000'000));
  state.SetComplexityN(state.range(0));
}

void BM_DirectBuiltin(benchmark::State& state) {
  pppda::Machine m = pppda::desugar_hat_moves(pppda::builtin_anbncn());
  std::string w = anbncn(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pppda::run_direct(m, w).verdict);
  state.SetComplexityN(state.range(0));
}

void BM_CookBuiltin(benchmark::State& state) {
  pppda::Machine m = pppda::desugar_hat_moves(pppda::builtin_anbncn());
  std::string w = anbncn(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cook::run_linear(m, w).accepted);
  state.SetComplexityN(state.range(0));
}

void BM_CompiledDirect(benchmark::State& state) {
  pppda::Machine m = translate::compile(peg::parse_grammar_text(kAnbncn));
  std::string w = anbncn(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pppda::run_direct(m, w, UINT64_MAX).verdict);
  state.SetComplexityN(state.range(0));
}

void BM_CompiledCook(benchmark::State& state) {
  pppda::Machine m = translate::compile(peg::parse_grammar_text(kAnbncn));
  std::string w = anbncn(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cook::run_linear(m, w).accepted);
  state.SetComplexityN(state.range(0));
}

void BM_LoopDetection(benchmark::State& state) {
  pppda::Machine m = cook::looping_machine("ab");
  std::string w(static_cast<std::size_t>(state.range(0)), 'a');
  for (auto _ : state) benchmark::DoNotOptimize(cook::run_linear(m, w).reason);
  state.SetComplexityN(state.range(0));
}

BENCHMARK(BM_Packrat)->RangeMultiplier(2)->Range(32, 1024)->Complexity();
BENCHMARK(BM_Naive)->RangeMultiplier(2)->Range(32, 256)->Complexity();
BENCHMARK(BM_DirectBuiltin)->RangeMultiplier(2)->Range(32, 1024)->Complexity();
BENCHMARK(BM_CookBuiltin)->RangeMultiplier(2)->Range(32, 1024)->Complexity(benchmark::oN);
BENCHMARK(BM_CompiledDirect)->RangeMultiplier(2)->Range(32, 256)->Complexity();
BENCHMARK(BM_CompiledCook)->RangeMultiplier(2)->Range(32, 256)->Complexity(benchmark::oN);
BENCHMARK(BM_LoopDetection)->RangeMultiplier(10)->Range(10, 10000)->Complexity();

}  // namespace

BENCHMARK_MAIN();
