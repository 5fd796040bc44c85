#include <benchmark/benchmark.h>

#include <sstream>
#include <string>

#include "wupd/analysis.hpp"
#include "wupd/difftest.hpp"
#include "wupd/equiv.hpp"
#include "wupd/interp.hpp"
#include "wupd/parser.hpp"
#include "wupd/typecheck.hpp"

namespace {

std::string chain_source(int n) {
  std::ostringstream ss;
  ss << "long a; long b; long c;\n";
  ss << "a := 1; b := 2; c := 3;\n";
  for (int i = 0; i < n; ++i) ss << "a := a + b; b := b + c; c := a - b;\n";
  ss << "output a + b + c;\n";
  return ss.str();
}

const std::string kLoopSource =
    "long n; long acc;\n"
    "input n; acc := 0;\n"
    "while (n > 0) { acc := acc + n; n := n - 1; }\n"
    "output acc;\n";

void BM_Parse(benchmark::State& state) {
  std::string src = chain_source(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto p = wupd::parse_program(src);
    benchmark::DoNotOptimize(p.entry.size());
  }
}
BENCHMARK(BM_Parse)->Arg(16)->Arg(128);

void BM_Typecheck(benchmark::State& state) {
  auto p = wupd::parse_program(chain_source(static_cast<int>(state.range(0))));
  for (auto _ : state) {
    auto env = wupd::typecheck(p);
    benchmark::DoNotOptimize(env.get());
  }
}
BENCHMARK(BM_Typecheck)->Arg(16)->Arg(128);

void BM_RunLoop(benchmark::State& state) {
  auto p = wupd::parse_program(kLoopSource);
  auto env = wupd::typecheck(p);
  std::vector<int64_t> inputs{state.range(0)};
  for (auto _ : state) {
    auto r = wupd::run(p, env, inputs, 1 << 22);
    benchmark::DoNotOptimize(r.steps);
  }
}
BENCHMARK(BM_RunLoop)->Arg(100)->Arg(10000);

void BM_ImportedVars(benchmark::State& state) {
  auto p = wupd::parse_program(chain_source(static_cast<int>(state.range(0))));
  wupd::VarSet x{"a"};
  for (auto _ : state) {
    auto s = wupd::imported_vars(p.entry, x);
    benchmark::DoNotOptimize(s.size());
  }
}
BENCHMARK(BM_ImportedVars)->Arg(16)->Arg(128);

void BM_BehavioralCheck(benchmark::State& state) {
  auto p1 = wupd::parse_program(chain_source(static_cast<int>(state.range(0))));
  auto p2 = wupd::mutate_pair(p1, wupd::MutKind::Reorder, 3);
  for (auto _ : state) {
    auto v = wupd::check_behavioral(p1, p2);
    benchmark::DoNotOptimize(v.accepted);
  }
}
BENCHMARK(BM_BehavioralCheck)->Arg(8)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
