#include <benchmark/benchmark.h>

#include "coxtop/chars.hpp"
#include "coxtop/descent.hpp"
#include "coxtop/orlik_solomon.hpp"
#include "coxtop/packing.hpp"
#include "coxtop/verify.hpp"

using namespace coxtop;

namespace {

const char* kGroups[] = {"A4", "B4", "D4", "H3", "F4", "H4"};

GroupPtr group(int i) { return CoxeterGroup::build(CoxeterType::parse(kGroups[i])); }

void BM_BuildGroup(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(group(st.range(0)));
  st.SetLabel(kGroups[st.range(0)]);
}
BENCHMARK(BM_BuildGroup)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

void BM_RhoTop(benchmark::State& st) {
  for (auto _ : st) {
    st.PauseTiming();
    auto g = group(st.range(0));
    st.ResumeTiming();
    benchmark::DoNotOptimize(rho_top(g));
  }
  st.SetLabel(kGroups[st.range(0)]);
}
BENCHMARK(BM_RhoTop)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

void BM_OmegaTop(benchmark::State& st) {
  for (auto _ : st) {
    st.PauseTiming();
    auto g = group(st.range(0));
    st.ResumeTiming();
    benchmark::DoNotOptimize(omega_character(g, g->rank()));
  }
  st.SetLabel(kGroups[st.range(0)]);
}
BENCHMARK(BM_OmegaTop)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

void BM_Nbc(benchmark::State& st) {
  auto arr = arrangement_of_group(group(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(nbc(arr));
  st.SetLabel(kGroups[st.range(0)]);
}
BENCHMARK(BM_Nbc)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

void BM_CharacterTable(benchmark::State& st) {
  for (auto _ : st) {
    st.PauseTiming();
    auto g = group(st.range(0));
    st.ResumeTiming();
    benchmark::DoNotOptimize(character_table(g));
  }
  st.SetLabel(kGroups[st.range(0)]);
}
BENCHMARK(BM_CharacterTable)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

PackingProblem problem_of(const Certificate& c) {
  PackingProblem p;
  p.goal.assign(c.goal.begin(), c.goal.end());
  for (const auto& cls : c.classes) {
    CandidateList l;
    int src = 0;
    for (const auto& cand : cls.candidates) l.add(PackVector(cand.multiplicities.begin(), cand.multiplicities.end()), src++);
    p.lists.push_back(l);
  }
  return p;
}

void BM_Packing(benchmark::State& st) {
  auto p = problem_of(verify_conjecture_b(group(st.range(0))));
  const auto strategy = static_cast<PackingStrategy>(st.range(1));
  long vertices = 0;
  for (auto _ : st) vertices = exact_packings(p, strategy).stats.vertices;
  st.counters["vertices"] = static_cast<double>(vertices);
  st.SetLabel(std::string(kGroups[st.range(0)]) + " " + to_string(strategy));
}
BENCHMARK(BM_Packing)
    ->ArgsProduct({{1, 4, 5},
                   {static_cast<int>(PackingStrategy::Given), static_cast<int>(PackingStrategy::AscendingSize),
                    static_cast<int>(PackingStrategy::DescendingSize)}})
    ->Unit(benchmark::kMicrosecond);

void BM_VerifyB(benchmark::State& st) {
  for (auto _ : st) {
    st.PauseTiming();
    auto g = group(st.range(0));
    st.ResumeTiming();
    benchmark::DoNotOptimize(verify_conjecture_b(g).verified());
  }
  st.SetLabel(kGroups[st.range(0)]);
}
BENCHMARK(BM_VerifyB)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
