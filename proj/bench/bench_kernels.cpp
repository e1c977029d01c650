// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include "crossratio/kernels.hpp"

using namespace crossratio;
using namespace crossratio::kernels;

namespace {

// Y^2 - x Z^2 - x W^2 over F_p.
FormCoeffs isotropy_coeffs(std::uint32_t p) { return {FqPoly{1}, FqPoly{0, p - 1}, FqPoly{0, p - 1}, {}, {}, {}}; }

const std::vector<P1Code> kFourSet{0, 1, 2, 101};  // {0, 1, 2, inf} over F101
const std::vector<P1Code> kFiveSet{0, 1, 2, 3, 4};

template <auto Kernel>
void BM_Pgl2(benchmark::State& st) {
    const FqArith f(Field::parse("F101"));
    for (auto _ : st) benchmark::DoNotOptimize(Kernel(f, kFiveSet));
}

template <auto Kernel>
void BM_Borel(benchmark::State& st) {
    const FqArith f(Field::parse("F101"));
    for (auto _ : st) benchmark::DoNotOptimize(Kernel(f, kFourSet));
}

template <auto Kernel>
void BM_PointSearch(benchmark::State& st) {
    const auto p = static_cast<std::uint32_t>(st.range(0));
    const auto d = static_cast<unsigned>(st.range(1));
    const FqArith f(Field::parse("F" + std::to_string(p)));
    const auto form = isotropy_coeffs(p);
    for (auto _ : st) benchmark::DoNotOptimize(Kernel(f, form, d));
    st.counters["triples"] = static_cast<double>(triple_count(p, d));
}

}  // namespace

BENCHMARK(BM_Pgl2<pgl2_stabilizer_serial>)->Name("pgl2_stabilizer/F101/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Pgl2<pgl2_stabilizer_parallel>)->Name("pgl2_stabilizer/F101/parallel")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Borel<borel_stabilizer_serial>)->Name("borel_stabilizer/F101/serial")->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Borel<borel_stabilizer_parallel>)->Name("borel_stabilizer/F101/parallel")->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_PointSearch<point_search_serial>)->Name("point_search/serial")->Args({3, 2})->Args({7, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PointSearch<point_search_parallel>)->Name("point_search/parallel")->Args({3, 2})->Args({7, 1})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
