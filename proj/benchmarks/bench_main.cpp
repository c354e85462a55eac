#include <benchmark/benchmark.h>

#include <besselsum/codes.hpp>
#include <besselsum/heat.hpp>
#include <besselsum/lattice_sums.hpp>
#include <besselsum/special_functions.hpp>

using namespace besselsum;

static void BM_BesselScaledTable(benchmark::State& state) {
    const double t = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(bessel_i_scaled_table(t, 200));
}
BENCHMARK(BM_BesselScaledTable)->Arg(1)->Arg(50)->Arg(1000);

static void BM_VerifyIdentity(benchmark::State& state) {
    const Lattice l = new_lattice(IntMatrix{{2, 1}, {0, 3}});
    const auto chi = DirichletCharacterFamily::trivial(2);
    const Shift y = Shift::exact({Rational(1, 3), Rational(-1, 2)});
    SumOptions so;
    so.threads = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(verify_identity(l, chi, {1, -2}, y, {Complex(0.7), Complex(1.3)}, so));
}
BENCHMARK(BM_VerifyIdentity)->Arg(1)->Arg(4);

static void BM_HeatConvolution(benchmark::State& state) {
    const Lattice l = new_lattice(IntMatrix{{1, 1}, {0, 1}});
    for (auto _ : state)
        benchmark::DoNotOptimize(heat_solve_convolution(l, InitialData::delta(2), 2.0, state.range(0)));
}
BENCHMARK(BM_HeatConvolution)->Arg(10)->Arg(30);

static void BM_Cwe(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const LinearCode c = dual_code(code_from_generators(3, n, {IntVector(n, 1)}));
    for (auto _ : state) benchmark::DoNotOptimize(cwe(c));
}
BENCHMARK(BM_Cwe)->Arg(6)->Arg(8);
BENCHMARK_MAIN();
