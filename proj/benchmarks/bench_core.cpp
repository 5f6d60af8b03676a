#include "voa/coord_change.hpp"
#include "voa/models.hpp"
#include "voa/ode.hpp"
#include "voa/schwarzian.hpp"
#include "voa/sewing.hpp"

#include <benchmark/benchmark.h>

using voa::GradedVector;
using voa::Label;
using voa::Rational;
using voa::TruncSeries;

namespace {

// A fresh model per iteration, so the mode caches start empty.
void BM_HeisenbergCharacter(benchmark::State& state) {
    int cap = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto heis = voa::heisenberg_model();
        voa::FockModule F(*heis, Rational(1, 2));
        benchmark::DoNotOptimize(voa::torus_character(F, heis->conformal_vector(), cap));
    }
}
BENCHMARK(BM_HeisenbergCharacter)->Arg(4)->Arg(8)->Arg(12);

void BM_VirasoroModeMatrix(benchmark::State& state) {
    int cap = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto vir = voa::virasoro_model(Rational(1, 2));
        voa::VirasoroModule M(*vir, Rational(1, 16), false);
        benchmark::DoNotOptimize(voa::mode_matrix(M, vir->conformal_vector(), 1, cap));
    }
}
BENCHMARK(BM_VirasoroModeMatrix)->Arg(4)->Arg(6)->Arg(8);

void BM_CoordinateChange(benchmark::State& state) {
    int cap = static_cast<int>(state.range(0));
    TruncSeries rho = TruncSeries::polynomial("z", {Rational(0), Rational(2), Rational(-1, 3), Rational(1, 2)}, cap + 2);
    voa::CoordChange u(rho);
    for (auto _ : state) {
        auto heis = voa::heisenberg_model();
        const voa::Module& V = heis->adjoint();
        for (int n = 0; n <= cap; ++n)
            for (const Label& l : V.basis(n)) benchmark::DoNotOptimize(voa::U_apply(u, GradedVector(l), V));
    }
}
BENCHMARK(BM_CoordinateChange)->Arg(4)->Arg(6);

void BM_SeriesCompose(benchmark::State& state) {
    int order = static_cast<int>(state.range(0));
    TruncSeries f = TruncSeries::polynomial("z", {Rational(0), Rational(1), Rational(1, 2), Rational(-2, 3)}, order);
    TruncSeries g = voa::exp_minus_one(Rational(1, 3), order);
    for (auto _ : state) benchmark::DoNotOptimize(voa::series_compose(f, g));
}
BENCHMARK(BM_SeriesCompose)->Arg(8)->Arg(16)->Arg(32);

void BM_Uniformize(benchmark::State& state) {
    int order = static_cast<int>(state.range(0));
    TruncSeries Q = TruncSeries::polynomial("z", {Rational(1), Rational(-1, 2), Rational(3)}, order);
    for (auto _ : state) benchmark::DoNotOptimize(voa::uniformize(Q));
}
BENCHMARK(BM_Uniformize)->Arg(8)->Arg(16);

voa::PoleODE geometric(int K) {
    std::vector<Rational> c(static_cast<std::size_t>(K), Rational(1));
    c[0] = Rational(0);
    return voa::PoleODE({{TruncSeries("q", 0, K, c)}});
}

void BM_FormalSolve(benchmark::State& state) {
    int K = static_cast<int>(state.range(0));
    voa::PoleODE ode = geometric(K + 1);
    for (auto _ : state) benchmark::DoNotOptimize(voa::formal_solve(ode, {{0, {Rational(1)}}}, K));
}
BENCHMARK(BM_FormalSolve)->Arg(40)->Arg(160);

void BM_NumericContinue(benchmark::State& state) {
    voa::PoleODE ode = geometric(41);
    voa::NumericPath path{{{0.1, 0.0}, {0.25, 0.1}}, static_cast<int>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(voa::numeric_continue(ode, {1.0 / 0.9}, path));
}
BENCHMARK(BM_NumericContinue)->Arg(500)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
