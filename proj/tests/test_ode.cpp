#include "voa/ode.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using voa::FormalSolution;
using voa::PoleODE;
using voa::Rational;
using voa::RMatrix;
using voa::RVector;
using voa::TruncSeries;

namespace {

// q/(1 - q) known to order K
PoleODE geometric(int K) {
    std::vector<Rational> c(static_cast<std::size_t>(K), Rational(1));
    c[0] = Rational(0);
    return PoleODE({{TruncSeries("q", 0, K, c)}});
}

PoleODE nilpotent_plus(int K) {
    // A = [[q, 1], [0, q^2]]
    return PoleODE({{TruncSeries::polynomial("q", {Rational(0), Rational(1)}, K),
                     TruncSeries::polynomial("q", {Rational(1)}, K)},
                    {TruncSeries::zero("q", K), TruncSeries::polynomial("q", {Rational(0), Rational(0), Rational(1)}, K)}},
                   true);
}

// Gronwall factor exp(int ||A||/|q| |dq|) along a path inside |q| <= r1
double propagation_factor(const voa::RadiusEstimate& est, const std::vector<std::complex<double>>& pts) {
    double total = 0.0;
    for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
        double lo = std::min(std::abs(pts[s]), std::abs(pts[s + 1]));
        total += est.alpha.to_double() * std::abs(pts[s + 1] - pts[s]) / lo;
    }
    return std::exp(total);
}

}  // namespace

TEST(FormalSolve, ZeroSystemIsConstant) {
    PoleODE ode = PoleODE::constant({{Rational(0), Rational(0)}, {Rational(0), Rational(0)}});
    RVector v = {Rational(2), Rational(-1, 3)};
    FormalSolution s = voa::formal_solve(ode, {{0, v}}, 6);
    EXPECT_EQ(s.modes[0], v);
    for (int n = 1; n <= 6; ++n) EXPECT_EQ(s.modes[static_cast<std::size_t>(n)], RVector(2));
}

TEST(FormalSolve, GeometricSeries) {
    PoleODE ode = geometric(21);
    FormalSolution s = voa::formal_solve(ode, {{0, {Rational(1)}}}, 20);
    for (const auto& m : s.modes) EXPECT_EQ(m, RVector{Rational(1)});
    for (int n = 0; n <= 20; ++n) EXPECT_EQ(voa::recursion_residual(ode, s, n), RVector(1));
}

TEST(FormalSolve, ResonanceDemandsASeed) {
    PoleODE ode = PoleODE::constant({{Rational(2)}});
    EXPECT_EQ(voa::resonance_bound(ode), 2);
    try {
        voa::formal_solve(ode, {}, 4);
        FAIL() << "expected a resonance";
    } catch (const voa::ResonanceError& e) {
        EXPECT_EQ(e.n(), 2);
        ASSERT_EQ(e.kernel().size(), 1u);
        EXPECT_NE(std::string(e.what()).find("n = 2"), std::string::npos);
    }
    FormalSolution s = voa::formal_solve(ode, {{2, {Rational(5)}}}, 4);
    EXPECT_EQ(s.modes[2], RVector{Rational(5)});
    EXPECT_EQ(s.modes[3], RVector{Rational(0)});
}

TEST(FormalSolve, InconsistentSeedIsRejected) {
    PoleODE ode = PoleODE::constant({{Rational(2)}});
    EXPECT_THROW(voa::formal_solve(ode, {{0, {Rational(1)}}}, 3), std::invalid_argument);
    EXPECT_THROW(voa::formal_solve(geometric(3), {{0, {Rational(1)}}}, 5), std::out_of_range);
}

TEST(FormalSolve, RecursionResidualVanishesAndRunsAgree) {
    PoleODE ode = nilpotent_plus(12);
    EXPECT_EQ(voa::resonance_bound(ode), 0);
    std::map<int, RVector> seeds = {{0, {Rational(1), Rational(0)}}};
    FormalSolution a = voa::formal_solve(ode, seeds, 10);
    FormalSolution b = voa::formal_solve(ode, seeds, 10);
    EXPECT_EQ(a.modes, b.modes);
    for (int n = 0; n <= 10; ++n) EXPECT_EQ(voa::recursion_residual(ode, a, n), RVector(2));
    // the first component solves q psi' = q psi: exp(q)
    for (int n = 0; n <= 10; ++n) EXPECT_EQ(a.modes[static_cast<std::size_t>(n)][0], Rational(1) / voa::factorial(n));
}

TEST(RadiusEstimate, ZeroSystem) {
    PoleODE ode = PoleODE::constant({{Rational(0)}});
    auto est = voa::radius_estimate(ode, Rational(1, 2));
    EXPECT_EQ(est.alpha, Rational(0));
    EXPECT_EQ(est.gamma, Rational(1));
    EXPECT_LT(est.r0, est.r1);
    auto s = voa::formal_solve(ode, {{0, {Rational(3)}}}, 10);
    EXPECT_TRUE(voa::growth_check(est, s).pass);
}

TEST(RadiusEstimate, GeometricSeriesBound) {
    PoleODE ode = geometric(31);
    EXPECT_THROW(voa::radius_estimate(ode, Rational(1, 2)), voa::NoMajorantError);
    EXPECT_THROW(voa::radius_estimate(ode, Rational(1, 2), Rational(1, 4)), voa::NoMajorantError);
    auto est = voa::radius_estimate(ode, Rational(1, 2), Rational(1));
    EXPECT_EQ(est.beta, Rational(1));
    EXPECT_EQ(est.gamma, Rational(2));
    EXPECT_EQ(est.r0, Rational(1, 8));
    auto s = voa::formal_solve(ode, {{0, {Rational(1)}}}, 30);
    auto g = voa::growth_check(est, s);
    EXPECT_TRUE(g.pass);
    EXPECT_FALSE(g.violation);
}

TEST(RadiusEstimate, NilpotentBetaFromNeumannSeries) {
    RMatrix N = {{Rational(0), Rational(1)}, {Rational(0), Rational(0)}};
    auto est = voa::radius_estimate(PoleODE::constant(N), Rational(1));
    // n (n - N)^{-1} = 1 + N/n has 1-norm 1 + 1/n, largest at n = 1
    EXPECT_EQ(est.resonance, 0);
    EXPECT_EQ(est.beta, Rational(2));
    EXPECT_EQ(est.alpha, Rational(1));
    EXPECT_EQ(est.gamma, Rational(3));
}

TEST(RadiusEstimate, GrowthCheckCatchesAFakeSolution) {
    PoleODE ode = geometric(11);
    auto est = voa::radius_estimate(ode, Rational(1, 2), Rational(1));
    auto s = voa::formal_solve(ode, {{0, {Rational(1)}}}, 10);
    s.modes[6] = {Rational(1000)};
    auto g = voa::growth_check(est, s);
    EXPECT_FALSE(g.pass);
    EXPECT_EQ(g.violation, 6);
}

TEST(NumericContinue, ZeroSystemTransportsConstants) {
    PoleODE ode = PoleODE::constant({{Rational(0)}});
    auto r = voa::numeric_continue(ode, {{2.0, 1.0}}, {{{0.1, 0.0}, {0.0, 0.3}, {-0.2, -0.1}}, 50});
    EXPECT_EQ(r.value[0], std::complex<double>(2.0, 1.0));
    EXPECT_EQ(r.error, 0.0);
}

TEST(NumericContinue, GeometricClosedForm) {
    voa::MatrixEvaluator A = [](std::complex<double> q) { return voa::CMatrix{{q / (1.0 - q)}}; };
    auto r = voa::numeric_continue(A, {1.0 / 0.9}, {{{0.1, 0.0}, {0.3, 0.0}}, 10000});
    EXPECT_LT(std::abs(r.value[0] - 1.0 / 0.7) / (1.0 / 0.7), 1e-10);
    EXPECT_LT(r.error, 1e-10);
}

TEST(NumericContinue, MonodromyOfASquareRoot) {
    // q d/dq psi = psi/2: psi = q^{1/2} changes sign around the origin
    PoleODE ode = PoleODE::constant({{Rational(1, 2)}});
    std::vector<std::complex<double>> loop;
    for (int k = 0; k <= 64; ++k) loop.push_back(0.5 * std::polar(1.0, 2 * std::numbers::pi * k / 64));
    auto r = voa::numeric_continue(ode, {std::sqrt(0.5)}, {loop, 200});
    EXPECT_LT(std::abs(r.value[0] + std::sqrt(0.5)), 1e-9);
}

TEST(NumericContinue, RejectsBadPaths) {
    PoleODE ode = PoleODE::constant({{Rational(1)}});
    EXPECT_THROW(voa::numeric_continue(ode, {1.0}, {{{-0.1, 0.0}, {0.1, 0.0}}, 10}), std::domain_error);
    EXPECT_THROW(voa::numeric_continue(ode, {1.0}, {{{0.1, 0.0}}, 10}), std::invalid_argument);
    EXPECT_THROW(voa::numeric_continue(ode, {1.0}, {{{0.1, 0.0}, {0.1 + 1e-15, 0.0}}, 1000}), std::underflow_error);
}

TEST(NumericContinue, AgreesWithFormalPartialSums) {
    for (const auto& [ode, alpha, seed] :
         {std::tuple{geometric(41), std::optional<Rational>(Rational(1)), RVector{Rational(1)}},
          std::tuple{nilpotent_plus(41), std::optional<Rational>(), RVector{Rational(1), Rational(0)}}}) {
        int K = 40;
        auto s = voa::formal_solve(ode, {{0, seed}}, K);
        auto est = voa::radius_estimate(ode, Rational(1, 2), alpha);
        auto g = voa::growth_check(est, s);
        ASSERT_TRUE(g.pass);
        Rational qa(1, 100), qb(1, 20);
        RVector start = s.eval(qa), end = s.eval(qb);
        voa::CVector psi_a;
        for (const auto& x : start) psi_a.emplace_back(x.to_double());
        std::vector<std::complex<double>> pts = {{0.01, 0.0}, {0.03, 0.02}, {0.05, 0.0}};
        auto r = voa::numeric_continue(ode, psi_a, {pts, 2000});
        double budget = tail_bound(est, g, K, 0.05) + tail_bound(est, g, K, 0.01) * propagation_factor(est, pts) +
                        r.error + 1e-14;
        for (std::size_t i = 0; i < end.size(); ++i) {
            double diff = std::abs(r.value[i] - end[i].to_double());
            EXPECT_LE(diff, budget);
            if (!end[i].is_zero()) EXPECT_LT(diff / std::abs(end[i].to_double()), 1e-8);
        }
    }
}
