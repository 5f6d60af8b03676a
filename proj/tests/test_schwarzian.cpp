#include "voa/schwarzian.hpp"

#include <gtest/gtest.h>

#include <random>

using voa::CoordChange;
using voa::Rational;
using voa::TruncSeries;

namespace {

TruncSeries poly(std::vector<Rational> p, int order) { return TruncSeries::polynomial("z", p, order); }

Rational random_rational(std::mt19937_64& rng, int span = 4) {
    std::uniform_int_distribution<int> num(-span, span), den(1, span);
    return Rational(num(rng), den(rng));
}

Rational random_nonzero(std::mt19937_64& rng) {
    Rational r;
    while (r.is_zero()) r = random_rational(rng);
    return r;
}

// a1 z + ... + a_deg z^deg with a1 != 0
TruncSeries random_coordinate(std::mt19937_64& rng, int deg, int order) {
    std::vector<Rational> p = {Rational(0), random_nonzero(rng)};
    for (int i = 2; i <= deg; ++i) p.push_back(random_rational(rng));
    return poly(p, order);
}

bool is_zero_to_order(const TruncSeries& s) {
    for (int e = s.floor(); e < s.order(); ++e)
        if (!s.coeff(e).is_zero()) return false;
    return true;
}

// tan(a z)/a = sin(az)/(a cos(az)) by series division
TruncSeries tan_over_a(const Rational& a, int order) {
    std::vector<Rational> s(static_cast<std::size_t>(order)), c(static_cast<std::size_t>(order));
    for (int n = 0; n < order; ++n) {
        Rational t = voa::pow(a, n) / voa::factorial(n);
        if (n % 4 == 1) s[static_cast<std::size_t>(n)] = t;
        if (n % 4 == 3) s[static_cast<std::size_t>(n)] = -t;
        if (n % 4 == 0) c[static_cast<std::size_t>(n)] = t;
        if (n % 4 == 2) c[static_cast<std::size_t>(n)] = -t;
    }
    TruncSeries sin("z", 0, order, s), cos("z", 0, order, c);
    return (sin / cos).scaled(Rational(1) / a);
}

}  // namespace

TEST(Schwarzian, CubicPerturbation) {
    TruncSeries s = voa::schwarzian(poly({0, 1, 0, 1}, 9));
    EXPECT_EQ(s.order(), 6);
    EXPECT_EQ(s, poly({6, 0, -72, 0, 378, 0}, 6));
}

TEST(Schwarzian, QuadraticPerturbation) {
    TruncSeries s = voa::schwarzian(poly({0, 1, 1}, 6));
    EXPECT_EQ(s, poly({-6, 24, -72}, 3));
}

TEST(Schwarzian, ExponentialIsConstant) {
    for (int i = 1; i <= 10; ++i) {
        Rational a(i % 2 ? i : -i, 3);
        TruncSeries s = voa::schwarzian(voa::exp_minus_one(a, 12));
        EXPECT_EQ(s, TruncSeries::constant("z", -a * a / Rational(2), 9)) << a.str();
    }
}

TEST(Schwarzian, TwoPiSquaredInstance) {
    EXPECT_EQ(voa::exponential_schwarzian_pi_squared(Rational(2)), Rational(2));
}

TEST(Schwarzian, TangentHasConstantSchwarzian) {
    Rational a(3, 2);
    TruncSeries s = voa::schwarzian(tan_over_a(a, 12));
    EXPECT_EQ(s, TruncSeries::constant("z", Rational(2) * a * a, 9));
}

TEST(Schwarzian, RejectsCriticalPoint) {
    EXPECT_THROW(voa::schwarzian(poly({0, 0, 1}, 6)), std::domain_error);
}

TEST(Schwarzian, MobiusMapsAreKilled) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 30; ++i) {
        Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng),
                 d = random_nonzero(rng);
        if ((a * d - b * c).is_zero()) continue;
        EXPECT_TRUE(is_zero_to_order(voa::schwarzian(voa::mobius_series(a, b, c, d, 10))));
    }
}

TEST(Schwarzian, MobiusPostCompositionInvariance) {
    std::mt19937_64 rng(12);
    int checked = 0;
    while (checked < 30) {
        TruncSeries f = random_coordinate(rng, 5, 8);
        Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng),
                 d = random_nonzero(rng);
        if ((a * d - b * c).is_zero()) continue;
        // c f(0) + d = d != 0, so the quotient is a power series
        TruncSeries g = voa::mobius_after(a, b, c, d, f);
        TruncSeries sf = voa::schwarzian(f), sg = voa::schwarzian(g);
        EXPECT_TRUE(voa::agree_to(sf, sg, std::min(sf.order(), sg.order())));
        ++checked;
    }
}

TEST(Schwarzian, ChainRuleExample) {
    TruncSeries f = poly({0, 1, 1}, 8);
    TruncSeries g = poly({0, 1}, 8) / poly({1, -1}, 8);
    auto r = voa::cocycle_check(f, g);
    EXPECT_TRUE(r.chain_rule);
    EXPECT_TRUE(r.antisymmetry);
    EXPECT_GE(r.chain_lhs.order(), 5);
}

TEST(Schwarzian, RandomCocycles) {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 30; ++i) {
        auto r = voa::cocycle_check(random_coordinate(rng, 4, 9), random_coordinate(rng, 4, 9));
        EXPECT_TRUE(r.chain_rule);
        EXPECT_TRUE(r.antisymmetry);
    }
}

TEST(Schwarzian, RelativeSchwarzianOfSelfVanishes) {
    TruncSeries f = poly({0, 2, 1, -1}, 9);
    EXPECT_TRUE(is_zero_to_order(voa::relative_schwarzian(f, f)));
}

TEST(Schwarzian, TripleCocycleVanishes) {
    std::mt19937_64 rng(14);
    for (int i = 0; i < 20; ++i) {
        TruncSeries t = voa::triple_cocycle(random_coordinate(rng, 4, 9), random_coordinate(rng, 4, 9),
                                            random_coordinate(rng, 4, 9));
        EXPECT_GE(t.order(), 3);
        EXPECT_TRUE(is_zero_to_order(t));
    }
}

TEST(Schwarzian, UniformizeZeroGivesIdentity) {
    TruncSeries f = voa::uniformize(TruncSeries::zero("z", 8));
    EXPECT_EQ(f, poly({0, 1}, 10));
}

TEST(Schwarzian, UniformizeConstantMatchesTangent) {
    Rational a(1, 3);
    TruncSeries f = voa::uniformize(TruncSeries::constant("z", Rational(2) * a * a, 10));
    EXPECT_EQ(f, tan_over_a(a, 12));
}

TEST(Schwarzian, UniformizeRecoversCubicUpToMobius) {
    TruncSeries target = poly({0, 1, 0, 1}, 12);
    TruncSeries f = voa::uniformize(voa::schwarzian(target));
    TruncSeries rel = voa::relative_schwarzian(f, target);
    EXPECT_GE(rel.order(), 3);
    EXPECT_TRUE(is_zero_to_order(rel));
}

TEST(Schwarzian, UniformizeRoundTrip) {
    std::mt19937_64 rng(15);
    for (int i = 0; i < 20; ++i) {
        std::vector<Rational> q;
        for (int k = 0; k <= 4; ++k) q.push_back(random_rational(rng));
        TruncSeries Q = poly(q, 9);
        TruncSeries s = voa::schwarzian(voa::uniformize(Q));
        EXPECT_GE(s.order(), 8);
        EXPECT_TRUE(voa::agree_to(s, Q, 8));
    }
}

TEST(Schwarzian, UniformizeNeedsLength) {
    EXPECT_THROW(voa::uniformize(TruncSeries::zero("z", 0)), std::out_of_range);
}

TEST(ConformalTransition, Scaling) {
    auto vir = voa::virasoro_model(Rational(1, 2));
    auto t = voa::conformal_transition(CoordChange(poly({0, 3}, 6)), *vir);
    EXPECT_EQ(t.conformal, Rational(9));
    EXPECT_EQ(t.vacuum, Rational(0));
    EXPECT_TRUE(t.matches());
}

TEST(ConformalTransition, GammaOne) {
    auto heis = voa::heisenberg_model();
    CoordChange g(voa::gamma_series(Rational(1), 6));
    auto t = voa::conformal_transition(g, *heis);
    auto direct = voa::U_gamma(Rational(1), heis->conformal_vector(), heis->adjoint());
    EXPECT_EQ(direct, heis->conformal_vector().scaled(t.conformal) + heis->vacuum().scaled(t.vacuum));
    EXPECT_TRUE(t.matches());
}

TEST(ConformalTransition, QuadraticCoordinate) {
    auto vir = voa::virasoro_model(Rational(7));
    auto t = voa::conformal_transition(CoordChange(poly({0, 1, 1}, 6)), *vir);
    EXPECT_EQ(t.conformal, Rational(1));
    // S(z + z^2)(0) = -6, so c/12 * -6 = -7/2
    EXPECT_EQ(t.vacuum, Rational(-7, 2));
    EXPECT_TRUE(t.matches());
}

TEST(ConformalTransition, RandomOnBothModels) {
    std::mt19937_64 rng(16);
    auto heis = voa::heisenberg_model();
    auto vir = voa::virasoro_model(Rational(-22, 5));
    for (int i = 0; i < 20; ++i) {
        CoordChange rho(random_coordinate(rng, 4, 6));
        EXPECT_TRUE(voa::conformal_transition(rho, *heis).matches());
        EXPECT_TRUE(voa::conformal_transition(rho, *vir).matches());
    }
}
