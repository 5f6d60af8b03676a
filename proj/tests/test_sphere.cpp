#include "voa/sphere.hpp"

#include <gtest/gtest.h>

#include <random>

using voa::GlueResult;
using voa::LaurentTail;
using voa::Rational;
using voa::RationalFunction;
using voa::SpherePoint;
using voa::SpherePoints;
using voa::TruncSeries;

namespace {

const SpherePoint inf = SpherePoint::infinity();
SpherePoint at(const Rational& x) { return SpherePoint::finite(x); }

Rational random_rational(std::mt19937_64& rng, int span = 3) {
    std::uniform_int_distribution<int> num(-span, span), den(1, span);
    return Rational(num(rng), den(rng));
}

// 1/(zeta (zeta - z0))
RationalFunction simple_poles(const Rational& z0) {
    return RationalFunction({Rational(1)}, {{Rational(0), 1}, {z0, 1}});
}

}  // namespace

TEST(SpherePoints, RejectsRepeats) {
    EXPECT_THROW(SpherePoints({at(Rational(1)), at(Rational(1))}), std::invalid_argument);
    EXPECT_THROW(SpherePoints({inf, inf}), std::invalid_argument);
    SpherePoints p({at(Rational(0)), inf});
    EXPECT_TRUE(p.has_infinity());
    EXPECT_EQ(p.finite_indices().size(), 1u);
}

TEST(RationalFunction, CancelsCommonFactors) {
    // (zeta^2 - zeta) / (zeta (zeta - 1)) = 1
    RationalFunction f({Rational(0), Rational(-1), Rational(1)}, {{Rational(0), 1}, {Rational(1), 1}});
    EXPECT_EQ(f, RationalFunction::constant(Rational(1)));
    EXPECT_TRUE(f.poles().empty());
}

TEST(RationalFunction, EvaluatesAndRejectsPoles) {
    RationalFunction f = simple_poles(Rational(1));
    EXPECT_EQ(f(Rational(2)), Rational(1, 2));
    EXPECT_THROW(f(Rational(1)), std::domain_error);
}

TEST(RationalFunction, ExpandsAtEachKindOfPoint) {
    RationalFunction f = simple_poles(Rational(1));
    // at 0: -1/t - 1 - t - t^2
    EXPECT_EQ(f.expand(at(Rational(0)), 3), TruncSeries("t", -1, 3, {-1, -1, -1, -1}));
    // at 1: 1/t - 1 + t - t^2
    EXPECT_EQ(f.expand(at(Rational(1)), 3), TruncSeries("t", -1, 3, {1, -1, 1, -1}));
    // at infinity, s = 1/zeta: s^2 / (1 - s)
    EXPECT_EQ(f.expand(inf, 5), TruncSeries("t", 2, 5, {1, 1, 1}));
    // d zeta / zeta^2 at infinity is -ds
    RationalFunction g({Rational(1)}, {{Rational(0), 2}});
    EXPECT_EQ(g.expand_form(inf, 3), TruncSeries("t", 0, 3, {-1, 0, 0}));
}

TEST(RationalFunction, SumAndProduct) {
    RationalFunction a({Rational(1)}, {{Rational(0), 1}});
    RationalFunction b({Rational(-1)}, {{Rational(1), 1}});
    // 1/zeta - 1/(zeta - 1) = -1/(zeta (zeta - 1))
    EXPECT_EQ(a + b, simple_poles(Rational(1)).scaled(Rational(-1)));
    EXPECT_EQ(a * a, RationalFunction({Rational(1)}, {{Rational(0), 2}}));
}

TEST(RationalGlue, ConstantFunction) {
    GlueResult g = voa::rational_glue(Rational(1), TruncSeries::constant("t", Rational(1), 3),
                                      TruncSeries::constant("t", Rational(1), 3),
                                      TruncSeries::constant("t", Rational(1), 3));
    ASSERT_TRUE(g.pass);
    EXPECT_EQ(*g.section, RationalFunction::constant(Rational(1)));
}

TEST(RationalGlue, SimplePoles) {
    RationalFunction f = simple_poles(Rational(1));
    GlueResult g = voa::rational_glue(Rational(1), f.expand(at(Rational(0)), 3),
                                      f.expand(at(Rational(1)), 3), f.expand(inf, 4));
    ASSERT_TRUE(g.pass);
    EXPECT_EQ(*g.section, f);
}

TEST(RationalGlue, PerturbedCoefficientNamesTheViolatedForm) {
    RationalFunction f = simple_poles(Rational(1));
    TruncSeries bad = f.expand(at(Rational(1)), 3) + TruncSeries::monomial("t", 1, Rational(1, 7), 3);
    GlueResult g = voa::rational_glue(Rational(1), f.expand(at(Rational(0)), 3), bad, f.expand(inf, 4));
    EXPECT_FALSE(g.pass);
    ASSERT_TRUE(g.violation);
    EXPECT_EQ(g.violation->centers, (std::vector<Rational>{Rational(0), Rational(1)}));
    EXPECT_FALSE(g.violation->residue_sum.is_zero());
    // the named form really pairs nontrivially with the data
    SpherePoints pts({at(Rational(0)), at(Rational(1)), inf});
    RationalFunction lambda = RationalFunction::product_of_powers(g.violation->centers, g.violation->exponents);
    std::vector<TruncSeries> sigma;
    for (const auto& s : {f.expand(at(Rational(0)), 3), bad, f.expand(inf, 4)}) sigma.push_back(s);
    Rational sum;
    for (std::size_t i = 0; i < 3; ++i) {
        TruncSeries l = lambda.expand_form(pts[i], 3);
        sum += voa::series_residue(sigma[i] * l);
    }
    EXPECT_EQ(sum, g.violation->residue_sum);
}

TEST(StrongResidue, ReconstructsFromTails) {
    // -zeta^{-2}: tails at 0 and infinity
    RationalFunction f({Rational(-1)}, {{Rational(0), 2}});
    SpherePoints pts({at(Rational(0)), inf});
    GlueResult g = voa::strong_residue_check(pts, LaurentTail{{f.expand(pts[0], 2), f.expand(pts[1], 4)}});
    ASSERT_TRUE(g.pass);
    EXPECT_EQ(*g.section, f);
}

TEST(StrongResidue, SinglePointViolation) {
    // a function with poles only at 0 is a polynomial in 1/zeta: the z^1 term is impossible
    SpherePoints pts({at(Rational(0))});
    TruncSeries tail("t", -1, 2, {1, 0, 1});
    GlueResult g = voa::strong_residue_check(pts, LaurentTail{{tail}});
    EXPECT_FALSE(g.pass);
    ASSERT_TRUE(g.violation);
    EXPECT_EQ(g.violation->exponents, std::vector<int>{-2});
    EXPECT_EQ(g.violation->residue_sum, Rational(1));
}

TEST(StrongResidue, ZeroTails) {
    SpherePoints pts({at(Rational(0)), at(Rational(2)), inf});
    LaurentTail z{{TruncSeries::zero("t", 2), TruncSeries::zero("t", 2), TruncSeries::zero("t", 2)}};
    GlueResult g = voa::strong_residue_check(pts, z);
    ASSERT_TRUE(g.pass);
    EXPECT_TRUE(g.section->is_zero());
}

TEST(StrongResidue, ReportsUnderdetermination) {
    // nothing is known anywhere: constants are not pinned down
    SpherePoints pts({at(Rational(0)), inf});
    LaurentTail z{{TruncSeries::zero("t", 0), TruncSeries::zero("t", 0)}};
    GlueResult g = voa::strong_residue_check(pts, z);
    EXPECT_FALSE(g.pass);
    EXPECT_TRUE(g.underdetermined);
}

TEST(StrongResidue, GlueSucceedsExactlyWhenResiduesVanish) {
    std::mt19937_64 rng(21);
    int glued = 0, failed = 0;
    for (int i = 0; i < 30; ++i) {
        Rational z0;
        while (z0.is_zero()) z0 = random_rational(rng);
        std::uniform_int_distribution<int> pole(0, 2), extra(0, 2);
        int n0 = pole(rng), nz = pole(rng);
        voa::Poly num;
        for (int k = 0; k <= n0 + nz + extra(rng); ++k) num.push_back(random_rational(rng));
        RationalFunction f(num, {{Rational(0), n0}, {z0, nz}});
        SpherePoints pts({at(Rational(0)), at(z0), inf});
        std::vector<TruncSeries> tails = {f.expand(pts[0], 3), f.expand(pts[1], 3), f.expand(pts[2], 2)};
        if (i % 2) {
            std::size_t which = static_cast<std::size_t>(i % 3);
            tails[which] = tails[which] + TruncSeries::monomial("t", tails[which].order() - 1,
                                                                Rational(1, 1 + i), tails[which].order());
        }
        GlueResult a = voa::rational_glue(z0, tails[0], tails[1], tails[2]);
        GlueResult b = voa::strong_residue_check(pts, LaurentTail{tails});
        EXPECT_EQ(a.pass, b.pass);
        EXPECT_EQ(a.violation.has_value(), b.violation.has_value());
        if (a.pass) {
            EXPECT_EQ(*a.section, *b.section);
            if (i % 2 == 0) EXPECT_EQ(*a.section, f);
            ++glued;
        } else {
            ++failed;
        }
    }
    EXPECT_GT(glued, 0);
    EXPECT_GT(failed, 0);
}

TEST(ResiduePairing, UnitResidue) {
    SpherePoints pts({at(Rational(0))});
    EXPECT_EQ(voa::residue_pairing(pts, {TruncSeries("t", -1, 2, {1, 0, 0})}, RationalFunction::constant(Rational(1))),
              Rational(1));
    for (int k : {-3, -2, 0, 1})
        EXPECT_EQ(voa::residue_pairing(pts, {TruncSeries::monomial("t", k, Rational(1), 3)},
                                       RationalFunction::constant(Rational(1))),
                  Rational(0));
}

TEST(ResiduePairing, CoboundariesPairToZero) {
    std::mt19937_64 rng(22);
    SpherePoints pts({at(Rational(0)), at(Rational(3)), inf});
    for (int i = 0; i < 10; ++i) {
        // a global form with poles in the marked set, plus pieces holomorphic on each disc
        voa::Poly num;
        for (int k = 0; k < 4; ++k) num.push_back(random_rational(rng));
        RationalFunction alpha(num, {{Rational(0), 2}, {Rational(3), 1}});
        RationalFunction t({random_rational(rng), random_rational(rng)}, {{Rational(0), 1}});
        std::vector<TruncSeries> sigma;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            // holomorphic piece vanishing to the pole order of t there
            int vanish = t.pole_order(pts[j]);
            TruncSeries h = TruncSeries::monomial("t", vanish, random_rational(rng), 8);
            sigma.push_back(alpha.expand_form(pts[j], 8) + h);
        }
        EXPECT_EQ(voa::residue_pairing(pts, sigma, t), Rational(0));
    }
}
