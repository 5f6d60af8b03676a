#include "voa/sewing.hpp"

#include <gtest/gtest.h>

using voa::GradedVector;
using voa::Label;
using voa::QExpansion;
using voa::Rational;
using voa::SewnSeries;

namespace {

GradedVector vec(std::vector<int> parts) { return GradedVector(Label(std::move(parts))); }
GradedVector vac() { return GradedVector(Label{}); }

// Partitions of n with all parts >= lo, by the usual recursion on the largest part.
long count_partitions(int n, int lo) {
    std::vector<long> p(static_cast<std::size_t>(n + 1), 0);
    p[0] = 1;
    for (int part = lo; part <= n; ++part)
        for (int k = part; k <= n; ++k) p[static_cast<std::size_t>(k)] += p[static_cast<std::size_t>(k - part)];
    return p[static_cast<std::size_t>(n)];
}

std::vector<Rational> partition_series(int K, int lo) {
    std::vector<Rational> out;
    for (int n = 0; n <= K; ++n) out.emplace_back(count_partitions(n, lo));
    return out;
}

// q d/dq log of a series with offset lam, by exact series division.
std::vector<Rational> log_derivative(const QExpansion& s, int K) {
    std::vector<Rational> num, out;
    for (int n = 0; n <= K; ++n) num.push_back((s.offset() + Rational(n)) * s.coeff(n));
    for (int n = 0; n <= K; ++n) {
        Rational acc = num[static_cast<std::size_t>(n)];
        for (int j = 0; j < n; ++j) acc -= out[static_cast<std::size_t>(j)] * s.coeff(n - j);
        out.push_back(acc / s.coeff(0));
    }
    return out;
}

}  // namespace

TEST(Sewing, HomBlockGivesGradedDimension) {
    auto heis = voa::heisenberg_model();
    voa::FockModule F(*heis, Rational(1, 3));
    auto Fd = voa::contragredient(F);
    voa::BlockFunctional phi = voa::hom_block(F, *Fd, voa::LinearMap::identity(F, 8), 2);
    SewnSeries s = voa::sew(voa::SewableBlock(phi, 0, 1), {}, 8);
    for (int n = 0; n <= 8; ++n) EXPECT_EQ(s.normalized.coeff(n), Rational(static_cast<long>(F.basis(n).size())));
}

TEST(Sewing, HomBlockPastItsCapOverflows) {
    auto heis = voa::heisenberg_model();
    const voa::Module& V = heis->adjoint();
    auto Vd = voa::contragredient(V);
    voa::BlockFunctional phi = voa::hom_block(V, *Vd, voa::LinearMap::identity(V, 3), 2);
    EXPECT_THROW(voa::sew(voa::SewableBlock(phi, 0, 1), {}, 5), std::out_of_range);
}

TEST(Sewing, RejectsAPairThatIsNotContragredient) {
    auto heis = voa::heisenberg_model();
    const voa::Module& V = heis->adjoint();
    voa::SpherePoints pts({voa::SpherePoint::finite(Rational(0)), voa::SpherePoint::infinity()});
    voa::BlockFunctional phi(pts, {&V, &V}, [](const std::vector<Label>&) { return Rational(1); });
    EXPECT_THROW(voa::SewableBlock(phi, 0, 1), std::invalid_argument);
}

TEST(TorusCharacter, HeisenbergPartitionNumbers) {
    auto heis = voa::heisenberg_model();
    SewnSeries s = voa::torus_character(heis->adjoint(), vac(), 20);
    EXPECT_EQ(s.normalized.coeffs(), partition_series(20, 1));
    EXPECT_EQ(s.normalized.coeffs()[10], Rational(42));
}

TEST(TorusCharacter, VirasoroPartsAtLeastTwo) {
    auto vir = voa::virasoro_model(Rational(1, 2));
    SewnSeries s = voa::torus_character(vir->adjoint(), vac(), 8);
    EXPECT_EQ(s.normalized.coeffs(), partition_series(8, 2));
    std::vector<Rational> head = {Rational(1), Rational(0), Rational(1), Rational(1), Rational(2), Rational(2), Rational(4)};
    EXPECT_EQ(std::vector<Rational>(s.normalized.coeffs().begin(), s.normalized.coeffs().begin() + 7), head);
}

TEST(TorusCharacter, ConformalVectorTracesL0) {
    auto heis = voa::heisenberg_model();
    const voa::Module& V = heis->adjoint();
    SewnSeries s = voa::torus_character(V, heis->conformal_vector(), 6);
    for (int n = 0; n <= 6; ++n) EXPECT_EQ(s.normalized.coeff(n), Rational(n * count_partitions(n, 1))) << n;
}

TEST(TorusCharacter, FockOffsetIsHalfMuSquared) {
    auto heis = voa::heisenberg_model();
    Rational mu(-3, 5);
    voa::FockModule F(*heis, mu);
    SewnSeries s = voa::torus_character(F, vac(), 10);
    EXPECT_EQ(s.normalized, voa::torus_character(heis->adjoint(), vac(), 10).normalized);
    EXPECT_EQ(s.standard.offset(), mu * mu / Rational(2));
    EXPECT_EQ(s.standard.coeffs(), s.normalized.coeffs());
    EXPECT_EQ(s.normalized.offset(), Rational(0));
}

TEST(TorusCharacter, RejectsInhomogeneousInsertion) {
    auto heis = voa::heisenberg_model();
    EXPECT_THROW(voa::torus_character(heis->adjoint(), vac() + vec({1}), 3), std::invalid_argument);
}

TEST(TorusCharacter, SewingTheThreePointBlockAgrees) {
    auto heis = voa::heisenberg_model();
    voa::FockModule F(*heis, Rational(1, 2));
    auto vir = voa::virasoro_model(Rational(-22, 5));
    for (const voa::Module* M : {&heis->adjoint(), static_cast<const voa::Module*>(&F), &vir->adjoint()}) {
        const voa::VertexAlgebra& alg = M->algebra();
        for (const auto& v : {vac(), alg.conformal_vector()}) {
            SewnSeries a = voa::sew(voa::torus_block(*M), {v}, 6);
            EXPECT_EQ(a, voa::torus_character(*M, v, 6)) << M->name() << " " << v.str();
        }
    }
    // an insertion without a zero-mode trace of its own
    SewnSeries b = voa::sew(voa::torus_block(F), {vec({1})}, 6);
    EXPECT_EQ(b, voa::torus_character(F, vec({1}), 6));
    EXPECT_EQ(b.normalized.coeff(0), Rational(1, 2));
}

TEST(Sewing, LeftAndRightInsertionAgree) {
    auto vir = voa::virasoro_model(Rational(1, 2));
    voa::VirasoroModule M(*vir, Rational(1, 16), false);
    voa::SewableBlock t = voa::torus_block(M);
    for (const auto& v : {vac(), vir->conformal_vector(), vec({3})})
        EXPECT_EQ(voa::sew(t, {v}, 5, voa::InsertionSide::Left), voa::sew(t, {v}, 5, voa::InsertionSide::Right));
}

TEST(Sewing, StandardIsNormalizedTimesQDelta) {
    auto vir = voa::virasoro_model(Rational(1, 2));
    voa::VirasoroModule M(*vir, Rational(1, 16), false);
    SewnSeries s = voa::sew(voa::torus_block(M), {vac()}, 6);
    EXPECT_EQ(s.standard, s.normalized.shifted(Rational(1, 16)));
}

TEST(NormalizeCharacter, HeisenbergEta) {
    auto heis = voa::heisenberg_model();
    SewnSeries s = voa::normalize_character(voa::torus_character(heis->adjoint(), vac(), 12), Rational(1));
    EXPECT_EQ(s.normalized.offset(), Rational(-1, 24));
    EXPECT_EQ(s.normalized.coeffs(), partition_series(12, 1));
}

TEST(NormalizeCharacter, ZeroSeriesAndOffsetArithmetic) {
    SewnSeries z{QExpansion(Rational(0), {Rational(0), Rational(0)}), QExpansion(Rational(1, 16), {Rational(0), Rational(0)})};
    SewnSeries n = voa::normalize_character(z, Rational(1, 2));
    EXPECT_EQ(n.normalized, QExpansion(Rational(-1, 48), {Rational(0), Rational(0)}));
    EXPECT_EQ(n.standard.offset(), Rational(1, 16) - Rational(1, 48));
}

TEST(MultiSewing, IteratedAgreesWithSimultaneous) {
    auto heis = voa::heisenberg_model();
    auto vir = voa::virasoro_model(Rational(1, 2));
    voa::FockModule F(*heis, Rational(1, 2));
    auto Fd = voa::contragredient(F);
    const voa::Module& L = vir->adjoint();
    auto Ld = voa::contragredient(L);
    voa::SpherePoints pts({voa::SpherePoint::finite(Rational(0)), voa::SpherePoint::finite(Rational(1)),
                           voa::SpherePoint::finite(Rational(2)), voa::SpherePoint::infinity()});
    // a product of two pairings weighted by the weight of the first slot
    voa::BlockFunctional psi(pts, {&F, &L, Ld.get(), Fd.get()}, [](const std::vector<Label>& l) {
        return Rational(l[0] == l[3] && l[1] == l[2] ? 1 + l[0].weight() : 0);
    });
    auto direct = voa::sew_pairs(psi, {{0, 3}, {1, 2}}, {}, 5);
    auto iterated = voa::sew_pairs_iterated(psi, {{0, 3}, {1, 2}}, {}, 5);
    EXPECT_EQ(direct, iterated);
    EXPECT_EQ(direct.offsets, (std::vector<Rational>{Rational(1, 8), Rational(0)}));
    for (int a = 0; a <= 5; ++a)
        for (int b = 0; b <= 5; ++b)
            EXPECT_EQ(direct.coeff({a, b}), Rational((1 + a) * count_partitions(a, 1) * count_partitions(b, 2)));
}

TEST(TwoSidedIdentity, VacuumWithConstantF) {
    auto heis = voa::heisenberg_model();
    auto f = voa::BivarSeries::polynomial("xi", "w", {{Rational(1)}});
    auto r = voa::two_sided_identity_check(vac(), f, heis->adjoint(), 4);
    EXPECT_TRUE(r.pass);
    // both sides are sum_n P(n) insertion q^n
    for (int n = 0; n <= 4; ++n) EXPECT_EQ(static_cast<long>(r.lhs.at(n).size()), count_partitions(n, 1));
}

TEST(TwoSidedIdentity, ConformalVectorHeisenberg) {
    auto heis = voa::heisenberg_model();
    auto f = voa::BivarSeries::polynomial("xi", "w", {{Rational(1)}});
    auto r = voa::two_sided_identity_check(heis->conformal_vector(), f, heis->adjoint(), 4);
    EXPECT_TRUE(r.pass);
    EXPECT_FALSE(r.lhs.empty());
}

TEST(TwoSidedIdentity, CurrentWithProductF) {
    auto heis = voa::heisenberg_model();
    // f = xi w
    auto f = voa::BivarSeries::polynomial("xi", "w", {{Rational(0), Rational(0)}, {Rational(0), Rational(1)}});
    EXPECT_TRUE(voa::two_sided_identity_check(vec({1}), f, heis->adjoint(), 4).pass);
    // on the vacuum module a_0 = 0 makes both sides vanish; on a Fock module they do not
    voa::FockModule F(*heis, Rational(-1, 2));
    auto r = voa::two_sided_identity_check(vec({1}), f, F, 4);
    EXPECT_TRUE(r.pass);
    EXPECT_FALSE(r.lhs.empty());
}

TEST(TwoSidedIdentity, GeneralPolynomialsAndModules) {
    auto heis = voa::heisenberg_model();
    voa::FockModule F(*heis, Rational(2, 3));
    auto vir = voa::virasoro_model(Rational(1, 2));
    voa::VirasoroModule M(*vir, Rational(1, 16), false);
    auto f = voa::BivarSeries::polynomial(
        "xi", "w", {{Rational(2), Rational(-1), Rational(0)}, {Rational(1, 3), Rational(0), Rational(5)}});
    for (const auto& u : {vec({1}), vec({2}), vec({1, 1})}) {
        auto r = voa::two_sided_identity_check(u, f, F, 4);
        EXPECT_TRUE(r.pass) << u.str();
    }
    for (const auto& u : {vir->conformal_vector(), vec({3}), vec({2, 2})}) {
        auto r = voa::two_sided_identity_check(u, f, M, 3);
        EXPECT_TRUE(r.pass) << u.str();
    }
}

TEST(TwoSidedIdentity, NeedsAHomogeneousInsertion) {
    auto heis = voa::heisenberg_model();
    auto f = voa::BivarSeries::polynomial("xi", "w", {{Rational(1)}});
    EXPECT_TRUE(voa::two_sided_identity_check(vec({2}) + vec({1, 1}), f, heis->adjoint(), 3).pass);
    EXPECT_THROW(voa::two_sided_identity_check(vec({2}) + vec({1}), f, heis->adjoint(), 3), std::invalid_argument);
}

TEST(SewnBlock, PeriodizedSectionHasTheRightShape) {
    // h = zeta/(zeta - 1)^2: q^1 coefficient is zeta - 2 + ... from n = 1 and zeta^{-1} from n = -1
    voa::RationalFunction h1 = voa::periodized_coefficient(1, 2, 1);
    EXPECT_EQ(h1, voa::RationalFunction({Rational(1), Rational(0), Rational(1)}, {{Rational(0), 1}}));
    EXPECT_TRUE(voa::periodized_coefficient(1, 2, 0).poles().size() == 1);
    EXPECT_THROW(voa::periodized_coefficient(2, 2, 0), std::invalid_argument);
}

TEST(SewnBlock, TorusBlockVanishesOnPeriodicSections) {
    auto heis = voa::heisenberg_model();
    voa::FockModule F(*heis, Rational(1, 2));
    auto vir = voa::virasoro_model(Rational(1, 2));
    for (auto [a, b] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}}) {
        for (const auto& [u, w] : {std::pair{vec({1}), vec({1})}, std::pair{vec({1}), vec({2})},
                                   std::pair{heis->conformal_vector(), vac()}, std::pair{vec({2}), vec({1})}}) {
            auto r = voa::sewn_block_check(F, u, w, a, b, 5);
            EXPECT_TRUE(r.pass) << a << " " << b << " " << u.str() << " " << w.str();
        }
        auto r = voa::sewn_block_check(vir->adjoint(), vir->conformal_vector(), vir->conformal_vector(), a, b, 5);
        EXPECT_TRUE(r.pass) << a << " " << b;
    }
}

TEST(SewnBlock, UntwistedSectionIsDetected) {
    // u H(zeta) d zeta without the zeta^{wt u - 1} twist is not a section on the torus
    auto heis = voa::heisenberg_model();
    voa::FockModule F(*heis, Rational(1, 2));
    const voa::Module& V = heis->adjoint();
    voa::BlockFunctional psi = voa::three_point_functional(F, Rational(1));
    GradedVector u = heis->conformal_vector(), w = vec({1});
    std::vector<Rational> residual(4);
    for (int p = 0; p <= 3; ++p) {
        voa::TruncSeries e = voa::periodized_coefficient(1, 2, p).expand(voa::SpherePoint::finite(Rational(1)), 3);
        GradedVector acted;
        for (int k = e.floor(); k < 3; ++k) acted += V.mode(u, k, w).scaled(e.coeff(k));
        for (int n = 0; p + n <= 3; ++n)
            for (const Label& l : F.basis(n))
                residual[static_cast<std::size_t>(p + n)] += psi({GradedVector(l), acted, GradedVector(l)});
    }
    EXPECT_NE(residual, std::vector<Rational>(4));
    EXPECT_TRUE(voa::sewn_block_check(F, u, w, 1, 2, 3).pass);
}

TEST(SewnODE, FockCharacterLogDerivative) {
    auto heis = voa::heisenberg_model();
    voa::FockModule F(*heis, Rational(1, 2));
    QExpansion chi = voa::torus_character(F, vac(), 10).standard;
    auto w = voa::sewn_ode_witness({chi}, 10);
    ASSERT_TRUE(w.exists) << w.reason;
    EXPECT_TRUE(w.unique);
    std::vector<Rational> oracle = log_derivative(chi, 10);
    for (int p = 0; p <= 10; ++p) EXPECT_EQ(w.A[static_cast<std::size_t>(p)][0][0], oracle[static_cast<std::size_t>(p)]);
    EXPECT_EQ(w.A[0][0][0], Rational(1, 8));
}

TEST(SewnODE, ConstantSeriesHasZeroMatrix) {
    auto w = voa::sewn_ode_witness({QExpansion(Rational(0), {Rational(3), Rational(0), Rational(0), Rational(0)})}, 3);
    ASSERT_TRUE(w.exists);
    for (const auto& Ap : w.A) EXPECT_TRUE(Ap[0][0].is_zero());
}

TEST(SewnODE, StackedCharactersGiveBlockDiagonal) {
    auto heis = voa::heisenberg_model();
    auto vir = voa::virasoro_model(Rational(1, 2));
    QExpansion a = voa::torus_character(heis->adjoint(), vac(), 8).normalized;
    QExpansion b = voa::torus_character(vir->adjoint(), vac(), 8).normalized;
    auto w = voa::sewn_ode_witness({a, b}, 8);
    ASSERT_TRUE(w.exists) << w.reason;
    EXPECT_FALSE(w.unique);
    EXPECT_FALSE(w.reason.empty());
    auto la = log_derivative(a, 8), lb = log_derivative(b, 8);
    for (int p = 0; p <= 8; ++p) {
        const auto& Ap = w.A[static_cast<std::size_t>(p)];
        EXPECT_TRUE(Ap[0][1].is_zero());
        EXPECT_TRUE(Ap[1][0].is_zero());
        EXPECT_EQ(Ap[0][0], la[static_cast<std::size_t>(p)]);
        EXPECT_EQ(Ap[1][1], lb[static_cast<std::size_t>(p)]);
    }
}

TEST(SewnODE, ReportsIncompatibleOffsetsAndShortSeries) {
    auto w = voa::sewn_ode_witness({QExpansion(Rational(0), {Rational(1)}), QExpansion(Rational(1, 2), {Rational(1)})}, 0);
    EXPECT_FALSE(w.exists);
    EXPECT_FALSE(w.reason.empty());
    auto s = voa::sewn_ode_witness({QExpansion(Rational(0), {Rational(1), Rational(1)})}, 4);
    EXPECT_FALSE(s.exists);
}

TEST(SewnODE, ZeroRowNextToAMonomial) {
    QExpansion zero(Rational(0), {Rational(0), Rational(0), Rational(0)});
    QExpansion q(Rational(0), {Rational(0), Rational(1), Rational(0)});
    auto w = voa::sewn_ode_witness({zero, q}, 2);
    ASSERT_TRUE(w.exists) << w.reason;
    // q d/dq q = q: the constant term of A_11 is 1
    EXPECT_EQ(w.A[0][1][1], Rational(1));
    EXPECT_FALSE(w.unique);
}
