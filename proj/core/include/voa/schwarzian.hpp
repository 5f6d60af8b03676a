#pragma once

#include "voa/coord_change.hpp"
#include "voa/models.hpp"
#include "voa/series.hpp"

namespace voa {

// S f = f'''/f' - 3/2 (f''/f')^2; needs f'(0) != 0.
TruncSeries schwarzian(const TruncSeries& f);

// (a z + b)/(c z + d) expanded at 0; needs d != 0 and ad - bc != 0.
TruncSeries mobius_series(const Rational& a, const Rational& b, const Rational& c,
                          const Rational& d, int order, const std::string& var = "z");
// (a f + b)/(c f + d) by series arithmetic.
TruncSeries mobius_after(const Rational& a, const Rational& b, const Rational& c,
                         const Rational& d, const TruncSeries& f);
// e^{a z} - 1 to the given order.
TruncSeries exp_minus_one(const Rational& a, int order, const std::string& var = "z");

// S_a b: the Schwarzian of b in the coordinate a, as a series in the base
// variable:  S(b o a^{-1}) o a.  Both a and b must vanish at 0.
TruncSeries relative_schwarzian(const TruncSeries& a, const TruncSeries& b);

struct CocycleResult {
    bool chain_rule = false;    // S(f o g) = g'^2 (S f) o g + S g
    bool antisymmetry = false;  // (S g^{-1}) o g . g'^2 = -S g
    TruncSeries chain_lhs, chain_rhs;
};

CocycleResult cocycle_check(const TruncSeries& f, const TruncSeries& g);

// S_f g df^2 + S_g h dg^2 + S_h f dh^2, pulled back to the base coordinate.
TruncSeries triple_cocycle(const TruncSeries& f, const TruncSeries& g, const TruncSeries& h);

struct ConformalTransition {
    Rational conformal;  // coefficient of the conformal vector in U(rho) c
    Rational vacuum;     // coefficient of the vacuum
    Rational expected_conformal;  // rho'(0)^2
    Rational expected_vacuum;     // c/12 (S rho)(0)
    bool matches() const { return conformal == expected_conformal && vacuum == expected_vacuum; }
};

// Throws if U(rho) c leaves span{c, 1}.
ConformalTransition conformal_transition(const CoordChange& rho, const VertexAlgebra& alg);

// f with S f = Q: solves h'' + Q h / 2 = 0 twice and returns h2/h1. Verifies
// its own output and throws std::logic_error if S f != Q to the available order;
// throws std::out_of_range when Q is too short for any verification.
TruncSeries uniformize(const TruncSeries& Q);

// S(e^{k pi i z}) = (k^2/2) pi^2; returns the rational multiple of pi^2.
// k = 2 gives 2 pi^2 (the rational identity S(e^{az}-1) = -a^2/2 with a^2 = -k^2 pi^2).
Rational exponential_schwarzian_pi_squared(const Rational& k);

}  // namespace voa
