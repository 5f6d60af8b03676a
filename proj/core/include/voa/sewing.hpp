#pragma once

#include "voa/blocks.hpp"
#include "voa/linalg.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace voa {

// A block on (P^1; x_1, ..., x_N, x', x'') with M at x' and M' at x''.
struct SewableBlock {
    BlockFunctional psi;
    std::size_t sewn;  // slot of M
    std::size_t dual;  // slot of M'

    // Checks that the dual slot carries a contragredient of the sewn module.
    SewableBlock(BlockFunctional psi, std::size_t sewn, std::size_t dual);
    const Module& module() const { return psi.module(sewn); }
    std::vector<std::size_t> open_slots() const;
};

struct SewnSeries {
    QExpansion normalized;  // offset 0
    QExpansion standard;    // offset delta_M

    friend bool operator==(const SewnSeries&, const SewnSeries&) = default;
};

// Which factor of the dual-basis insertion carries q^{L~0}. The eigenvalue is
// read off the L0 action of that factor's module.
enum class InsertionSide { Left, Right };

// sum_n psi(w (x) P(n) dual-insertion) q^n for n = 0..K; ws fill the open slots in order.
SewnSeries sew(const SewableBlock& psi, const std::vector<GradedVector>& ws, int K,
               InsertionSide side = InsertionSide::Left);

// The three-point block on (P^1; 0, 1, inf) with (M, V, M') as a sewable block.
SewableBlock torus_block(const Module& M);

// sum_n tr_{M(n)} Y(v)_{wt v - 1} q^n, traced directly on the basis.
SewnSeries torus_character(const Module& M, const GradedVector& v, int K);

// Multiplies by q^{-c/24}.
SewnSeries normalize_character(const SewnSeries& s, const Rational& c);

// Several sewn pairs, one q-symbol each.
struct MultiQSeries {
    std::vector<Rational> offsets;
    int order = 0;  // every exponent runs over 0..order-1
    std::map<std::vector<int>, Rational> coeffs;

    Rational coeff(const std::vector<int>& n) const;
    friend bool operator==(const MultiQSeries&, const MultiQSeries&) = default;
};

// Sum over all dual-basis insertions at once.
MultiQSeries sew_pairs(const BlockFunctional& psi, const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                       const std::vector<GradedVector>& ws, int K);
// The same by sewing one pair at a time, each step a functional on the remaining slots.
MultiQSeries sew_pairs_iterated(const BlockFunctional& psi,
                                const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                                const std::vector<GradedVector>& ws, int K);
// The q^n coefficient of sewing one pair, as a functional on the other slots.
BlockFunctional sew_level(const BlockFunctional& psi, std::size_t sewn, std::size_t dual, int n);

// Elements of (M (x) M')[[q]] by q-power.
using TensorQSeries = std::map<int, std::map<std::pair<Label, Label>, Rational>>;

struct TwoSidedResult {
    bool pass = false;
    TensorQSeries lhs;  // Res_xi Y_M(xi^{L0} u, xi) q^{L~0} insertion f(xi, q/xi) dxi/xi
    TensorQSeries rhs;  // Res_w  q^{L~0} insertion Y_{M'}(w^{L0} U(gamma_1) u, w) f(q/w, w) dw/w
};

// Both sides to order K. f is read as the polynomial on its coefficient rectangle.
TwoSidedResult two_sided_identity_check(const GradedVector& u, const BivarSeries& f, const Module& M, int K);

// The vanishing of the sewn torus block on a section u zeta^{wt u - 1} H(zeta) d zeta,
// where H(zeta) = sum_{n in Z} h(q^n zeta) periodizes h = zeta^a/(zeta - 1)^b, 0 < a < b.
// residual[n] is the q^n coefficient of sum_n psi(sigma.w (x) P(n) insertion).
struct SewnBlockResult {
    bool pass = false;
    std::vector<Rational> residual;
};
SewnBlockResult sewn_block_check(const Module& M, const GradedVector& u, const GradedVector& w, int a, int b,
                                 int K);
// The q^p coefficient of H as a Laurent polynomial in zeta, plus h itself when p = 0.
RationalFunction periodized_coefficient(int a, int b, int p);

// q d/dq s = A s for a family s, solved exactly for A = sum_p A_p q^p.
struct SewnODEWitness {
    bool exists = false;
    bool unique = false;
    int rank = 0;
    int unknowns = 0;
    Rational offset;           // common offset the family was rewritten with
    std::vector<RMatrix> A;    // A_0..A_K
    std::string reason;
};
SewnODEWitness sewn_ode_witness(const std::vector<QExpansion>& family, int K);

}  // namespace voa
