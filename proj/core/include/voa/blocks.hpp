#pragma once

#include "voa/models.hpp"
#include "voa/sphere.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace voa {

// A multilinear functional on W_1 (x) ... (x) W_N attached to marked points of
// P^1, given by its values on basis labels (cached).
class BlockFunctional {
public:
    using Rule = std::function<Rational(const std::vector<Label>&)>;

    BlockFunctional(SpherePoints points, std::vector<const Module*> modules, Rule rule,
                    std::vector<std::shared_ptr<const void>> keep_alive = {});

    const SpherePoints& points() const;
    const Module& module(std::size_t i) const;
    std::size_t size() const;

    Rational operator()(const std::vector<Label>& labels) const;
    Rational operator()(const std::vector<GradedVector>& ws) const;

private:
    struct State;
    std::shared_ptr<State> s_;
};

// (Y_{M'}(u)_k)^t on M, from Y_{M'}(u)_k = sum_m (-1)^{wt u}/m! Y_M(L1^m u)^t_{2 wt u - k - m - 2}.
GradedVector transposed_dual_mode(const Module& M, const GradedVector& u, int k, const GradedVector& w);

// u (x) prod_j (zeta - x_j)^{n_j} d zeta, one exponent per finite marked point in order.
struct SectionDatum {
    GradedVector u;
    std::vector<int> exponents;
};

// Residue action of the section on w at marked point i.
GradedVector residue_action(const BlockFunctional& phi, std::size_t i, const SectionDatum& s,
                            const GradedVector& w);
// sum_i phi(w_1 (x) ... (x) s.w_i (x) ... (x) w_N); zero for a conformal block.
Rational block_residue_sum(const BlockFunctional& phi, const SectionDatum& s,
                           const std::vector<GradedVector>& ws);

struct BlockWitness {
    Label u;
    std::vector<int> exponents;
    std::vector<Label> labels;
    Rational value;
    std::string str() const;
};

struct BlockCheckResult {
    bool pass = true;
    long checked = 0;
    std::optional<BlockWitness> witness;
};

// Every basis u of V up to u_cap, exponents in [-span, span], basis labels up to w_cap.
BlockCheckResult block_residue_check(const BlockFunctional& phi, int u_cap, int span, int w_cap);

// A linear map defined on the weight <= cap part of its source.
struct LinearMap {
    int cap = 0;
    std::map<Label, GradedVector> images;

    GradedVector apply(const GradedVector& w) const;  // throws past the cap
    static LinearMap identity(const Module& m, int cap);
    LinearMap scaled(const Rational& a) const;
};

struct IntertwiningWitness {
    Label v;
    int n = 0;
    Label w;
    GradedVector lhs;  // T Y(v)_n w
    GradedVector rhs;  // Y(v)_n T w
    std::string str() const;
};

class IntertwiningError : public std::invalid_argument {
public:
    explicit IntertwiningError(IntertwiningWitness w);
    const IntertwiningWitness& witness() const { return w_; }

private:
    IntertwiningWitness w_;
};

// T Y_source(v)_n = Y_target(v)_n T for basis v up to v_cap, wherever T is defined.
std::optional<IntertwiningWitness> intertwining_check(const Module& source, const Module& target,
                                                      const LinearMap& T, int v_cap);

// phi_T(w1 (x) w2) = <T w1, w2> on (P^1; 0, inf) with W1 at 0 and W2 at inf,
// for T: W1 -> W2'. Throws IntertwiningError when T fails to intertwine.
BlockFunctional hom_block(const Module& W1, const Module& W2, const LinearMap& T, int v_cap);
// T recovered from a two-point block: T w1 = sum_b phi(w1, b) b'.
LinearMap recover_map(const BlockFunctional& phi, int cap);

// <Y_W(v, z0) w, w'> summed exactly.
Rational three_point_block(const Module& W, const GradedVector& v, const Rational& z0,
                           const GradedVector& w, const GradedVector& w_dual);
// The same as a functional on (P^1; 0, z0, inf) with modules (W, V, W').
BlockFunctional three_point_functional(const Module& W, const Rational& z0);

// The propagated block as a rational function of the new point: recovered
// from its expansion at the first finite point after clearing the pole bounds
// wt v + wt w_j, then checked against its expansions at every marked point.
// Needs infinity among the marked points.
RationalFunction propagated_function(const BlockFunctional& phi, const GradedVector& v,
                                     const std::vector<GradedVector>& ws);

// The block on the points plus y, with V attached at y (last slot).
BlockFunctional propagate(const BlockFunctional& phi, const Rational& y);

// u at x, v at y: propagate by v at y first, then by u at x.
Rational double_propagate(const BlockFunctional& phi, const GradedVector& u, const Rational& x,
                          const GradedVector& v, const Rational& y,
                          const std::vector<GradedVector>& ws);

}  // namespace voa
