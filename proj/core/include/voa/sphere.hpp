#pragma once

#include "voa/rational.hpp"
#include "voa/series.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace voa {

// A point of P^1. Local coordinate: zeta - x at a finite point, 1/zeta at infinity.
struct SpherePoint {
    bool at_infinity = false;
    Rational x;

    static SpherePoint finite(const Rational& x) { return {false, x}; }
    static SpherePoint infinity() { return {true, Rational(0)}; }
    std::string str() const { return at_infinity ? "inf" : x.str(); }
    friend bool operator==(const SpherePoint&, const SpherePoint&) = default;
};

class SpherePoints {
public:
    explicit SpherePoints(std::vector<SpherePoint> pts);  // throws on repeated points

    std::size_t size() const { return pts_.size(); }
    const SpherePoint& operator[](std::size_t i) const { return pts_[i]; }
    const std::vector<SpherePoint>& points() const { return pts_; }
    bool has_infinity() const;
    std::optional<std::size_t> infinity_index() const;
    std::vector<std::size_t> finite_indices() const;
    bool contains(const SpherePoint& p) const;
    SpherePoints with(const SpherePoint& p) const;

private:
    std::vector<SpherePoint> pts_;
};

// Dense polynomial, p[i] the coefficient of zeta^i.
using Poly = std::vector<Rational>;

Poly poly_trim(Poly p);
int poly_degree(const Poly& p);  // -1 for zero
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const Rational& c);
Rational poly_eval(const Poly& p, const Rational& x);
Poly poly_taylor_shift(const Poly& p, const Rational& a);  // p(t + a) as a polynomial in t
Poly poly_linear_power(const Rational& a, int n);          // (t - a)^n, n >= 0

// num(zeta) / prod_j (zeta - x_j)^{N_j}, with common factors cancelled.
class RationalFunction {
public:
    RationalFunction() = default;
    RationalFunction(Poly num, std::vector<std::pair<Rational, int>> poles);

    static RationalFunction constant(const Rational& a) { return RationalFunction({a}, {}); }
    // prod_j (zeta - x_j)^{n_j}, any signs.
    static RationalFunction product_of_powers(const std::vector<Rational>& xs,
                                              const std::vector<int>& exps);

    const Poly& numerator() const { return num_; }
    const std::vector<std::pair<Rational, int>>& poles() const { return poles_; }
    bool is_zero() const { return num_.empty(); }

    Rational operator()(const Rational& y) const;  // throws at a pole
    // Laurent expansion in the local coordinate at p, known below `order`.
    TruncSeries expand(const SpherePoint& p, int order, const std::string& var = "t") const;
    // Expansion of f(zeta) d zeta as a coefficient of dt in the local coordinate.
    TruncSeries expand_form(const SpherePoint& p, int order, const std::string& var = "t") const;
    int pole_order(const SpherePoint& p) const;

    RationalFunction scaled(const Rational& a) const;
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend bool operator==(const RationalFunction& a, const RationalFunction& b);
    std::string str(const std::string& var = "z") const;

private:
    Poly num_;
    std::vector<std::pair<Rational, int>> poles_;  // sorted by x, N > 0
};

// Per marked point, the truncated Laurent expansion in the local coordinate.
// The tail's floor caps the pole order; its order is how far it is known.
struct LaurentTail {
    std::vector<TruncSeries> at;
};

// A global 1-form prod_j (zeta - x_j)^{n_j} d zeta over the finite marked
// points (over zeta itself when no finite point is marked), and its residue
// pairing with the tails.
struct ResidueWitness {
    std::vector<Rational> centers;
    std::vector<int> exponents;
    Rational residue_sum;
    std::string str() const;
};

struct GlueResult {
    bool pass = false;
    bool underdetermined = false;
    std::optional<RationalFunction> section;
    std::optional<ResidueWitness> violation;
};

// Pairs the tails against a basis of the global forms whose pole orders stay
// within the known orders; on success reconstructs the unique meromorphic
// function by linear algebra and re-expands it at every point.
GlueResult strong_residue_check(const SpherePoints& pts, const LaurentTail& tails);

// Direct linear solve for a function on (P^1; 0, z0, inf) in the basis
// zeta^m (zeta - z0)^n matching all three expansions; on failure names the
// form zeta^m (zeta - z0)^n d zeta whose residue pairing is violated.
GlueResult rational_glue(const Rational& z0, const TruncSeries& at_zero, const TruncSeries& at_z0,
                         const TruncSeries& at_infinity);

// sum_i Res_{x_i} <sigma_i, t>, sigma_i the dt-coefficient in the local coordinate.
Rational residue_pairing(const SpherePoints& pts, const std::vector<TruncSeries>& sigma,
                         const RationalFunction& t);

}  // namespace voa
