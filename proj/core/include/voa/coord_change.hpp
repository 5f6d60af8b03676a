#pragma once

#include "voa/graded.hpp"
#include "voa/models.hpp"
#include "voa/series.hpp"

#include <map>
#include <vector>

namespace voa {

// rho(z) = c0 exp(sum_{n>0} c_n z^{n+1} d/dz) z, with the c_n solved order by order.
class CoordChange {
public:
    explicit CoordChange(TruncSeries rho);

    const TruncSeries& series() const { return rho_; }
    const Rational& c0() const { return c_[0]; }
    // c_1..c_K, K = order(rho) - 2
    std::vector<Rational> raising() const { return {c_.begin() + 1, c_.end()}; }
    const std::vector<Rational>& coeffs() const { return c_; }
    int known_raising() const { return static_cast<int>(c_.size()) - 1; }

private:
    TruncSeries rho_;
    std::vector<Rational> c_;
};

// c0 = rho'(0), then c_1, c_2, ... while rho's truncation allows.
std::vector<Rational> extract_coeffs(const TruncSeries& rho);

// c0 exp(sum c_n z^{n+1} d/dz) z to the order the coefficients determine.
TruncSeries reconstruct_series(const std::vector<Rational>& coeffs, const std::string& var = "z");

// Same triangular solve over the ring of power series in a parameter: a[n-1]
// is the coefficient of t^n, each a power series in the parameter.
std::vector<TruncSeries> extract_coeffs_over_series(const std::vector<TruncSeries>& a);

// U(rho) w = rho'(0)^{L~0} exp(sum c_n L_n) w
GradedVector U_apply(const CoordChange& rho, const GradedVector& w, const VirasoroAction& act);
// U(rho)^{-1} w = exp(-sum c_n L_n) rho'(0)^{-L~0} w
GradedVector U_inverse_apply(const CoordChange& rho, const GradedVector& w,
                             const VirasoroAction& act);

// gamma_xi(z) = 1/(xi + z) - 1/xi
TruncSeries gamma_series(const Rational& xi, int order, const std::string& var = "z");
// U(gamma_xi) w = e^{xi L1} (-xi^{-2})^{L~0} w, in closed form.
GradedVector U_gamma(const Rational& xi, const GradedVector& w, const VirasoroAction& act);

// U(gamma_xi) xi^{L~0} = xi^{-L~0} U(gamma_1) on every basis vector up to cap,
// with U(gamma) computed from the series by coefficient extraction.
bool gamma_relation_check(const Rational& xi, const Module& m, int cap);

// rho_zeta(z) = base(z) + zeta * slope(z) + O(zeta^2)
struct LinearFamily {
    TruncSeries base;
    TruncSeries slope;
};

// d/dzeta U(rho_zeta) w at zeta = 0  =  sum_{n>=1} slope_n L~_{n-1} w
GradedVector derivative_at_identity(const LinearFamily& family, const GradedVector& w,
                                    const VirasoroAction& act);

// A W-valued truncated Laurent series: coefficient vectors for floor <= e < order.
struct VecSeries {
    int floor = 0;
    int order = 0;
    std::map<int, GradedVector> coeffs;

    GradedVector coeff(int e) const;
    friend bool operator==(const VecSeries&, const VecSeries&) = default;
};

struct HuangResult {
    bool pass = false;
    VecSeries lhs;  // U(alpha) Y(v,z) U(alpha)^{-1} w
    VecSeries rhs;  // Y(U(rho_z) v, alpha(z)) w,  rho_z(t) = alpha(z+t) - alpha(z)
};

// Compares both sides on z^e for e < z_order. alpha must be known to enough
// order; otherwise std::out_of_range names the shortfall.
HuangResult huang_conjugation_check(const TruncSeries& alpha, const GradedVector& v,
                                    const GradedVector& w, const Module& m, int z_order);

}  // namespace voa
