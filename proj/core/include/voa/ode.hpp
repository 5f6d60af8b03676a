#pragma once

#include "voa/linalg.hpp"
#include "voa/series.hpp"

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace voa {

// q d/dq psi = A(q) psi with A holomorphic at q = 0, entries truncated series in q.
// A polynomial system knows every coefficient: Â_n = 0 past the stored order.
class PoleODE {
public:
    PoleODE(std::vector<std::vector<TruncSeries>> A, bool polynomial = false);
    static PoleODE constant(const RMatrix& A0);

    int dim() const { return static_cast<int>(a_.size()); }
    int order() const;  // coefficients Â_n are known for n < order
    bool polynomial() const { return poly_; }
    RMatrix coeff(int n) const;  // Â_n; throws past the order unless polynomial
    const TruncSeries& entry(int i, int j) const;

    std::vector<std::vector<std::complex<double>>> eval(std::complex<double> q) const;  // truncated sum

private:
    std::vector<std::vector<TruncSeries>> a_;
    bool poly_;
};

Rational norm1(const RVector& v);
Rational norm1(const RMatrix& m);  // induced by the vector 1-norm: largest column sum

// Modes psi_n for n = 0..K.
struct FormalSolution {
    std::vector<RVector> modes;
    RVector eval(const Rational& q) const;  // partial sum
};

class ResonanceError : public std::runtime_error {
public:
    ResonanceError(int n, std::vector<RVector> kernel);
    int n() const { return n_; }
    const std::vector<RVector>& kernel() const { return kernel_; }

private:
    int n_;
    std::vector<RVector> kernel_;
};

// Largest n >= 0 with n - Â_0 singular, or -1.
int resonance_bound(const PoleODE& ode);

// (n - Â_0) psi_n = sum_{j<n} Â_{n-j} psi_j. A seed fixes psi_n and must satisfy
// the recursion; a singular n without a seed raises ResonanceError.
FormalSolution formal_solve(const PoleODE& ode, const std::map<int, RVector>& seeds, int K);

// n psi_n - sum_{j<=n} Â_{n-j} psi_j, which is zero for a solution.
RVector recursion_residual(const PoleODE& ode, const FormalSolution& s, int n);

// alpha >= sup_{|q| <= r1} ||A||, beta >= sup_{n > M} n ||(n - Â_0)^{-1}||,
// so r1^n ||psi_n|| <= (alpha beta / n) sum_{j<n} r1^j ||psi_j|| for n > M and
// ||psi_n|| <= c gamma^n r1^{-n} with gamma = 1 + alpha beta.
struct RadiusEstimate {
    Rational r1;
    Rational alpha;
    Rational beta;
    Rational gamma;
    Rational r0;  // r1 / (2 gamma)
    int resonance = -1;
};

class NoMajorantError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// alpha is derived from the coefficients when A is polynomial, otherwise it
// must be supplied; a supplied alpha is checked against Cauchy's bound
// ||Â_n|| <= alpha r1^{-n} on every known coefficient.
RadiusEstimate radius_estimate(const PoleODE& ode, const Rational& r1, std::optional<Rational> alpha = {});

struct GrowthReport {
    bool pass = false;
    int base = 0;    // max(M, 0)
    Rational c;      // S_base gamma^{-base}, S_n = sum_{j<=n} r1^j ||psi_j||
    std::optional<int> violation;  // first n breaking either inequality
};
GrowthReport growth_check(const RadiusEstimate& est, const FormalSolution& s);

// Bound on |psi(q) - sum_{n<=K} psi_n q^n|: c x^{K+1}/(1 - x), x = gamma |q| / r1.
double tail_bound(const RadiusEstimate& est, const GrowthReport& g, int K, double abs_q);

using CVector = std::vector<std::complex<double>>;
using CMatrix = std::vector<CVector>;
using MatrixEvaluator = std::function<CMatrix(std::complex<double>)>;

// Piecewise-linear path through the punctured disc, steps per segment.
struct NumericPath {
    std::vector<std::complex<double>> waypoints;
    int steps = 0;
};

struct NumericResult {
    CVector value;        // with 2 * steps per segment
    double error = 0.0;   // max |value - value at half the steps| / 15
};

// Classical RK4 for d psi/dq = A(q) psi / q from the first waypoint to the last.
NumericResult numeric_continue(const MatrixEvaluator& A, const CVector& psi_a, const NumericPath& path);
NumericResult numeric_continue(const PoleODE& ode, const CVector& psi_a, const NumericPath& path);

}  // namespace voa
