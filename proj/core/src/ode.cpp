#include "voa/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace voa {

namespace {

RMatrix shifted_identity(const RMatrix& A0, int n) {
    RMatrix B = A0;
    for (std::size_t i = 0; i < B.size(); ++i) {
        for (auto& x : B[i]) x = -x;
        B[i][i] += Rational(n);
    }
    return B;
}

RVector mat_vec(const RMatrix& A, const RVector& v) {
    RVector out(A.size());
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            if (!A[i][j].is_zero()) out[i] += A[i][j] * v[j];
    return out;
}

RMatrix inverse(const RMatrix& B) {
    int d = static_cast<int>(B.size());
    RMatrix inv(B.size(), RVector(B.size()));
    for (int j = 0; j < d; ++j) {
        RVector e(B.size());
        e[static_cast<std::size_t>(j)] = Rational(1);
        LinearSolution s = solve_linear(B, e, d);
        if (!s.consistent || s.rank < d) throw std::domain_error("matrix is singular");
        for (int i = 0; i < d; ++i) inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s.x[static_cast<std::size_t>(i)];
    }
    return inv;
}

long ceil_of(const Rational& r) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), r.num().get_mpz_t(), r.den().get_mpz_t());
    return q.get_si();
}

}  // namespace

PoleODE::PoleODE(std::vector<std::vector<TruncSeries>> A, bool polynomial) : a_(std::move(A)), poly_(polynomial) {
    if (a_.empty()) throw std::invalid_argument("empty system");
    for (const auto& row : a_) {
        if (row.size() != a_.size()) throw std::invalid_argument("A must be square");
        for (const auto& e : row)
            if (e.valuation() < 0) throw std::invalid_argument("A has a pole at q = 0: " + e.str());
    }
}

PoleODE PoleODE::constant(const RMatrix& A0) {
    std::vector<std::vector<TruncSeries>> a;
    for (const auto& row : A0) {
        a.emplace_back();
        for (const auto& x : row) a.back().push_back(TruncSeries::polynomial("q", {x}, 1));
    }
    return PoleODE(std::move(a), true);
}

int PoleODE::order() const {
    int o = std::numeric_limits<int>::max();
    for (const auto& row : a_)
        for (const auto& e : row) o = std::min(o, e.order());
    return o;
}

RMatrix PoleODE::coeff(int n) const {
    RMatrix m(a_.size(), RVector(a_.size()));
    if (n < 0) return m;
    if (n >= order()) {
        if (poly_) return m;
        throw std::out_of_range("coefficient q^" + std::to_string(n) + " of A is not known");
    }
    for (std::size_t i = 0; i < a_.size(); ++i)
        for (std::size_t j = 0; j < a_.size(); ++j) m[i][j] = a_[i][j].coeff(n);
    return m;
}

const TruncSeries& PoleODE::entry(int i, int j) const {
    return a_.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j));
}

CMatrix PoleODE::eval(std::complex<double> q) const {
    CMatrix m(a_.size(), CVector(a_.size()));
    int o = order();
    for (std::size_t i = 0; i < a_.size(); ++i)
        for (std::size_t j = 0; j < a_.size(); ++j) {
            std::complex<double> acc = 0.0, p = 1.0;
            for (int n = 0; n < o; ++n) {
                acc += a_[i][j].coeff(n).to_double() * p;
                p *= q;
            }
            m[i][j] = acc;
        }
    return m;
}

Rational norm1(const RVector& v) {
    Rational s;
    for (const auto& x : v) s += abs(x);
    return s;
}

Rational norm1(const RMatrix& m) {
    Rational best;
    if (m.empty()) return best;
    for (std::size_t j = 0; j < m.front().size(); ++j) {
        Rational col;
        for (const auto& row : m) col += abs(row[j]);
        best = std::max(best, col);
    }
    return best;
}

RVector FormalSolution::eval(const Rational& q) const {
    RVector out(modes.empty() ? 0 : modes.front().size());
    Rational p(1);
    for (const auto& m : modes) {
        for (std::size_t i = 0; i < m.size(); ++i) out[i] += m[i] * p;
        p *= q;
    }
    return out;
}

ResonanceError::ResonanceError(int n, std::vector<RVector> kernel)
    : std::runtime_error("resonance at n = " + std::to_string(n) + ": n - A_0 has a kernel of dimension " +
                         std::to_string(kernel.size()) + "; the mode psi_" + std::to_string(n) +
                         " needs a seed"),
      n_(n),
      kernel_(std::move(kernel)) {}

int resonance_bound(const PoleODE& ode) {
    RMatrix A0 = ode.coeff(0);
    // eigenvalues are bounded by any induced norm
    for (long n = ceil_of(norm1(A0)); n >= 0; --n)
        if (rank(shifted_identity(A0, static_cast<int>(n)), ode.dim()) < ode.dim()) return static_cast<int>(n);
    return -1;
}

FormalSolution formal_solve(const PoleODE& ode, const std::map<int, RVector>& seeds, int K) {
    if (K < 0) throw std::invalid_argument("order must be nonnegative");
    int d = ode.dim();
    for (const auto& [n, v] : seeds) {
        if (n < 0 || n > K) throw std::invalid_argument("seed index " + std::to_string(n) + " outside 0..K");
        if (static_cast<int>(v.size()) != d) throw std::invalid_argument("seed dimension mismatch");
    }
    RMatrix A0 = ode.coeff(0);
    FormalSolution s;
    for (int n = 0; n <= K; ++n) {
        RVector rhs(static_cast<std::size_t>(d));
        for (int j = 0; j < n; ++j) {
            RVector t = mat_vec(ode.coeff(n - j), s.modes[static_cast<std::size_t>(j)]);
            for (int i = 0; i < d; ++i) rhs[static_cast<std::size_t>(i)] += t[static_cast<std::size_t>(i)];
        }
        RMatrix B = shifted_identity(A0, n);
        auto seed = seeds.find(n);
        if (seed != seeds.end()) {
            if (mat_vec(B, seed->second) != rhs)
                throw std::invalid_argument("seed for psi_" + std::to_string(n) + " does not satisfy the recursion");
            s.modes.push_back(seed->second);
            continue;
        }
        LinearSolution sol = solve_linear(B, rhs, d);
        if (sol.rank < d) throw ResonanceError(n, nullspace(B, d));
        s.modes.push_back(sol.x);
    }
    return s;
}

RVector recursion_residual(const PoleODE& ode, const FormalSolution& s, int n) {
    const RVector& psi = s.modes.at(static_cast<std::size_t>(n));
    RVector r(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) r[i] = Rational(n) * psi[i];
    for (int j = 0; j <= n; ++j) {
        RVector t = mat_vec(ode.coeff(n - j), s.modes[static_cast<std::size_t>(j)]);
        for (std::size_t i = 0; i < psi.size(); ++i) r[i] -= t[i];
    }
    return r;
}

RadiusEstimate radius_estimate(const PoleODE& ode, const Rational& r1, std::optional<Rational> alpha) {
    if (r1.sign() <= 0) throw std::invalid_argument("r1 must be positive");
    RadiusEstimate est;
    est.r1 = r1;
    int known = ode.order();
    if (alpha) {
        if (alpha->sign() < 0) throw NoMajorantError("a sup-norm bound cannot be negative");
        for (int n = 0; n < known; ++n)
            if (norm1(ode.coeff(n)) > *alpha * pow(r1, -n))
                throw NoMajorantError("alpha = " + alpha->str() + " violates Cauchy's bound at q^" + std::to_string(n));
        est.alpha = *alpha;
    } else if (ode.polynomial()) {
        for (int n = 0; n < known; ++n) est.alpha += norm1(ode.coeff(n)) * pow(r1, n);
    } else {
        throw NoMajorantError("A is truncated: supply a bound on sup ||A|| over |q| <= " + r1.str());
    }

    est.resonance = resonance_bound(ode);
    RMatrix A0 = ode.coeff(0);
    Rational a = norm1(A0);
    // past 2a, ||n (n - A_0)^{-1}|| <= 1 / (1 - a/n) by the Neumann series
    long far = std::max<long>(est.resonance + 1, ceil_of(Rational(2) * a));
    est.beta = Rational(1) / (Rational(1) - a / Rational(far + 1));
    for (long n = std::max(est.resonance + 1, 1); n <= far; ++n) {
        RMatrix inv = inverse(shifted_identity(A0, static_cast<int>(n)));
        est.beta = std::max(est.beta, Rational(n) * norm1(inv));
    }
    est.gamma = Rational(1) + est.alpha * est.beta;
    est.r0 = r1 / (Rational(2) * est.gamma);
    return est;
}

GrowthReport growth_check(const RadiusEstimate& est, const FormalSolution& s) {
    GrowthReport g;
    g.base = std::max(est.resonance, 0);
    Rational ab = est.alpha * est.beta;
    Rational S;
    int K = static_cast<int>(s.modes.size()) - 1;
    for (int n = 0; n <= std::min(g.base, K); ++n) S += pow(est.r1, n) * norm1(s.modes[static_cast<std::size_t>(n)]);
    g.c = S * pow(est.gamma, -g.base);
    g.pass = true;
    for (int n = g.base + 1; n <= K; ++n) {
        Rational size = norm1(s.modes[static_cast<std::size_t>(n)]);
        Rational scaled = pow(est.r1, n) * size;
        bool recursion_bound = scaled <= ab / Rational(n) * S;
        bool geometric = size <= g.c * pow(est.gamma, n) * pow(est.r1, -n);
        if (!recursion_bound || !geometric) {
            g.pass = false;
            g.violation = n;
            break;
        }
        S += scaled;
    }
    return g;
}

double tail_bound(const RadiusEstimate& est, const GrowthReport& g, int K, double abs_q) {
    double x = est.gamma.to_double() * abs_q / est.r1.to_double();
    if (x >= 1.0) return std::numeric_limits<double>::infinity();
    return g.c.to_double() * std::pow(x, K + 1) / (1.0 - x);
}

namespace {

CVector apply(const CMatrix& A, const CVector& v, std::complex<double> scale) {
    CVector out(v.size());
    for (std::size_t i = 0; i < A.size(); ++i) {
        std::complex<double> acc = 0.0;
        for (std::size_t j = 0; j < v.size(); ++j) acc += A[i][j] * v[j];
        out[i] = acc * scale;
    }
    return out;
}

CVector axpy(const CVector& x, const CVector& k, std::complex<double> h) {
    CVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + h * k[i];
    return out;
}

double distance_to_origin(std::complex<double> a, std::complex<double> b) {
    std::complex<double> d = b - a;
    double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(a);
    double t = std::clamp(-(a.real() * d.real() + a.imag() * d.imag()) / len2, 0.0, 1.0);
    return std::abs(a + t * d);
}

CVector integrate(const MatrixEvaluator& A, CVector psi, const std::vector<std::complex<double>>& pts, int steps) {
    for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
        std::complex<double> a = pts[s], dq = pts[s + 1] - pts[s];
        if (dq == 0.0) continue;
        double h = 1.0 / steps;
        // d psi/dt = dq A(q) psi / q along q = a + t dq
        auto f = [&](double t, const CVector& y) {
            std::complex<double> q = a + t * dq;
            return apply(A(q), y, dq / q);
        };
        for (int k = 0; k < steps; ++k) {
            double t = k * h;
            CVector k1 = f(t, psi);
            CVector k2 = f(t + h / 2, axpy(psi, k1, h / 2));
            CVector k3 = f(t + h / 2, axpy(psi, k2, h / 2));
            CVector k4 = f(t + h, axpy(psi, k3, h));
            for (std::size_t i = 0; i < psi.size(); ++i) psi[i] += h / 6 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    return psi;
}

}  // namespace

NumericResult numeric_continue(const MatrixEvaluator& A, const CVector& psi_a, const NumericPath& path) {
    if (path.waypoints.size() < 2) throw std::invalid_argument("a path needs at least two waypoints");
    if (path.steps < 1) throw std::invalid_argument("step count must be positive");
    for (std::size_t s = 0; s + 1 < path.waypoints.size(); ++s) {
        std::complex<double> a = path.waypoints[s], b = path.waypoints[s + 1];
        double scale = std::max({1.0, std::abs(a), std::abs(b)});
        if (distance_to_origin(a, b) < 1e-8 * scale)
            throw std::domain_error("path segment " + std::to_string(s) + " comes within 1e-8 of the pole at q = 0");
        double step = std::abs(b - a) / (2.0 * path.steps);
        if (step > 0.0 && step < 1e-14 * scale)
            throw std::underflow_error("step size underflows on segment " + std::to_string(s));
    }
    CVector coarse = integrate(A, psi_a, path.waypoints, path.steps);
    NumericResult r;
    r.value = integrate(A, psi_a, path.waypoints, 2 * path.steps);
    for (std::size_t i = 0; i < r.value.size(); ++i) {
        if (!std::isfinite(std::abs(r.value[i]))) throw std::range_error("numeric solution is not finite");
        r.error = std::max(r.error, std::abs(r.value[i] - coarse[i]) / 15.0);
    }
    return r;
}

NumericResult numeric_continue(const PoleODE& ode, const CVector& psi_a, const NumericPath& path) {
    if (static_cast<int>(psi_a.size()) != ode.dim()) throw std::invalid_argument("initial value dimension mismatch");
    return numeric_continue([&](std::complex<double> q) { return ode.eval(q); }, psi_a, path);
}

}  // namespace voa
