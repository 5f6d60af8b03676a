#include "voa/coord_change.hpp"

#include <stdexcept>

namespace voa {

namespace {

Rational scale_by(const Rational& x, const Rational& k) { return x * k; }
TruncSeries scale_by(const TruncSeries& x, const Rational& k) { return x.scaled(k); }

// Coefficient of t^deg in exp(sum_{m=1}^{top} c_m t^{m+1} d/dt) t.
template <class R>
R exp_flow_coeff(const std::vector<R>& c, int top, int deg, const R& zero, const R& one) {
    std::vector<R> term(static_cast<std::size_t>(deg + 1), zero);
    term[1] = one;
    R total = deg == 1 ? one : zero;
    for (int k = 1; k < deg; ++k) {
        std::vector<R> next(static_cast<std::size_t>(deg + 1), zero);
        for (int d = 2; d <= deg; ++d)
            for (int m = 1; m <= top && m < d; ++m) {
                const R& t = term[static_cast<std::size_t>(d - m)];
                next[static_cast<std::size_t>(d)] =
                    next[static_cast<std::size_t>(d)] + scale_by(c[static_cast<std::size_t>(m)] * t, Rational(d - m, k));
            }
        term = std::move(next);
        total = total + term[static_cast<std::size_t>(deg)];
    }
    return total;
}

// a[n-1] = coefficient of t^n. Returns c_0..c_{K}, K = a.size() - 1.
template <class R>
std::vector<R> solve_flow(const std::vector<R>& a, const R& zero, const R& one) {
    std::vector<R> c(a.size(), zero);
    c[0] = a[0];
    R inv_c0 = one / a[0];
    for (std::size_t n = 1; n < a.size(); ++n) {
        // the t^{n+1} coefficient is c0 (c_n + terms in c_1..c_{n-1})
        R rest = exp_flow_coeff(c, static_cast<int>(n) - 1, static_cast<int>(n) + 1, zero, one);
        c[n] = a[n] * inv_c0 - rest;
    }
    return c;
}

}  // namespace

std::vector<Rational> extract_coeffs(const TruncSeries& rho) {
    if (rho.order() < 2) throw std::domain_error("need rho known at least to first order");
    if (!rho.coeff(0).is_zero()) throw std::domain_error("rho(0) != 0: not a coordinate change at 0");
    if (rho.coeff(1).is_zero()) throw std::domain_error("rho'(0) = 0: not in the coordinate group");
    std::vector<Rational> a;
    for (int n = 1; n < rho.order(); ++n) a.push_back(rho.coeff(n));
    return solve_flow<Rational>(a, Rational(0), Rational(1));
}

TruncSeries reconstruct_series(const std::vector<Rational>& coeffs, const std::string& var) {
    if (coeffs.empty() || coeffs[0].is_zero()) throw std::domain_error("reconstruction needs c0 != 0");
    int K = static_cast<int>(coeffs.size()) - 1;
    std::vector<Rational> p(static_cast<std::size_t>(K + 2));
    for (int d = 1; d <= K + 1; ++d)
        p[static_cast<std::size_t>(d)] = coeffs[0] * exp_flow_coeff<Rational>(coeffs, K, d, Rational(0), Rational(1));
    return TruncSeries(var, 0, K + 2, std::move(p)).normalized();
}

std::vector<TruncSeries> extract_coeffs_over_series(const std::vector<TruncSeries>& a) {
    if (a.empty()) throw std::invalid_argument("no coefficients");
    int order = a[0].order();
    for (const auto& s : a) order = std::min(order, s.order());
    if (order < 1 || a[0].coeff(0).is_zero())
        throw std::domain_error("leading coefficient must be an invertible power series");
    const std::string& var = a[0].var();
    return solve_flow<TruncSeries>(a, TruncSeries::zero(var, order),
                                   TruncSeries::constant(var, Rational(1), order));
}

CoordChange::CoordChange(TruncSeries rho) : rho_(std::move(rho)), c_(extract_coeffs(rho_)) {}

GradedVector U_apply(const CoordChange& rho, const GradedVector& w, const VirasoroAction& act) {
    int top = w.max_weight();
    if (rho.known_raising() < top)
        throw std::out_of_range("coordinate change known to c_" + std::to_string(rho.known_raising()) +
                                " but the vector reaches weight " + std::to_string(top));
    std::vector<Rational> c = rho.raising();
    if (top >= 0) c.resize(static_cast<std::size_t>(top));
    return apply_exp_raising(c, rho.c0(), w, act);
}

GradedVector U_inverse_apply(const CoordChange& rho, const GradedVector& w,
                             const VirasoroAction& act) {
    int top = w.max_weight();
    if (rho.known_raising() < top)
        throw std::out_of_range("coordinate change known to c_" + std::to_string(rho.known_raising()) +
                                " but the vector reaches weight " + std::to_string(top));
    std::vector<Rational> c = rho.raising();
    if (top >= 0) c.resize(static_cast<std::size_t>(top));
    for (auto& x : c) x = -x;
    return apply_exp_raising(c, Rational(1), apply_grading_power(Rational(1) / rho.c0(), w), act);
}

TruncSeries gamma_series(const Rational& xi, int order, const std::string& var) {
    if (xi.is_zero()) throw std::domain_error("gamma_xi needs xi != 0");
    std::vector<Rational> c(static_cast<std::size_t>(std::max(order, 0)));
    for (int n = 1; n < order; ++n)
        c[static_cast<std::size_t>(n)] = (n % 2 ? Rational(-1) : Rational(1)) / pow(xi, n + 1);
    return TruncSeries(var, 0, std::max(order, 0), std::move(c)).normalized();
}

GradedVector U_gamma(const Rational& xi, const GradedVector& w, const VirasoroAction& act) {
    GradedVector x = apply_grading_power(-Rational(1) / (xi * xi), w);
    return apply_exp_raising({xi}, Rational(1), x, act);
}

bool gamma_relation_check(const Rational& xi, const Module& m, int cap) {
    CoordChange g(gamma_series(xi, cap + 2));
    CoordChange g1(gamma_series(Rational(1), cap + 2));
    for (int n = 0; n <= cap; ++n)
        for (const auto& l : m.basis(n)) {
            GradedVector w(l);
            GradedVector lhs = U_apply(g, apply_grading_power(xi, w), m);
            GradedVector rhs = apply_grading_power(Rational(1) / xi, U_apply(g1, w, m));
            if (lhs != rhs) return false;
        }
    return true;
}

GradedVector derivative_at_identity(const LinearFamily& family, const GradedVector& w,
                                    const VirasoroAction& act) {
    const TruncSeries& b = family.base;
    if (b.order() < 2 || b.coeff(0) != Rational(0) || b.coeff(1) != Rational(1))
        throw std::invalid_argument("family does not start at the identity coordinate");
    for (int e = 2; e < b.order(); ++e)
        if (!b.coeff(e).is_zero()) throw std::invalid_argument("family does not start at the identity coordinate");
    int top = w.max_weight();
    if (family.slope.order() < top + 2)
        throw std::out_of_range("slope series too short for weight " + std::to_string(top));
    GradedVector r;
    for (int n = 1; n <= top + 1; ++n) {
        Rational s = family.slope.coeff(n);
        if (!s.is_zero()) r += act.L_tilde(n - 1, w).scaled(s);
    }
    return r;
}

GradedVector VecSeries::coeff(int e) const {
    if (e >= order) throw std::out_of_range("vector series coefficient beyond truncation");
    auto it = coeffs.find(e);
    return it == coeffs.end() ? GradedVector() : it->second;
}

namespace {

using SeriesVector = std::map<Label, TruncSeries>;

void add_to(SeriesVector& v, const Label& l, const TruncSeries& s) {
    auto it = v.find(l);
    if (it == v.end()) v.emplace(l, s);
    else it->second = it->second + s;
}

SeriesVector apply_L(int n, const SeriesVector& v, const VirasoroAction& act) {
    SeriesVector r;
    for (const auto& [l, s] : v) {
        GradedVector img = act.L(n, GradedVector(l));
        for (const auto& [l2, a] : img.terms()) add_to(r, l2, s.scaled(a));
    }
    return r;
}

}  // namespace

HuangResult huang_conjugation_check(const TruncSeries& alpha, const GradedVector& v,
                                    const GradedVector& w, const Module& m, int z_order) {
    const std::string& z = alpha.var();
    int wv = std::max(v.max_weight(), 0), ww = std::max(w.max_weight(), 0);
    int e_min = -(wv + ww);
    int P = z_order - e_min;  // relative precision needed everywhere
    int needed = P + wv + 1;
    if (alpha.order() < needed)
        throw std::out_of_range("alpha known to order " + std::to_string(alpha.order()) +
                                ", need " + std::to_string(needed));
    if (alpha.valuation() != 1) throw std::domain_error("alpha must vanish to first order exactly");
    CoordChange cc(alpha);

    HuangResult res;
    res.lhs.floor = res.rhs.floor = e_min;
    res.lhs.order = res.rhs.order = z_order;

    GradedVector x = U_inverse_apply(cc, w, m);
    for (int e = e_min; e < z_order; ++e) {
        GradedVector y = U_apply(cc, m.mode(v, -e - 1, x), m);
        if (!y.is_zero()) res.lhs.coeffs[e] = y;
    }

    // rho_z(t) = sum_n t^n alpha^{(n)}(z)/n!
    std::vector<TruncSeries> a;
    TruncSeries d = alpha;
    for (int n = 1; n <= wv + 1; ++n) {
        d = d.derivative();
        a.push_back(d.scaled(Rational(1) / factorial(n)).truncated(P));
    }
    std::vector<TruncSeries> c = extract_coeffs_over_series(a);

    // U(rho_z) acts on v in V, not on the module
    const Module& V = m.algebra().adjoint();
    SeriesVector uv;
    for (const auto& [l, s] : v.terms()) add_to(uv, l, TruncSeries::constant(z, s, P));
    SeriesVector term = uv;
    for (int k = 1; k <= wv && !term.empty(); ++k) {
        SeriesVector next;
        for (int n = 1; n <= wv; ++n)
            for (const auto& [l, s] : apply_L(n, term, V)) add_to(next, l, (c[static_cast<std::size_t>(n)] * s).scaled(Rational(1, k)));
        term = std::move(next);
        for (const auto& [l, s] : term) add_to(uv, l, s);
    }
    for (auto& [l, s] : uv) s = s * series_pow(c[0], l.weight());

    TruncSeries alpha_p = alpha.truncated(P + 1);
    std::map<int, GradedVector> acc;
    int achieved = z_order;
    for (const auto& [l, s] : uv) {
        if (s.is_zero()) continue;
        for (int k = l.weight() + ww - 1; k >= -z_order; --k) {
            GradedVector y = m.mode(GradedVector(l), k, w);
            if (y.is_zero()) continue;
            TruncSeries f = s * series_pow(alpha_p, -k - 1);
            achieved = std::min(achieved, f.order());
            for (int e = f.floor(); e < f.order() && e < z_order; ++e) {
                Rational coef = f.coeff(e);
                if (!coef.is_zero()) acc[e] += y.scaled(coef);
            }
        }
    }
    if (achieved < z_order)
        throw std::out_of_range("right-hand side only determined to z^" + std::to_string(achieved));
    for (auto& [e, y] : acc)
        if (!y.is_zero()) res.rhs.coeffs[e] = y;
    res.pass = res.lhs == res.rhs;
    return res;
}

}  // namespace voa
