#include "voa/schwarzian.hpp"

#include <stdexcept>

namespace voa {

TruncSeries schwarzian(const TruncSeries& f) {
    TruncSeries d1 = f.derivative();
    if (d1.order() < 1 || d1.coeff(0).is_zero() || d1.normalized().floor() != 0)
        throw std::domain_error("Schwarzian needs f'(0) != 0");
    TruncSeries d2 = d1.derivative(), d3 = d2.derivative();
    TruncSeries inv = series_inverse(d1);
    TruncSeries r = d2 * inv;
    return d3 * inv - (r * r).scaled(Rational(3, 2));
}

TruncSeries mobius_series(const Rational& a, const Rational& b, const Rational& c,
                          const Rational& d, int order, const std::string& var) {
    if (d.is_zero()) throw std::domain_error("Mobius map has a pole at 0");
    if ((a * d - b * c).is_zero()) throw std::domain_error("degenerate Mobius map");
    TruncSeries num = TruncSeries::polynomial(var, {b, a}, order);
    TruncSeries den = TruncSeries::polynomial(var, {d, c}, order);
    return num / den;
}

TruncSeries mobius_after(const Rational& a, const Rational& b, const Rational& c,
                         const Rational& d, const TruncSeries& f) {
    if ((a * d - b * c).is_zero()) throw std::domain_error("degenerate Mobius map");
    TruncSeries one = TruncSeries::constant(f.var(), Rational(1), f.order());
    return (f.scaled(a) + one.scaled(b)) / (f.scaled(c) + one.scaled(d));
}

TruncSeries exp_minus_one(const Rational& a, int order, const std::string& var) {
    std::vector<Rational> c(static_cast<std::size_t>(order));
    for (int n = 1; n < order; ++n) c[static_cast<std::size_t>(n)] = pow(a, n) / factorial(n);
    return TruncSeries(var, 0, order, std::move(c)).normalized();
}

TruncSeries relative_schwarzian(const TruncSeries& a, const TruncSeries& b) {
    TruncSeries b_in_a = series_compose(b, series_comp_inverse(a));
    return series_compose(schwarzian(b_in_a), a);
}

CocycleResult cocycle_check(const TruncSeries& f, const TruncSeries& g) {
    CocycleResult r;
    TruncSeries dg = g.derivative();
    r.chain_lhs = schwarzian(series_compose(f, g));
    r.chain_rhs = dg * dg * series_compose(schwarzian(f), g) + schwarzian(g);
    r.chain_rule = agree_to(r.chain_lhs, r.chain_rhs, std::min(r.chain_lhs.order(), r.chain_rhs.order()));
    TruncSeries back = series_compose(schwarzian(series_comp_inverse(g)), g) * dg * dg;
    TruncSeries sg = schwarzian(g);
    r.antisymmetry = agree_to(back, -sg, std::min(back.order(), sg.order()));
    return r;
}

TruncSeries triple_cocycle(const TruncSeries& f, const TruncSeries& g, const TruncSeries& h) {
    auto term = [](const TruncSeries& a, const TruncSeries& b) {
        TruncSeries da = a.derivative();
        return relative_schwarzian(a, b) * da * da;
    };
    return term(f, g) + term(g, h) + term(h, f);
}

ConformalTransition conformal_transition(const CoordChange& rho, const VertexAlgebra& alg) {
    GradedVector c = alg.conformal_vector();
    GradedVector u = U_apply(rho, c, alg.adjoint());
    ConformalTransition t;
    // c is a multiple of one basis label; read its coefficient off that label
    const auto& [label, unit] = *c.terms().begin();
    t.conformal = u.coeff(label) / unit;
    t.vacuum = u.coeff(Label{});
    GradedVector rest = u - c.scaled(t.conformal) - alg.vacuum().scaled(t.vacuum);
    if (!rest.is_zero()) throw std::logic_error("U(rho) c left span{c, 1}: " + rest.str());
    t.expected_conformal = rho.c0() * rho.c0();
    t.expected_vacuum = alg.central_charge() / Rational(12) * schwarzian(rho.series()).coeff(0);
    return t;
}

namespace {

// h'' = -Q h / 2 with h(0) = h0, h'(0) = h1, known to order(Q) + 2.
TruncSeries solve_second_order(const TruncSeries& Q, const Rational& h0, const Rational& h1) {
    int K = Q.order();
    std::vector<Rational> h(static_cast<std::size_t>(K + 2));
    h[0] = h0;
    if (K + 2 > 1) h[1] = h1;
    for (int n = 0; n + 2 < K + 2; ++n) {
        Rational s;
        for (int j = 0; j <= n; ++j) s += Q.coeff(j) * h[static_cast<std::size_t>(n - j)];
        h[static_cast<std::size_t>(n + 2)] = -s / Rational(2 * (n + 2) * (n + 1));
    }
    return TruncSeries(Q.var(), 0, K + 2, std::move(h)).normalized();
}

}  // namespace

TruncSeries uniformize(const TruncSeries& Q) {
    if (!Q.is_zero() && Q.normalized().floor() < 0)
        throw std::domain_error("uniformize needs a holomorphic Q");
    if (Q.order() < 1) throw std::out_of_range("Q is too short to verify any coefficient");
    TruncSeries h1 = solve_second_order(Q, Rational(1), Rational(0));
    TruncSeries h2 = solve_second_order(Q, Rational(0), Rational(1));
    TruncSeries f = h2 / h1;
    TruncSeries s = schwarzian(f);
    int check = std::min(s.order(), Q.order());
    if (check < 1) throw std::out_of_range("Q is too short to verify any coefficient");
    if (!agree_to(s, Q, check))
        throw std::logic_error("uniformization failed its own check: S f = " + s.str());
    return f;
}

Rational exponential_schwarzian_pi_squared(const Rational& k) {
    // S(e^{az} - 1) = -a^2/2, and a^2 = (k pi i)^2 = -k^2 pi^2
    Rational a_squared_over_pi_squared = -(k * k);
    return -a_squared_over_pi_squared / Rational(2);
}

}  // namespace voa
