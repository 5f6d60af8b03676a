#include "voa/series.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace voa {

namespace {

void require_same_var(const TruncSeries& a, const TruncSeries& b) {
    if (a.var() != b.var())
        throw std::invalid_argument("series variable mismatch: " + a.var() + " vs " + b.var());
}

}  // namespace

TruncSeries::TruncSeries(std::string var, int floor, int order, std::vector<Rational> coeffs)
    : var_(std::move(var)), floor_(floor), order_(order), c_(std::move(coeffs)) {
    if (order_ < floor_) throw std::invalid_argument("series order below floor");
    if (static_cast<long>(c_.size()) != static_cast<long>(order_) - floor_)
        throw std::invalid_argument("series coefficient count does not match order - floor");
}

TruncSeries TruncSeries::zero(std::string var, int order) {
    return TruncSeries(std::move(var), order, order, {});
}

TruncSeries TruncSeries::constant(std::string var, const Rational& a, int order) {
    return monomial(std::move(var), 0, a, order);
}

TruncSeries TruncSeries::monomial(std::string var, int e, const Rational& a, int order) {
    if (e >= order || a.is_zero()) return zero(std::move(var), order);
    std::vector<Rational> c(static_cast<std::size_t>(order - e));
    c[0] = a;
    return TruncSeries(std::move(var), e, order, std::move(c));
}

TruncSeries TruncSeries::polynomial(std::string var, const std::vector<Rational>& p, int order) {
    if (order < 0) throw std::invalid_argument("polynomial order must be nonnegative");
    std::vector<Rational> c(static_cast<std::size_t>(order));
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (static_cast<int>(i) < order) {
            c[i] = p[i];
        } else if (!p[i].is_zero()) {
            throw std::invalid_argument("polynomial degree exceeds declared order");
        }
    }
    return TruncSeries(std::move(var), 0, order, std::move(c)).normalized();
}

Rational TruncSeries::coeff(int e) const {
    if (e >= order_)
        throw std::out_of_range("coefficient of " + var_ + "^" + std::to_string(e) +
                                " is beyond the truncation order " + std::to_string(order_));
    if (e < floor_) return Rational(0);
    return c_[static_cast<std::size_t>(e - floor_)];
}

int TruncSeries::valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (!c_[i].is_zero()) return floor_ + static_cast<int>(i);
    return order_;
}

bool TruncSeries::is_zero() const { return valuation() == order_; }

TruncSeries TruncSeries::normalized() const {
    int v = valuation();
    if (v == floor_) return *this;
    return TruncSeries(var_, v, order_,
                       std::vector<Rational>(c_.begin() + (v - floor_), c_.end()));
}

TruncSeries TruncSeries::truncated(int order) const {
    if (order > order_) throw std::invalid_argument("cannot extend a truncated series");
    if (order <= floor_) return zero(var_, order);
    return TruncSeries(var_, floor_, order,
                       std::vector<Rational>(c_.begin(), c_.begin() + (order - floor_)))
        .normalized();
}

TruncSeries TruncSeries::shifted(int k) const { return TruncSeries(var_, floor_ + k, order_ + k, c_); }

TruncSeries TruncSeries::scaled(const Rational& a) const {
    if (a.is_zero()) return zero(var_, order_);
    std::vector<Rational> c = c_;
    for (auto& x : c) x *= a;
    return TruncSeries(var_, floor_, order_, std::move(c));
}

TruncSeries TruncSeries::derivative() const {
    std::vector<Rational> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] * Rational(floor_ + static_cast<int>(i));
    return TruncSeries(var_, floor_ - 1, order_ - 1, std::move(c)).normalized();
}

TruncSeries TruncSeries::renamed(std::string var) const {
    return TruncSeries(std::move(var), floor_, order_, c_);
}

bool operator==(const TruncSeries& a, const TruncSeries& b) {
    TruncSeries x = a.normalized(), y = b.normalized();
    return x.var_ == y.var_ && x.floor_ == y.floor_ && x.order_ == y.order_ && x.c_ == y.c_;
}

std::string TruncSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        const Rational& a = c_[i];
        if (a.is_zero()) continue;
        int e = floor_ + static_cast<int>(i);
        bool neg = a.sign() < 0;
        Rational m = abs(a);
        if (!first) os << (neg ? " - " : " + ");
        else if (neg) os << "-";
        first = false;
        bool unit = m == Rational(1);
        if (e == 0) os << m;
        else {
            if (!unit) os << m << "*";
            os << var_;
            if (e != 1) os << "^" << e;
        }
    }
    if (first) os << "0";
    os << " + O(" << var_ << "^" << order_ << ")";
    return os.str();
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    require_same_var(a, b);
    int order = std::min(a.order(), b.order());
    int floor = std::min({a.floor(), b.floor(), order});
    std::vector<Rational> c(static_cast<std::size_t>(order - floor));
    for (int e = floor; e < order; ++e) c[static_cast<std::size_t>(e - floor)] = a.coeff(e) + b.coeff(e);
    return TruncSeries(a.var(), floor, order, std::move(c)).normalized();
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return a + (-b); }

TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b) {
    require_same_var(a, b);
    int va = a.valuation(), vb = b.valuation();
    int order = std::min(a.order() + vb, b.order() + va);
    if (a.is_zero() || b.is_zero()) return TruncSeries::zero(a.var(), order);
    int floor = va + vb;
    std::vector<Rational> c(static_cast<std::size_t>(order - floor));
    for (int i = va; i < a.order() && i + vb < order; ++i) {
        const Rational& ai = a.coeff(i);
        if (ai.is_zero()) continue;
        for (int j = vb; j < b.order() && i + j < order; ++j) {
            const Rational& bj = b.coeff(j);
            if (!bj.is_zero()) c[static_cast<std::size_t>(i + j - floor)] += ai * bj;
        }
    }
    return TruncSeries(a.var(), floor, order, std::move(c)).normalized();
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) { return series_mul(a, b); }

TruncSeries operator*(const Rational& a, const TruncSeries& b) { return b.scaled(a); }

TruncSeries series_inverse(const TruncSeries& a) {
    if (a.is_zero()) throw std::domain_error("inverse of a series with no known nonzero term");
    TruncSeries n = a.normalized();
    int v = n.floor();
    int len = n.order() - v;  // relative precision
    const Rational& lead = n.coeffs()[0];
    std::vector<Rational> inv(static_cast<std::size_t>(len));
    inv[0] = Rational(1) / lead;
    for (int k = 1; k < len; ++k) {
        Rational s;
        for (int j = 1; j <= k; ++j) s += n.coeffs()[static_cast<std::size_t>(j)] * inv[static_cast<std::size_t>(k - j)];
        inv[static_cast<std::size_t>(k)] = -s / lead;
    }
    return TruncSeries(a.var(), -v, -v + len, std::move(inv)).normalized();
}

TruncSeries operator/(const TruncSeries& a, const TruncSeries& b) { return a * series_inverse(b); }

TruncSeries series_pow(const TruncSeries& a, int n) {
    if (n < 0) return series_pow(series_inverse(a), -n);
    TruncSeries n_a = a.normalized();
    // x^0 is exact; give it the precision a^1 would have so products stay honest
    TruncSeries result = TruncSeries::constant(a.var(), Rational(1), n_a.order() - n_a.floor());
    if (n == 0) return result;
    result = n_a;
    for (int i = 1; i < n; ++i) result = result * n_a;
    return result;
}

TruncSeries series_compose(const TruncSeries& f, const TruncSeries& g) {
    require_same_var(f, g);
    int eg = g.valuation();
    if (eg < 1) throw std::domain_error("composition needs g(0) = 0");
    TruncSeries nf = f.normalized();
    if (!nf.is_zero() && nf.floor() < 0)
        throw std::domain_error("composition needs f without negative powers");
    TruncSeries acc = TruncSeries::zero(f.var(), f.order() * eg);
    TruncSeries power = TruncSeries::constant(f.var(), Rational(1), acc.order());
    for (int k = 0; k < f.order(); ++k) {
        if (k > 0) power = power * g;
        Rational fk = f.coeff(k);
        if (!fk.is_zero()) acc = acc + power.scaled(fk);
    }
    return acc;
}

TruncSeries series_comp_inverse(const TruncSeries& f) {
    if (f.order() < 2 || f.coeff(0) != Rational(0) || f.coeff(1).is_zero())
        throw std::domain_error("compositional inverse needs f(0) = 0 and f'(0) != 0");
    Rational f1 = f.coeff(1);
    int order = f.order();
    std::vector<Rational> g(static_cast<std::size_t>(order));
    g[1] = Rational(1) / f1;
    for (int n = 2; n < order; ++n) {
        TruncSeries h = series_compose(f, TruncSeries(f.var(), 0, order, g));
        g[static_cast<std::size_t>(n)] = -h.coeff(n) / f1;
    }
    return TruncSeries(f.var(), 0, order, std::move(g)).normalized();
}

Rational series_residue(const TruncSeries& a) {
    if (a.order() <= -1)
        throw std::out_of_range("residue: exponent -1 is beyond the truncation order");
    return a.coeff(-1);
}

bool agree_to(const TruncSeries& a, const TruncSeries& b, int order) {
    int top = std::min({order, a.order(), b.order()});
    int lo = std::min(a.floor(), b.floor());
    for (int e = lo; e < top; ++e)
        if (a.coeff(e) != b.coeff(e)) return false;
    return true;
}

BivarSeries::BivarSeries(std::string var_a, std::string var_b, int floor_a, int floor_b,
                         int order_a, int order_b, std::vector<std::vector<Rational>> coeffs)
    : va_(std::move(var_a)), vb_(std::move(var_b)), fa_(floor_a), fb_(floor_b), oa_(order_a),
      ob_(order_b), c_(std::move(coeffs)) {
    if (oa_ < fa_ || ob_ < fb_) throw std::invalid_argument("bivariate order below floor");
    if (static_cast<int>(c_.size()) != oa_ - fa_)
        throw std::invalid_argument("bivariate coefficient array is not rectangular");
    for (const auto& row : c_)
        if (static_cast<int>(row.size()) != ob_ - fb_)
            throw std::invalid_argument("bivariate coefficient array is not rectangular");
}

BivarSeries BivarSeries::polynomial(std::string var_a, std::string var_b,
                                    std::vector<std::vector<Rational>> coeffs) {
    std::size_t width = 0;
    for (const auto& row : coeffs) width = std::max(width, row.size());
    for (auto& row : coeffs) row.resize(width);
    int oa = static_cast<int>(coeffs.size()), ob = static_cast<int>(width);
    return BivarSeries(std::move(var_a), std::move(var_b), 0, 0, oa, ob, std::move(coeffs));
}

Rational BivarSeries::coeff(int i, int j) const {
    if (i >= oa_ || j >= ob_) throw std::out_of_range("bivariate coefficient beyond truncation");
    if (i < fa_ || j < fb_) return Rational(0);
    return c_[static_cast<std::size_t>(i - fa_)][static_cast<std::size_t>(j - fb_)];
}

QExpansion::QExpansion(Rational offset, std::vector<Rational> coeffs)
    : offset_(std::move(offset)), c_(std::move(coeffs)) {}

Rational QExpansion::coeff(int n) const {
    if (n < 0 || n >= order()) throw std::out_of_range("q-expansion coefficient out of range");
    return c_[static_cast<std::size_t>(n)];
}

QExpansion QExpansion::scaled(const Rational& a) const {
    std::vector<Rational> c = c_;
    for (auto& x : c) x *= a;
    return QExpansion(offset_, std::move(c));
}

QExpansion QExpansion::truncated(int order) const {
    if (order > this->order()) throw std::invalid_argument("cannot extend a q-expansion");
    return QExpansion(offset_, std::vector<Rational>(c_.begin(), c_.begin() + order));
}

QExpansion QExpansion::with_offset(const Rational& offset) const {
    Rational d = offset_ - offset;
    if (!d.is_integer() || d.sign() < 0)
        throw std::invalid_argument("q-expansion offsets " + offset_.str() + " and " +
                                    offset.str() + " do not differ by a nonnegative integer");
    long k = d.to_long();
    std::vector<Rational> c(static_cast<std::size_t>(k));
    c.insert(c.end(), c_.begin(), c_.end());
    return QExpansion(offset, std::move(c));
}

QExpansion operator+(const QExpansion& a, const QExpansion& b) {
    const Rational& lo = a.offset() <= b.offset() ? a.offset() : b.offset();
    QExpansion x = a.with_offset(lo), y = b.with_offset(lo);
    int order = std::min(x.order(), y.order());
    std::vector<Rational> c(static_cast<std::size_t>(order));
    for (int n = 0; n < order; ++n) c[static_cast<std::size_t>(n)] = x.coeff(n) + y.coeff(n);
    return QExpansion(lo, std::move(c));
}

QExpansion operator*(const QExpansion& a, const QExpansion& b) {
    auto val = [](const QExpansion& s) {
        for (int n = 0; n < s.order(); ++n)
            if (!s.coeff(n).is_zero()) return n;
        return s.order();
    };
    int order = std::min(a.order() + val(b), b.order() + val(a));
    std::vector<Rational> c(static_cast<std::size_t>(order));
    for (int i = 0; i < a.order() && i < order; ++i)
        for (int j = 0; j < b.order() && i + j < order; ++j)
            c[static_cast<std::size_t>(i + j)] += a.coeff(i) * b.coeff(j);
    return QExpansion(a.offset() + b.offset(), std::move(c));
}

}  // namespace voa
