#pragma once

#include "voa/rational.hpp"

#include <string>
#include <vector>

namespace voa {

// Truncated Laurent series  sum_{floor <= e < order} c_e x^e + O(x^order).
// Every operation returns the largest order that is provably correct from
// its inputs; nothing is padded with zeros past a known order.
class TruncSeries {
public:
    TruncSeries() : TruncSeries("z", 0, 0, {}) {}
    TruncSeries(std::string var, int floor, int order, std::vector<Rational> coeffs);

    static TruncSeries zero(std::string var, int order);
    static TruncSeries constant(std::string var, const Rational& a, int order);
    static TruncSeries monomial(std::string var, int e, const Rational& a, int order);
    // Exact polynomial sum_i p[i] x^i, declared known up to (excluding) x^order.
    static TruncSeries polynomial(std::string var, const std::vector<Rational>& p, int order);

    const std::string& var() const { return var_; }
    int floor() const { return floor_; }
    int order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    // Coefficient of x^e; zero below floor; throws if e >= order.
    Rational coeff(int e) const;
    int valuation() const;  // lowest nonzero exponent, or order for the zero series
    bool is_zero() const;

    TruncSeries normalized() const;
    TruncSeries truncated(int order) const;  // requires order <= this->order()
    TruncSeries shifted(int k) const;        // multiply by x^k
    TruncSeries scaled(const Rational& a) const;
    TruncSeries derivative() const;
    TruncSeries renamed(std::string var) const;

    TruncSeries operator-() const { return scaled(Rational(-1)); }

    // Structural equality of normalized forms, including the order.
    friend bool operator==(const TruncSeries& a, const TruncSeries& b);

    std::string str() const;

private:
    std::string var_;
    int floor_;
    int order_;
    std::vector<Rational> c_;
};

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
TruncSeries operator*(const Rational& a, const TruncSeries& b);
TruncSeries operator/(const TruncSeries& a, const TruncSeries& b);

TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b);
TruncSeries series_inverse(const TruncSeries& a);
TruncSeries series_pow(const TruncSeries& a, int n);
TruncSeries series_compose(const TruncSeries& f, const TruncSeries& g);
TruncSeries series_comp_inverse(const TruncSeries& f);
Rational series_residue(const TruncSeries& a);

// True when a and b agree on every exponent below min(order, a.order, b.order).
bool agree_to(const TruncSeries& a, const TruncSeries& b, int order);

// Bivariate truncated series  sum c[i][j] a^i b^j over a rectangle of exponents.
class BivarSeries {
public:
    BivarSeries(std::string var_a, std::string var_b, int floor_a, int floor_b, int order_a,
                int order_b, std::vector<std::vector<Rational>> coeffs);
    static BivarSeries polynomial(std::string var_a, std::string var_b,
                                  std::vector<std::vector<Rational>> coeffs);

    const std::string& var_a() const { return va_; }
    const std::string& var_b() const { return vb_; }
    int floor_a() const { return fa_; }
    int floor_b() const { return fb_; }
    int order_a() const { return oa_; }
    int order_b() const { return ob_; }
    Rational coeff(int i, int j) const;

private:
    std::string va_, vb_;
    int fa_, fb_, oa_, ob_;
    std::vector<std::vector<Rational>> c_;
};

// sum_{n >= 0} a_n q^{offset + n} known for n < order.
class QExpansion {
public:
    QExpansion() = default;
    QExpansion(Rational offset, std::vector<Rational> coeffs);

    const Rational& offset() const { return offset_; }
    int order() const { return static_cast<int>(c_.size()); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int n) const;  // throws outside 0..order-1

    QExpansion shifted(const Rational& by) const { return QExpansion(offset_ + by, c_); }
    QExpansion scaled(const Rational& a) const;
    QExpansion truncated(int order) const;
    // Rewrite with a smaller offset differing by a nonnegative integer.
    QExpansion with_offset(const Rational& offset) const;

    friend bool operator==(const QExpansion& a, const QExpansion& b) {
        return a.offset_ == b.offset_ && a.c_ == b.c_;
    }

private:
    Rational offset_;
    std::vector<Rational> c_;
};

QExpansion operator+(const QExpansion& a, const QExpansion& b);
QExpansion operator*(const QExpansion& a, const QExpansion& b);

}  // namespace voa
