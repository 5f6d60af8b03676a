#include "voa/rational.hpp"

#include <limits>
#include <stdexcept>

namespace voa {

Rational::Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(mpz_class(s, 10));
        return Rational(mpz_class(s.substr(0, slash), 10), mpz_class(s.substr(slash + 1), 10));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("not a rational: '" + s + "'");
    }
}

long Rational::to_long() const {
    if (!is_integer()) throw std::domain_error("rational " + str() + " is not an integer");
    const mpz_class& n = v_.get_num();
    if (!n.fits_slong_p()) throw std::overflow_error("integer " + str() + " out of range");
    return n.get_si();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    v_ /= o.v_;
    return *this;
}

Rational pow(const Rational& base, long e) {
    if (e < 0) {
        if (base.is_zero()) throw std::domain_error("zero to a negative power");
        return Rational(1) / pow(base, -e);
    }
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), static_cast<unsigned long>(e));
    return Rational(n, d);
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational factorial(long n) {
    if (n < 0) throw std::domain_error("factorial of a negative integer");
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(f);
}

Rational binomial(long n, long k) {
    if (k < 0) return Rational(0);
    mpz_class b;
    if (n >= 0) {
        mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    } else {
        // C(n, k) = (-1)^k C(k - n - 1, k)
        mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(k - n - 1), static_cast<unsigned long>(k));
        if (k % 2 == 1) b = -b;
    }
    return Rational(b);
}

}  // namespace voa

std::size_t std::hash<voa::Rational>::operator()(const voa::Rational& r) const noexcept {
    unsigned long a = mpz_fdiv_ui(r.raw().get_num_mpz_t(), 2305843009213693951UL);
    unsigned long b = mpz_fdiv_ui(r.raw().get_den_mpz_t(), 2305843009213693951UL);
    return static_cast<std::size_t>(a * 0x9E3779B97F4A7C15ULL ^ (b + (a << 6) + (a >> 2)));
}
