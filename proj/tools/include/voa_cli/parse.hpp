#pragma once

#include "voa/graded.hpp"
#include "voa/rational.hpp"
#include "voa/series.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace voa::cli {

// Bad user input: a malformed flag value, fixture or series string.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A Laurent polynomial in one variable.
struct Polynomial {
    std::string var;  // empty when no variable occurs
    std::map<int, Rational> terms;  // nonzero coefficients only

    int min_exponent() const;  // 0 for the zero polynomial
    int max_exponent() const;  // -1 for the zero polynomial
};

// Sums of terms  c, c x, c x^k, c*x^k  with c an integer or a/b and k a
// possibly negative integer. Only one variable may occur; when `var` is
// nonempty it must be that one.
Polynomial parse_polynomial(const std::string& text, const std::string& var = "");

// "[a0, a1, ...]" as a coefficient list, anything else as a polynomial.
Polynomial parse_series_text(const std::string& text, const std::string& var = "");

// The polynomial as a series known below `order`; order < 0 means max exponent + 1.
TruncSeries to_series(const Polynomial& p, const std::string& var, int order = -1);

Rational parse_rational(const std::string& text);

// "vac" or "" for the vacuum label, else parts "2,1" in any order.
Label parse_label(const std::string& text);

}  // namespace voa::cli
