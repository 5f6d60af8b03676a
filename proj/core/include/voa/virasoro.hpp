#pragma once

#include "voa/graded.hpp"
#include "voa/rational.hpp"

#include <utility>
#include <vector>

namespace voa {

struct CentralCharge {
    Rational c;
};

// [L_m, L_n] = first * L_{m+n} + second
std::pair<Rational, Rational> vir_bracket(int m, int n, const CentralCharge& c);

// Anything on which the Virasoro operators act.
class VirasoroAction {
public:
    virtual ~VirasoroAction() = default;
    virtual GradedVector L(int n, const GradedVector& w) const = 0;
    // L~0: the N-grading, not L0.
    GradedVector L_tilde(int n, const GradedVector& w) const;
};

// sum_i a_i L_{n_i}, applied right to left as a product when used as a word.
struct VirWord {
    std::vector<std::pair<int, Rational>> terms;
};

// The operator product  (a_1 L_{n_1}) (a_2 L_{n_2}) ... applied to w.
GradedVector apply_word(const VirWord& word, const GradedVector& w, const VirasoroAction& act);

// c0^{L~0} exp(sum_{n>=1} c_n L_n) w, where coeffs[n-1] = c_n.
GradedVector apply_exp_raising(const std::vector<Rational>& coeffs, const Rational& c0,
                               const GradedVector& w, const VirasoroAction& act);

// c0^{L~0} on w (integer powers of c0 only).
GradedVector apply_grading_power(const Rational& c0, const GradedVector& w);

}  // namespace voa
