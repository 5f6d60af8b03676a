#include "voa/virasoro.hpp"

#include <stdexcept>

namespace voa {

std::pair<Rational, Rational> vir_bracket(int m, int n, const CentralCharge& c) {
    Rational central;
    if (m == -n) {
        Rational mm(m);
        central = (mm * mm * mm - mm) * c.c / Rational(12);
    }
    return {Rational(m - n), central};
}

GradedVector VirasoroAction::L_tilde(int n, const GradedVector& w) const {
    if (n != 0) return L(n, w);
    GradedVector r;
    for (const auto& [l, a] : w.terms()) r.add(l, a * Rational(l.weight()));
    return r;
}

GradedVector apply_word(const VirWord& word, const GradedVector& w, const VirasoroAction& act) {
    GradedVector r = w;
    for (auto it = word.terms.rbegin(); it != word.terms.rend(); ++it)
        r = act.L(it->first, r).scaled(it->second);
    return r;
}

GradedVector apply_grading_power(const Rational& c0, const GradedVector& w) {
    if (c0.is_zero()) throw std::domain_error("scaling factor c0 must be nonzero");
    GradedVector r;
    for (const auto& [l, a] : w.terms()) r.add(l, a * pow(c0, l.weight()));
    return r;
}

GradedVector apply_exp_raising(const std::vector<Rational>& coeffs, const Rational& c0,
                               const GradedVector& w, const VirasoroAction& act) {
    if (c0.is_zero()) throw std::domain_error("scaling factor c0 must be nonzero");
    // X = sum c_n L_n lowers weight by at least 1, so X^k w = 0 for k > max weight.
    int top = w.max_weight();
    GradedVector sum = w, term = w;
    for (int k = 1; k <= top && !term.is_zero(); ++k) {
        GradedVector next;
        for (std::size_t i = 0; i < coeffs.size() && static_cast<int>(i) < top; ++i) {
            if (coeffs[i].is_zero()) continue;
            next += act.L(static_cast<int>(i) + 1, term).scaled(coeffs[i]);
        }
        term = next.scaled(Rational(1, k));
        sum += term;
    }
    return apply_grading_power(c0, sum);
}

}  // namespace voa
