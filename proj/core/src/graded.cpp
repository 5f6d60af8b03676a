#include "voa/graded.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace voa {

Label::Label(std::vector<int> p) : parts(std::move(p)) {
    std::sort(parts.begin(), parts.end(), std::greater<>());
}

int Label::weight() const { return std::accumulate(parts.begin(), parts.end(), 0); }

std::string Label::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << parts[i];
    os << "]";
    return os.str();
}

std::strong_ordering operator<=>(const Label& a, const Label& b) {
    if (auto c = a.weight() <=> b.weight(); c != 0) return c;
    // within a weight, larger parts first
    if (auto c = b.parts <=> a.parts; c != 0) return c;
    return std::strong_ordering::equal;
}

namespace {

void partitions_rec(int n, int max_part, int min_part, std::vector<int>& cur,
                    std::vector<Label>& out) {
    if (n == 0) {
        out.emplace_back(cur);
        return;
    }
    for (int p = std::min(n, max_part); p >= min_part; --p) {
        cur.push_back(p);
        partitions_rec(n - p, p, min_part, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Label> partitions(int n, int min_part) {
    std::vector<Label> out;
    if (n < 0) return out;
    std::vector<int> cur;
    partitions_rec(n, n, std::max(1, min_part), cur, out);
    return out;
}

GradedVector::GradedVector(const Label& l, const Rational& a) { add(l, a); }

Rational GradedVector::coeff(const Label& l) const {
    auto it = terms_.find(l);
    return it == terms_.end() ? Rational(0) : it->second;
}

int GradedVector::max_weight() const { return terms_.empty() ? -1 : terms_.rbegin()->first.weight(); }

int GradedVector::min_weight() const { return terms_.empty() ? -1 : terms_.begin()->first.weight(); }

bool GradedVector::is_homogeneous() const { return max_weight() == min_weight(); }

void GradedVector::add(const Label& l, const Rational& a) {
    if (a.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(l, a);
    if (!inserted) {
        it->second += a;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

GradedVector& GradedVector::operator+=(const GradedVector& o) {
    for (const auto& [l, a] : o.terms_) add(l, a);
    return *this;
}

GradedVector& GradedVector::operator-=(const GradedVector& o) {
    for (const auto& [l, a] : o.terms_) add(l, -a);
    return *this;
}

GradedVector GradedVector::scaled(const Rational& a) const {
    GradedVector r;
    if (a.is_zero()) return r;
    r.terms_ = terms_;
    for (auto& [l, x] : r.terms_) x *= a;
    return r;
}

std::string GradedVector::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [l, a] : terms_) {
        os << (first ? "" : " + ") << "(" << a << ")" << l.str();
        first = false;
    }
    return os.str();
}

GradedVector weight_project(const GradedVector& w, int n) {
    GradedVector r;
    for (const auto& [l, a] : w.terms())
        if (l.weight() == n) r.add(l, a);
    return r;
}

Rational pair(const GradedVector& dual, const GradedVector& w) {
    Rational s;
    const auto& small = dual.terms().size() <= w.terms().size() ? dual : w;
    const auto& big = &small == &dual ? w : dual;
    for (const auto& [l, a] : small.terms()) {
        Rational b = big.coeff(l);
        if (!b.is_zero()) s += a * b;
    }
    return s;
}

std::vector<Label> GradedSpace::basis() const {
    std::vector<Label> out;
    for (const auto& [n, labels] : weights) out.insert(out.end(), labels.begin(), labels.end());
    return out;
}

int GradedSpace::dim(int n) const {
    auto it = weights.find(n);
    return it == weights.end() ? 0 : static_cast<int>(it->second.size());
}

bool GradedSpace::contains(const Label& l) const {
    auto it = weights.find(l.weight());
    return it != weights.end() && std::find(it->second.begin(), it->second.end(), l) != it->second.end();
}

DualInsertion::DualInsertion(GradedSpace space, int cap) : space_(std::move(space)), cap_(cap) {
    if (cap_ > space_.cap)
        throw std::invalid_argument("insertion cap exceeds the basis cap of " + space_.name);
}

void DualInsertion::check_cap(const GradedVector& v) const {
    if (v.max_weight() > cap_)
        throw std::out_of_range("vector supported at weight " + std::to_string(v.max_weight()) +
                                " beyond insertion cap " + std::to_string(cap_));
}

Rational DualInsertion::pair(const GradedVector& m_dual, const GradedVector& m) const {
    check_cap(m_dual);
    check_cap(m);
    return voa::pair(m_dual, m);
}

QExpansion DualInsertion::q_pair(QGrading mode, const GradedVector& m_dual,
                                 const GradedVector& m) const {
    check_cap(m_dual);
    check_cap(m);
    std::vector<Rational> c(static_cast<std::size_t>(cap_ + 1));
    for (int n = 0; n <= cap_; ++n)
        c[static_cast<std::size_t>(n)] = voa::pair(weight_project(m_dual, n), weight_project(m, n));
    return QExpansion(mode == QGrading::Full ? space_.delta : Rational(0), std::move(c));
}

QExpansion DualInsertion::q_pair_left(const GradedVector& m_dual, const GradedVector& m) const {
    check_cap(m_dual);
    check_cap(m);
    // (q^{L~0} m') paired with the whole of m
    std::vector<Rational> c(static_cast<std::size_t>(cap_ + 1));
    for (int n = 0; n <= cap_; ++n)
        c[static_cast<std::size_t>(n)] = voa::pair(weight_project(m_dual, n), m);
    return QExpansion(Rational(0), std::move(c));
}

QExpansion DualInsertion::q_pair_right(const GradedVector& m_dual, const GradedVector& m) const {
    check_cap(m_dual);
    check_cap(m);
    std::vector<Rational> c(static_cast<std::size_t>(cap_ + 1));
    for (int n = 0; n <= cap_; ++n)
        c[static_cast<std::size_t>(n)] = voa::pair(m_dual, weight_project(m, n));
    return QExpansion(Rational(0), std::move(c));
}

std::vector<std::pair<GradedVector, GradedVector>> DualInsertion::level(int n) const {
    std::vector<std::pair<GradedVector, GradedVector>> out;
    auto it = space_.weights.find(n);
    if (it == space_.weights.end()) return out;
    for (const auto& l : it->second) out.emplace_back(GradedVector(l), GradedVector(l));
    return out;
}

}  // namespace voa
