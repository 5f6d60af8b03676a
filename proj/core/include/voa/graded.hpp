#pragma once

#include "voa/rational.hpp"
#include "voa/series.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace voa {

// A basis label: a partition (parts in weakly decreasing order) naming the
// normal-ordered monomial x_{-p1} ... x_{-pk} |hw>.  Weight = sum of parts.
struct Label {
    std::vector<int> parts;

    Label() = default;
    explicit Label(std::vector<int> p);

    int weight() const;
    std::string str() const;

    friend bool operator==(const Label&, const Label&) = default;
    friend std::strong_ordering operator<=>(const Label& a, const Label& b);
};

// Partitions of n with every part >= min_part, in decreasing lexicographic order.
std::vector<Label> partitions(int n, int min_part);

// Finite linear combination of basis labels. Vectors carry no space pointer:
// the module that produced them owns the basis, and a dual vector is the same
// map read against the dual basis.
class GradedVector {
public:
    GradedVector() = default;
    explicit GradedVector(const Label& l, const Rational& a = Rational(1));

    const std::map<Label, Rational>& terms() const { return terms_; }
    Rational coeff(const Label& l) const;
    bool is_zero() const { return terms_.empty(); }
    int max_weight() const;  // -1 for the zero vector
    int min_weight() const;  // -1 for the zero vector
    bool is_homogeneous() const;

    void add(const Label& l, const Rational& a);
    GradedVector& operator+=(const GradedVector& o);
    GradedVector& operator-=(const GradedVector& o);
    GradedVector scaled(const Rational& a) const;

    friend GradedVector operator+(GradedVector a, const GradedVector& b) { return a += b; }
    friend GradedVector operator-(GradedVector a, const GradedVector& b) { return a -= b; }
    friend GradedVector operator*(const Rational& a, const GradedVector& v) { return v.scaled(a); }
    friend bool operator==(const GradedVector&, const GradedVector&) = default;

    std::string str() const;

private:
    std::map<Label, Rational> terms_;
};

GradedVector weight_project(const GradedVector& w, int n);

// Dual-basis pairing <w', w>: labels are paired with their own duals.
Rational pair(const GradedVector& dual, const GradedVector& w);

// A truncated basis description of an N-graded space. L0 = delta + L~0.
struct GradedSpace {
    std::string name;
    Rational delta;
    bool dual = false;
    int cap = 0;
    std::map<int, std::vector<Label>> weights;

    std::vector<Label> basis() const;  // all labels up to cap, weight-ordered
    int dim(int n) const;
    bool contains(const Label& l) const;
};

enum class QGrading { Reduced, Full };  // q^{L~0} or q^{L0}

// The truncated canonical element  sum_{n <= cap} sum_a m(n,a) (x) m^(n,a).
class DualInsertion {
public:
    DualInsertion(GradedSpace space, int cap);

    const GradedSpace& space() const { return space_; }
    int cap() const { return cap_; }

    // <dual-insertion, m' (x) m> = <m', m>; throws if either side exceeds the cap.
    Rational pair(const GradedVector& m_dual, const GradedVector& m) const;

    // sum_n <P(n) m', P(n) m> q^n, offset 0 (reduced) or delta (full).
    QExpansion q_pair(QGrading mode, const GradedVector& m_dual, const GradedVector& m) const;

    // Same value with q^{L~0} moved onto the left or the right factor.
    QExpansion q_pair_left(const GradedVector& m_dual, const GradedVector& m) const;
    QExpansion q_pair_right(const GradedVector& m_dual, const GradedVector& m) const;

    // The pairs (m(n,a), m^(n,a)) at weight n.
    std::vector<std::pair<GradedVector, GradedVector>> level(int n) const;

private:
    void check_cap(const GradedVector& v) const;

    GradedSpace space_;
    int cap_;
};

}  // namespace voa
