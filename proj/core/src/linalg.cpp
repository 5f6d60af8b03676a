#include "voa/linalg.hpp"

#include <stdexcept>

namespace voa {

namespace {

struct Reduced {
    RMatrix m;                 // reduced rows, augmented by the identity of the row space
    std::vector<int> pivots;   // pivot column of each leading row
};

// Row-reduces [A | b | I] in place; the identity block tracks row operations.
Reduced reduce(const RMatrix& A, const RVector* b, int cols) {
    std::size_t rows = A.size();
    int width = cols + (b ? 1 : 0) + static_cast<int>(rows);
    Reduced r;
    r.m.assign(rows, RVector(static_cast<std::size_t>(width)));
    for (std::size_t i = 0; i < rows; ++i) {
        if (static_cast<int>(A[i].size()) != cols) throw std::invalid_argument("ragged matrix");
        for (int j = 0; j < cols; ++j) r.m[i][static_cast<std::size_t>(j)] = A[i][static_cast<std::size_t>(j)];
        if (b) r.m[i][static_cast<std::size_t>(cols)] = (*b)[i];
        r.m[i][static_cast<std::size_t>(cols + (b ? 1 : 0)) + i] = Rational(1);
    }
    std::size_t lead = 0;
    for (int c = 0; c < cols && lead < rows; ++c) {
        std::size_t p = lead;
        while (p < rows && r.m[p][static_cast<std::size_t>(c)].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(r.m[p], r.m[lead]);
        Rational inv = Rational(1) / r.m[lead][static_cast<std::size_t>(c)];
        for (auto& x : r.m[lead]) x *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == lead || r.m[i][static_cast<std::size_t>(c)].is_zero()) continue;
            Rational f = r.m[i][static_cast<std::size_t>(c)];
            for (std::size_t j = 0; j < r.m[i].size(); ++j)
                if (!r.m[lead][j].is_zero()) r.m[i][j] -= f * r.m[lead][j];
        }
        r.pivots.push_back(c);
        ++lead;
    }
    return r;
}

}  // namespace

LinearSolution solve_linear(const RMatrix& A, const RVector& b, int cols) {
    if (A.size() != b.size()) throw std::invalid_argument("right-hand side length mismatch");
    Reduced r = reduce(A, &b, cols);
    LinearSolution s;
    s.rank = static_cast<int>(r.pivots.size());
    s.x.assign(static_cast<std::size_t>(cols), Rational(0));
    s.consistent = true;
    for (std::size_t i = r.pivots.size(); i < r.m.size(); ++i)
        if (!r.m[i][static_cast<std::size_t>(cols)].is_zero()) {
            s.consistent = false;
            s.certificate.assign(r.m[i].begin() + cols + 1, r.m[i].end());
            break;
        }
    if (s.consistent)
        for (std::size_t i = 0; i < r.pivots.size(); ++i)
            s.x[static_cast<std::size_t>(r.pivots[i])] = r.m[i][static_cast<std::size_t>(cols)];
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (int p : r.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    for (int c = 0; c < cols; ++c)
        if (!is_pivot[static_cast<std::size_t>(c)]) s.free.push_back(c);
    return s;
}

std::vector<RVector> nullspace(const RMatrix& A, int cols) {
    Reduced r = reduce(A, nullptr, cols);
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (int p : r.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<RVector> out;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        RVector v(static_cast<std::size_t>(cols));
        v[static_cast<std::size_t>(f)] = Rational(1);
        for (std::size_t i = 0; i < r.pivots.size(); ++i)
            v[static_cast<std::size_t>(r.pivots[i])] = -r.m[i][static_cast<std::size_t>(f)];
        out.push_back(std::move(v));
    }
    return out;
}

int rank(const RMatrix& A, int cols) { return static_cast<int>(reduce(A, nullptr, cols).pivots.size()); }

}  // namespace voa
