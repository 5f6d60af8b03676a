#pragma once

#include "voa/rational.hpp"

#include <vector>

namespace voa {

using RVector = std::vector<Rational>;
using RMatrix = std::vector<RVector>;  // row-major, rows may not be ragged

struct LinearSolution {
    bool consistent = false;
    int rank = 0;
    RVector x;              // particular solution, free variables set to 0
    RVector certificate;    // when inconsistent: y with y A = 0 and y b != 0
    std::vector<int> free;  // free columns
};

// Exact Gauss-Jordan elimination with the first nonzero pivot in column
// order, so results are reproducible.
LinearSolution solve_linear(const RMatrix& A, const RVector& b, int cols);

// Basis of {x : A x = 0}.
std::vector<RVector> nullspace(const RMatrix& A, int cols);

int rank(const RMatrix& A, int cols);

}  // namespace voa
