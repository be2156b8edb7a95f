#pragma once

#include <vector>

#include "h10ff/field.hpp"
#include "h10ff/ratfunc.hpp"

namespace h10ff {

using FqMatrix = std::vector<std::vector<Fe>>;

/// In-place reduced row echelon form; returns pivot columns. Zero rows are
/// removed.
std::vector<int> rref(const Field* f, FqMatrix& m, int cols);
/// Basis of {x : m x = 0} (one vector per free column).
FqMatrix nullspace(const Field* f, FqMatrix m, int cols);
int rank(const Field* f, FqMatrix m, int cols);

/// Solves the square system a x = b over F_q(t) by Gaussian elimination.
/// Throws when the matrix is singular.
std::vector<RatFunc> solve_linear(std::vector<std::vector<RatFunc>> a, std::vector<RatFunc> b);

}  // namespace h10ff
