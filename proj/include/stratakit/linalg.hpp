#pragma once

#include <vector>

#include "stratakit/config.hpp"

namespace stratakit {

using Matrix = std::vector<std::vector<double>>; // row major

/// Solve A x = b by Gaussian elimination with partial pivoting.
/// Throws NumericFailureError on a (numerically) singular matrix.
std::vector<double> solve_linear(Matrix A, std::vector<double> b);

/// Singular values of an m x n matrix, descending (one-sided Jacobi).
std::vector<double> singular_values(Matrix A);

/// Smallest singular value after scaling each column to unit norm.
/// Zero columns count as singular directions (returns 0).
double min_singular_value_scaled(Matrix A);

} // namespace stratakit
