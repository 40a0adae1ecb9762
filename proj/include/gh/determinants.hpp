#pragma once

#include <cstdint>
#include <vector>

#include "gh/exact_matrix.hpp"
#include "gh/rational.hpp"

namespace gh {

/// (n+1) x (n+1) matrix with entry (i,j) = 1/(k+i+j-2)!, 1-based.
ExactMatrix factorial_matrix(int k, int n);

/// (-1)^{n(n+1)/2} prod_{i=0}^{n} i! / (k+n+i)!.
Rational factorial_det_formula(int k, int n);

/// The Cauchy matrix (1/(x_i - y_j)). Throws std::invalid_argument naming the
/// offending pair if some x_i = y_j, or if the sizes differ.
ExactMatrix cauchy_matrix(const std::vector<Rational>& x, const std::vector<Rational>& y);

/// prod_{i<j} (x_i - x_j)(y_j - y_i) / prod_{i,j} (x_i - y_j). Validates that
/// the x_i are distinct, the y_j are distinct and no x_i equals a y_j.
Rational cauchy_det(const std::vector<Rational>& x, const std::vector<Rational>& y);

/// Fraction-free determinant (the elimination oracle).
Rational exact_det(const ExactMatrix& m);

/// N x N matrix (1/(z_i - nu)!) for z_i = start, ..., start+N-1 and nu = 0..N-1.
/// Requires start >= N-1 so no factorial argument is negative.
ExactMatrix factorial_block(int n, int start);

/// prod_{i=0}^{n-1} (i!)^2 (k+i)! / (k+n+i)!: the Cauchy determinant at
/// x_i = k+i-1, y_j = -j.
Rational cauchy_factorial_product(int k, int n);

}  // namespace gh
