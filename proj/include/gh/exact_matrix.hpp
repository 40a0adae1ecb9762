#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gh/rational.hpp"

namespace gh {

/// Sparse vector over Q: (index, value) pairs, strictly increasing index,
/// no zero values.
using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

/// Dense rectangular matrix of exact rationals, row-major.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols);
  static ExactMatrix identity(std::size_t n);
  static ExactMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  ExactMatrix operator*(const ExactMatrix& other) const;
  bool operator==(const ExactMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Fraction-free (Bareiss) determinant. Rows are cleared of denominators
/// first so the elimination runs over Z. Throws for non-square input.
Rational determinant(const ExactMatrix& m);

/// Exact rank by fraction-free elimination over Z.
std::size_t rank(const ExactMatrix& m);

/// Gauss-Jordan inverse over Q; nullopt when singular.
std::optional<ExactMatrix> inverse(const ExactMatrix& m);

/// Row-echelon basis grown one vector at a time. Each stored vector is
/// normalized so that its largest index (the pivot) carries coefficient 1,
/// and no two stored vectors share a pivot.
class EchelonBasis {
 public:
  /// Reduces `v` against the basis; if a nonzero remainder is left it is
  /// stored and true is returned.
  bool insert(SparseVector v);
  /// Whether `v` lies in the span (the basis is not modified).
  bool contains(SparseVector v) const;
  std::size_t rank() const { return by_pivot_.size(); }

 private:
  void reduce(SparseVector& v) const;

  std::unordered_map<std::size_t, SparseVector> by_pivot_;
};

/// v <- v - factor * w, merged in index order.
void axpy_sparse(SparseVector& v, const Rational& factor, const SparseVector& w);

}  // namespace gh
