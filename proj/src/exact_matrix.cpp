#include "gh/exact_matrix.hpp"

#include <stdexcept>

namespace gh {

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.front().size() : 0;
  ExactMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("ragged rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("matrix product shape mismatch");
  ExactMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t l = 0; l < cols_; ++l) {
      const Rational& a = (*this)(i, l);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(l, j);
    }
  return out;
}

namespace {

// Integer matrix obtained by scaling each row by the lcm of its denominators;
// `scale` accumulates the product of those multipliers.
std::vector<std::vector<Integer>> clear_denominators(const ExactMatrix& m, Integer& scale) {
  std::vector<std::vector<Integer>> a(m.rows(), std::vector<Integer>(m.cols()));
  scale = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) l = lcm(l, Integer(m(i, j).get_den()));
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
    scale *= l;
  }
  return a;
}

// Bareiss elimination in place; returns the rank and, for square input, the
// determinant sign-corrected for row swaps (zero when singular).
std::size_t bareiss(std::vector<std::vector<Integer>>& a, std::size_t cols, Integer* det) {
  const std::size_t rows = a.size();
  Integer prev = 1;
  int sign = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      std::swap(a[piv], a[r]);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = a[i][j] * a[r][c] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  if (det) {
    if (r < rows || rows != cols) {
      *det = 0;
    } else {
      *det = rows ? a[rows - 1][cols - 1] * sign : Integer(1);
    }
  }
  return r;
}

}  // namespace

Rational determinant(const ExactMatrix& m) {
  if (!m.square()) throw std::invalid_argument("determinant of a non-square matrix");
  Integer scale;
  auto a = clear_denominators(m, scale);
  Integer det;
  bareiss(a, m.cols(), &det);
  Rational q(det, scale);
  q.canonicalize();
  return q;
}

std::size_t rank(const ExactMatrix& m) {
  Integer scale;
  auto a = clear_denominators(m, scale);
  return bareiss(a, m.cols(), nullptr);
}

std::optional<ExactMatrix> inverse(const ExactMatrix& m) {
  if (!m.square()) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  ExactMatrix a = m;
  ExactMatrix inv = ExactMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c) == 0) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(c, j));
        std::swap(inv(piv, j), inv(c, j));
      }
    const Rational p = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= p;
      inv(c, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

void axpy_sparse(SparseVector& v, const Rational& factor, const SparseVector& w) {
  SparseVector out;
  out.reserve(v.size() + w.size());
  auto a = v.begin();
  auto b = w.begin();
  while (a != v.end() || b != w.end()) {
    if (b == w.end() || (a != v.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == v.end() || b->first < a->first) {
      out.emplace_back(b->first, -factor * b->second);
      ++b;
    } else {
      Rational val = a->second - factor * b->second;
      if (val != 0) out.emplace_back(a->first, std::move(val));
      ++a;
      ++b;
    }
  }
  v = std::move(out);
}

void EchelonBasis::reduce(SparseVector& v) const {
  // Each step removes the current leading index, and stored vectors only
  // touch smaller indices below their pivot, so the loop terminates.
  std::size_t bound = v.empty() ? 0 : v.back().first + 1;
  while (!v.empty()) {
    // Scan downward for the largest index that is a known pivot.
    auto it = v.end();
    const SparseVector* hit = nullptr;
    while (it != v.begin()) {
      --it;
      if (it->first >= bound) continue;
      auto found = by_pivot_.find(it->first);
      if (found != by_pivot_.end()) {
        hit = &found->second;
        break;
      }
    }
    if (!hit) return;
    bound = it->first;
    const Rational factor = it->second;
    axpy_sparse(v, factor, *hit);
  }
}

bool EchelonBasis::insert(SparseVector v) {
  reduce(v);
  if (v.empty()) return false;
  const std::size_t pivot = v.back().first;
  const Rational lead = v.back().second;
  for (auto& [idx, val] : v) val /= lead;
  by_pivot_.emplace(pivot, std::move(v));
  return true;
}

bool EchelonBasis::contains(SparseVector v) const {
  reduce(v);
  return v.empty();
}

}  // namespace gh
