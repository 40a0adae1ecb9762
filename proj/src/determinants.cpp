#include "gh/determinants.hpp"

#include <stdexcept>
#include <string>

namespace gh {

namespace {

Rational inverse_factorial(long r) {
  if (r < 0) throw std::invalid_argument("negative factorial argument " + std::to_string(r));
  return Rational(Integer(1), factorial(static_cast<unsigned long>(r)));
}

}  // namespace

ExactMatrix factorial_matrix(int k, int n) {
  if (k < 0 || n < 0) throw std::invalid_argument("factorial matrix needs k, n >= 0");
  const auto size = static_cast<std::size_t>(n) + 1;
  ExactMatrix m(size, size);
  for (std::size_t i = 1; i <= size; ++i)
    for (std::size_t j = 1; j <= size; ++j) m(i - 1, j - 1) = inverse_factorial(k + static_cast<long>(i + j) - 2);
  return m;
}

Rational factorial_det_formula(int k, int n) {
  if (k < 0 || n < 0) throw std::invalid_argument("factorial determinant needs k, n >= 0");
  Integer num = 1, den = 1;
  for (int i = 0; i <= n; ++i) {
    num *= factorial(static_cast<unsigned long>(i));
    den *= factorial(static_cast<unsigned long>(k + n + i));
  }
  Rational r(num, den);
  r.canonicalize();
  const long e = static_cast<long>(n) * (n + 1) / 2;
  return e % 2 ? Rational(-r) : r;
}

ExactMatrix cauchy_matrix(const std::vector<Rational>& x, const std::vector<Rational>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("Cauchy matrix needs |x| = |y|");
  ExactMatrix m(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) {
      const Rational d = x[i] - y[j];
      if (d == 0)
        throw std::invalid_argument("x_" + std::to_string(i + 1) + " = y_" + std::to_string(j + 1) + " = " +
                                    to_string(x[i]));
      m(i, j) = 1 / d;
    }
  return m;
}

Rational cauchy_det(const std::vector<Rational>& x, const std::vector<Rational>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("Cauchy determinant needs |x| = |y|");
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (x[i] == x[j])
        throw std::invalid_argument("x_" + std::to_string(i + 1) + " = x_" + std::to_string(j + 1) + " = " + to_string(x[i]));
      if (y[i] == y[j])
        throw std::invalid_argument("y_" + std::to_string(i + 1) + " = y_" + std::to_string(j + 1) + " = " + to_string(y[i]));
    }
  Rational num(1), den(1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational d = x[i] - y[j];
      if (d == 0)
        throw std::invalid_argument("x_" + std::to_string(i + 1) + " = y_" + std::to_string(j + 1) + " = " + to_string(x[i]));
      den *= d;
      if (i < j) num *= (x[i] - x[j]) * (y[j] - y[i]);
    }
  return num / den;
}

Rational exact_det(const ExactMatrix& m) { return determinant(m); }

ExactMatrix factorial_block(int n, int start) {
  if (n < 1) throw std::invalid_argument("block size must be positive");
  if (start < n - 1) throw std::invalid_argument("block start must be at least N-1");
  const auto size = static_cast<std::size_t>(n);
  ExactMatrix m(size, size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t nu = 0; nu < size; ++nu)
      m(i, nu) = inverse_factorial(start + static_cast<long>(i) - static_cast<long>(nu));
  return m;
}

Rational cauchy_factorial_product(int k, int n) {
  if (k < 0 || n < 0) throw std::invalid_argument("need k, n >= 0");
  Integer num = 1, den = 1;
  for (int i = 0; i < n; ++i) {
    const Integer f = factorial(static_cast<unsigned long>(i));
    num *= f * f * factorial(static_cast<unsigned long>(k + i));
    den *= factorial(static_cast<unsigned long>(k + n + i));
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace gh
