#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "json.hpp"

#include "gh/partitions.hpp"
#include "gh/rational.hpp"

namespace gh {

using Exponent = std::vector<int>;

int total_degree(const Exponent& e);

/// Graded reverse-lexicographic "less": lower total degree first; for equal
/// degree, a < b when the last nonzero entry of a - b is positive.
struct GrevlexLess {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Every exponent of total degree <= max_degree in `nvars` variables, grevlex ascending.
std::vector<Exponent> monomials_up_to(std::size_t nvars, int max_degree);

/// Sparse polynomial over Q. Zero coefficients are never stored.
class MultiPoly {
 public:
  using Terms = std::map<Exponent, Rational, GrevlexLess>;

  explicit MultiPoly(std::size_t nvars);

  static MultiPoly constant(std::size_t nvars, const Rational& c);
  static MultiPoly monomial(Exponent e, const Rational& c = 1);
  /// x_i (0-based).
  static MultiPoly variable(std::size_t nvars, std::size_t i);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const;
  Rational coefficient(const Exponent& e) const;

  void add_term(const Exponent& e, const Rational& c);

  MultiPoly& operator+=(const MultiPoly& q);
  MultiPoly& operator-=(const MultiPoly& q);
  MultiPoly& operator*=(const MultiPoly& q);
  MultiPoly& operator*=(const Rational& c);
  friend MultiPoly operator+(MultiPoly p, const MultiPoly& q) { return p += q; }
  friend MultiPoly operator-(MultiPoly p, const MultiPoly& q) { return p -= q; }
  friend MultiPoly operator*(const MultiPoly& p, const MultiPoly& q);
  friend MultiPoly operator*(MultiPoly p, const Rational& c) { return p *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly p) { return p *= c; }
  bool operator==(const MultiPoly& q) const = default;

  MultiPoly pow(unsigned e) const;
  /// Variables relabelled: x_i -> x_{perm[i]}.
  MultiPoly permuted(const std::vector<std::size_t>& perm) const;

  double evaluate(std::span<const double> x) const;
  Rational evaluate(std::span<const Rational> x) const;

 private:
  void check_same(const MultiPoly& q) const;

  std::size_t nvars_;
  Terms terms_;
};

MultiPoly scale(const MultiPoly& p, const Rational& c);

/// d^alpha p with falling-factorial coefficients gamma!/(gamma-alpha)!.
MultiPoly differentiate(const MultiPoly& p, const Exponent& alpha);

/// True when p is invariant under every adjacent transposition of variables.
bool is_symmetric(const MultiPoly& p);

/// A MultiPoly known to be symmetric in its variables.
class SymmetricPoly {
 public:
  /// Throws std::invalid_argument if `p` is not symmetric.
  explicit SymmetricPoly(MultiPoly p);
  const MultiPoly& poly() const { return poly_; }
  std::size_t nvars() const { return poly_.nvars(); }
  int degree() const { return poly_.degree(); }
  double evaluate(std::span<const double> y) const { return poly_.evaluate(y); }
  bool operator==(const SymmetricPoly& q) const = default;

 private:
  MultiPoly poly_;
};

/// Orbit sum of y^(lambda/2) over distinct permutations; lambda must have at
/// most k nonzero parts.
SymmetricPoly monomial_symmetric(const Partition& lambda, std::size_t k);

/// e_j(y_1..y_k); e_0 = 1.
MultiPoly elementary_symmetric(std::size_t j, std::size_t k);

/// The algebra map sigma_j -> e_j(y). `p` is a polynomial in k variables
/// sigma_1..sigma_k.
SymmetricPoly sigma_to_y(const MultiPoly& p);

/// dim P_m in k variables, C(m+k, k).
Integer dim_P(int m, int k);
/// dim of symmetric polynomials of degree <= m in k variables.
Integer dim_Ps(int m, int k);

/// Coordinates of p in the monomial-symmetric basis {m_mu}; throws if p is
/// not symmetric. Keys are partitions of length nvars.
std::map<Partition, Rational> monomial_symmetric_coordinates(const MultiPoly& p);

nlohmann::json to_json(const MultiPoly& p);
MultiPoly poly_from_json(const nlohmann::json& j);

}  // namespace gh
