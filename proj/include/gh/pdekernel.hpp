#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "gh/exact_matrix.hpp"
#include "gh/multipoly.hpp"
#include "gh/stats.hpp"

namespace gh {

/// One term c x^beta d^alpha.
struct DiffTerm {
  Exponent alpha;  // derivative
  Exponent beta;   // monomial coefficient
  Rational c;
};

/// A linear differential operator sum c_{alpha beta} x^beta d^alpha on Q[x_1..x_k].
/// Terms with equal (alpha, beta) are merged and zero terms dropped.
class DiffOp {
 public:
  DiffOp(std::size_t k, std::vector<DiffTerm> terms);

  std::size_t k() const { return k_; }
  const std::vector<DiffTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// N = 1 + max ||alpha||_inf.
  int order() const;
  /// M = max(0, max(|beta| - |alpha|)): D maps P_m into P_{m+M}.
  int coefficient_degree() const;
  /// Every term has alpha >= beta componentwise.
  bool is_reduced() const;

  nlohmann::json to_json() const;
  static DiffOp from_json(const nlohmann::json& j);

 private:
  std::size_t k_;
  std::vector<DiffTerm> terms_;
};

MultiPoly apply(const DiffOp& d, const MultiPoly& p);

/// d^gamma composed on the left: d^gamma o D, expanded by Leibniz.
DiffOp compose_derivative(const Exponent& gamma, const DiffOp& d);

/// D' = d^gamma o D for the smallest gamma making every term satisfy alpha >= beta.
struct Reduction {
  DiffOp op;
  Exponent gamma;
};
Reduction reduce_operator(const DiffOp& d);

/// Index of each monomial of degree <= max_degree in grevlex order.
class MonomialIndex {
 public:
  MonomialIndex(std::size_t nvars, int max_degree);
  std::size_t size() const { return monomials_.size(); }
  const Exponent& at(std::size_t i) const { return monomials_[i]; }
  /// Number of monomials of degree <= m (a prefix of the ordering).
  std::size_t prefix(int m) const;
  std::size_t index(const Exponent& e) const;

 private:
  struct Hash {
    std::size_t operator()(const Exponent& e) const;
  };
  std::vector<Exponent> monomials_;
  std::unordered_map<Exponent, std::size_t, Hash> index_;
};

/// D x^gamma as a sparse vector over `target`.
SparseVector apply_to_monomial(const DiffOp& d, const Exponent& gamma, const MonomialIndex& target);

/// dim(Ker D on P_m), by exact sparse elimination of the columns D x^gamma.
std::size_t kernel_dim(const DiffOp& d, int m);
/// Same with the columns fed in a seeded random order.
std::size_t kernel_dim_permuted(const DiffOp& d, int m, std::uint64_t seed);
/// dim(Ker D on P_m) for every m = 0..m_max in one incremental sweep.
std::vector<std::size_t> kernel_dims(const DiffOp& d, int m_max);
/// kernel_dim for each m in the list: serial reference and OpenMP version.
std::vector<std::size_t> kernel_dims_serial(const DiffOp& d, const std::vector<int>& ms);
std::vector<std::size_t> kernel_dims_parallel(const DiffOp& d, const std::vector<int>& ms);

/// Dense matrix of D: P_m -> P_{m+M} in grevlex monomial bases.
ExactMatrix assemble_matrix(const DiffOp& d, int m);

/// mu_{sigma gamma} = sum over terms with sigma = gamma - alpha + beta of
/// c / (gamma - alpha)!, for |sigma|, |gamma| <= m. Rejects unreduced operators.
ExactMatrix mu_matrix(const DiffOp& reduced, int m);
/// Kernel dimension of the mu-matrix via sparse elimination.
std::size_t mu_kernel_dim(const DiffOp& reduced, int m);

struct KernelRow {
  int m = 0;
  Integer dim_p;
  std::size_t dim_ker = 0;
};

struct KernelReport {
  std::string digest;
  std::size_t k = 0;
  std::vector<KernelRow> rows;
  LinearFit fit;       // log dim Ker against log m, rows with m >= 1 and dim >= 1
  std::size_t fitted = 0;
  double threshold = 0.0;  // k - 1 + 0.25
  bool violation = false;
};

/// Exact kernel dimensions over m_list (at least 5 increasing values) and
/// the log-log growth slope.
KernelReport growth_fit(const DiffOp& d, const std::vector<int>& m_list);

/// Ranks of the blocks (mu_{sigma gamma}), sigma in I_j, gamma in I'_j, for
/// j in J(m') = {j >= 1 : j_1 + ... + j_k <= m'}.
struct BlockRanks {
  std::size_t blocks = 0;        // |J(m')|
  std::size_t nonzero = 0;       // blocks of nonzero rank
  std::size_t rank_sum = 0;
  std::size_t mu_rank = 0;       // rank of the whole mu-matrix at m = 2 N m'
};
BlockRanks block_ranks(const DiffOp& reduced, int m_prime);

struct DensityBoundRow {
  int m_prime = 0;
  int m = 0;
  Integer dim_p;
  std::size_t dim_ker = 0;
  std::size_t dim_ker_reduced = 0;
  Rational density;
  /// 1 - 1/(2^k N^k), the limiting bound.
  Rational limit_bound;
  bool limit_holds = false;
  /// 1 - (sum of block ranks)/dim P_m, valid at this finite m.
  Rational block_bound;
  bool block_holds = false;
  BlockRanks blocks;
};

struct DensityBoundReport {
  int n_order = 0;  // N of the reduced operator
  Exponent gamma;   // reduction d^gamma
  std::vector<DensityBoundRow> rows;
  bool all_limit_hold = false;
  bool all_block_hold = false;
  /// Densities never increase along the computed m (consistent with a limsup < 1 trend).
  bool trend_non_increasing = false;
};
DensityBoundReport density_bound_check(const DiffOp& d, const std::vector<int>& m_prime_list);

/// Seeded random operator: 1..max_terms terms, coefficients in {-3..3}\{0},
/// ||alpha||_inf <= max_order, |beta| <= max_beta_degree.
struct RandomOpConfig {
  std::size_t k = 2;
  int max_terms = 6;
  int max_order = 2;
  int max_beta_degree = 2;
};
DiffOp random_operator(const RandomOpConfig& cfg, std::uint64_t seed);

}  // namespace gh
