#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "gh/grassmann.hpp"
#include "gh/kernels.hpp"
#include "gh/multipoly.hpp"
#include "gh/partitions.hpp"
#include "gh/stats.hpp"

namespace gh {

enum class MomentMethod { monte_carlo, quadrature_kappa1 };

inline constexpr std::size_t kDefaultBatches = 32;

/// Default Monte Carlo sample count for a given kappa.
std::size_t default_samples(int kappa);

/// Integrates symmetric functions of the principal cosines y(E, base) against
/// the Haar measure dE on Gr_k(R^n). Monte Carlo draws are split into
/// independent batches so every estimate carries a between-batch error; the
/// kappa = 1 quadrature is a deterministic Gauss rule with zero error.
class MomentOracle {
 public:
  static MomentOracle monte_carlo(int n, int k, std::size_t samples, std::uint64_t seed,
                                  std::size_t batches = kDefaultBatches);
  /// Same, about an arbitrary base subspace instead of span(e_1..e_k).
  static MomentOracle monte_carlo(const Subspace& base, std::size_t samples, std::uint64_t seed,
                                  std::size_t batches = kDefaultBatches);
  /// Gauss rule for y ~ Beta(1/2, (n-1)/2); requires kappa = 1.
  static MomentOracle quadrature_kappa1(int n, int k, int nodes);

  int n() const { return base_.n(); }
  int k() const { return base_.k(); }
  int kappa() const { return base_.kappa(); }
  MomentMethod method() const { return method_; }
  std::size_t sample_count() const { return samples_.size(); }
  std::uint64_t seed() const { return seed_; }
  const Subspace& base() const { return base_; }
  const kernels::SampleSet& samples() const { return samples_; }

  /// E[p(y) q(y)] with its standard error.
  Estimate inner_product(const SymmetricPoly& p, const SymmetricPoly& q) const;
  /// E[f(y)] with its standard error.
  Estimate expectation(const std::function<double(const double*, int)>& f) const;

  /// <m_a, m_b>, cached.
  Estimate monomial_inner(const Partition& a, const Partition& b);
  /// Moment sums of the monomial-symmetric basis over `types`, filling the cache.
  kernels::BatchMoments moments(const std::vector<Partition>& types,
                                std::span<const kernels::WeightFn> functions = {});

  nlohmann::json describe() const;

 private:
  MomentOracle(Subspace base, MomentMethod method, std::uint64_t seed);

  Subspace base_;
  MomentMethod method_;
  std::uint64_t seed_ = 0;
  kernels::SampleSet samples_;
  std::map<std::pair<Partition, Partition>, Estimate> cache_;
};

/// Gauss nodes and weights (weights summing to 1) for y ~ Beta(1/2, (n-1)/2)
/// on [0,1], from the Jacobi matrix of the matching Jacobi weight in x = 2y-1.
std::pair<std::vector<double>, std::vector<double>> beta_half_gauss_rule(int n, int nodes);

/// Samples of Beta(a, b) drawn as Gamma ratios.
std::vector<double> beta_samples(double a, double b, std::size_t count, std::uint64_t seed);

/// Two-sample KS test of Monte Carlo y = cos^2 theta on Gr_1(R^n) against
/// direct Beta(1/2, (n-1)/2) draws.
KsResult validate_kappa1_law(int n, std::size_t samples, std::uint64_t seed);

/// Result of orthogonalizing the monomial-symmetric basis against a Gram matrix.
struct GramSchmidtResult {
  Eigen::MatrixXd coefficients;  // lower unitriangular; row i = P_i in the m basis
  Eigen::VectorXd pivots;        // <P_i, P_i>
};

/// Modified Gram-Schmidt of the unit vectors under inner product `gram`,
/// in extended precision.
GramSchmidtResult gram_schmidt(const Eigen::MatrixXd& gram);

/// Gram matrix and delete-one-batch replicates assembled from batch sums.
struct PooledGram {
  Eigen::MatrixXd full;
  std::vector<Eigen::MatrixXd> replicates;  // one per batch when batches > 1
};
PooledGram pool_gram(const kernels::BatchMoments& m);
/// Cross moments E[f_t m_i] (rows t) and their delete-one-batch replicates.
struct PooledCross {
  Eigen::MatrixXd full;
  std::vector<Eigen::MatrixXd> replicates;
};
PooledCross pool_cross(const kernels::BatchMoments& m);

/// The generalized Jacobi polynomials P_lambda for lambda in Lambda_kappa(max_weight),
/// as coefficients in the monomial-symmetric basis, monic in m_lambda.
class JacobiFamily {
 public:
  JacobiFamily(int n, int k, int max_weight, std::vector<Partition> types, GramSchmidtResult gs,
               Eigen::MatrixXd coeff_error, Eigen::VectorXd pivot_error,
               std::vector<Eigen::MatrixXd> coeff_replicates, Eigen::MatrixXd gram, Subspace base,
               nlohmann::json oracle);

  int n() const { return n_; }
  int k() const { return k_; }
  int kappa() const { return std::min(k_, n_ - k_); }
  int max_weight() const { return max_weight_; }
  std::size_t size() const { return types_.size(); }
  const std::vector<Partition>& types() const { return types_; }
  const Subspace& base() const { return base_; }
  /// Position of lambda (any trailing-zero padding accepted); throws if absent.
  std::size_t index_of(const Partition& lambda) const;

  const Eigen::MatrixXd& coefficients() const { return coeffs_; }
  const Eigen::MatrixXd& coefficient_error() const { return coeff_error_; }
  const std::vector<Eigen::MatrixXd>& coefficient_replicates() const { return replicates_; }
  /// <P_i, P_i> in the construction measure, with jackknife errors.
  Estimate pivot(std::size_t i) const { return {pivots_[static_cast<Eigen::Index>(i)], pivot_error_[static_cast<Eigen::Index>(i)]}; }

  /// <P_i, P_j> in the construction measure (diagonal up to rounding).
  const Eigen::MatrixXd& gram() const { return gram_; }

  /// P_lambda as an exact polynomial in y_1..y_kappa (coefficients are the
  /// exact values of the stored doubles).
  SymmetricPoly poly(std::size_t i) const;
  double evaluate(std::size_t i, const double* y) const;
  /// Z_lambda(E) = P_lambda(y(E, base)).
  double evaluate_zonal(const Partition& lambda, const Subspace& e) const;
  /// P_lambda(1,...,1) with the error propagated from the coefficient replicates.
  Estimate value_at_identity(std::size_t i) const;

  nlohmann::json to_json() const;

 private:
  int n_, k_, max_weight_;
  std::vector<Partition> types_;
  Eigen::MatrixXd coeffs_;
  Eigen::VectorXd pivots_;
  Eigen::MatrixXd coeff_error_;
  Eigen::VectorXd pivot_error_;
  std::vector<Eigen::MatrixXd> replicates_;
  Eigen::MatrixXd gram_;
  Subspace base_;
  nlohmann::json oracle_;
  kernels::SymmetricBasis basis_;
};

/// Gram-Schmidt of {m_lambda : lambda in Lambda_kappa(max_weight)} in graded
/// order. Throws StatisticalGuardError if a pivot is below 5 of its standard errors.
JacobiFamily build_family(int max_weight, MomentOracle& oracle);
/// Same, from moments already accumulated over enumerate_types(kappa, max_weight).
JacobiFamily build_family(int max_weight, const MomentOracle& oracle, const kernels::BatchMoments& moments);

/// Off-diagonal Gram entries <P_i, P_j> recomputed on an independent oracle.
/// The error combines the validation sampling error with the construction
/// error carried by the family's coefficient replicates.
struct GramCheck {
  Eigen::MatrixXd value;
  Eigen::MatrixXd error;
  /// max over i != j of |value| / error (0 if all errors vanish and values do too).
  double worst_sigmas() const;
};
GramCheck validate_family(const JacobiFamily& family, MomentOracle& validation);

/// <f, Z_lambda> estimated from fresh Haar samples about the family's base.
Estimate spectral_component(const std::function<double(const Subspace&)>& f, const Partition& lambda,
                            const JacobiFamily& family, std::size_t samples, std::uint64_t seed,
                            std::size_t batches = kDefaultBatches);

}  // namespace gh
