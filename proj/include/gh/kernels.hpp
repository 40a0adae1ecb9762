#pragma once

// Data-parallel Monte Carlo kernels. Each kernel comes as a serial reference
// and an OpenMP version. Work is split into fixed batches, each with its own
// derived RNG stream and its own partial sums, and batches are combined in
// index order, so both versions produce bit-identical results for any
// thread count.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gh/partitions.hpp"

namespace gh::kernels {

/// Numeric evaluator for the monomial-symmetric polynomials m_lambda(y) of a
/// fixed list of types, in kappa variables (exponents lambda_i / 2).
class SymmetricBasis {
 public:
  SymmetricBasis(std::vector<Partition> types, int kappa);

  std::size_t size() const { return types_.size(); }
  int kappa() const { return kappa_; }
  const std::vector<Partition>& types() const { return types_; }

  /// out[i] = m_{types[i]}(y); y has kappa entries.
  void evaluate(const double* y, double* out) const;
  /// Same, reusing `scratch` for the power table (hot loops).
  void evaluate(const double* y, double* out, std::vector<double>& scratch) const;
  /// m_lambda(1,...,1): the number of distinct permutations.
  double value_at_ones(std::size_t i) const;

 private:
  std::vector<Partition> types_;
  int kappa_;
  int max_exponent_ = 0;
  // For type i: orbit exponents stored flat in [offsets_[i], offsets_[i+1]) * kappa.
  std::vector<int> exponents_;
  std::vector<std::size_t> offsets_;
};

/// Principal squared cosines of Haar samples against a base frame, stored
/// batch-contiguously. Optional per-sample weights turn the set into a
/// quadrature rule; empty weights mean equal weights.
struct SampleSet {
  int n = 0;
  int k = 0;
  int kappa = 0;
  std::vector<double> y;                    // size() * kappa
  std::vector<double> weights;              // empty or size()
  std::vector<std::size_t> batch_offsets;   // batches + 1 sample offsets

  std::size_t size() const { return kappa ? y.size() / static_cast<std::size_t>(kappa) : 0; }
  std::size_t batches() const { return batch_offsets.empty() ? 0 : batch_offsets.size() - 1; }
  const double* point(std::size_t s) const { return y.data() + s * static_cast<std::size_t>(kappa); }
};

/// Fills batch b with draws from stream (seed, b).
SampleSet draw_cosines_serial(int n, int k, const Eigen::MatrixXd& base, std::size_t samples,
                              std::uint64_t seed, std::size_t batches);
SampleSet draw_cosines_parallel(int n, int k, const Eigen::MatrixXd& base, std::size_t samples,
                                std::uint64_t seed, std::size_t batches);

/// A scalar weight w(y) on principal cosines (e.g. |cos|^alpha).
using WeightFn = std::function<double(const double* y, int kappa)>;

/// Per-batch weighted sums: gram[b](i,j) = sum w_s m_i m_j and
/// cross[b](t,i) = sum w_s f_t(y_s) m_i, mass[b] = sum w_s.
struct BatchMoments {
  std::size_t batches = 0;
  std::size_t basis = 0;
  std::size_t functions = 0;
  std::vector<double> gram;   // batches * basis * basis
  std::vector<double> cross;  // batches * functions * basis
  std::vector<double> mass;   // batches

  double gram_at(std::size_t b, std::size_t i, std::size_t j) const {
    return gram[(b * basis + i) * basis + j];
  }
  double cross_at(std::size_t b, std::size_t t, std::size_t i) const {
    return cross[(b * functions + t) * basis + i];
  }
};

BatchMoments accumulate_moments_serial(const SampleSet& samples, const SymmetricBasis& basis,
                                       std::span<const WeightFn> functions);
BatchMoments accumulate_moments_parallel(const SampleSet& samples, const SymmetricBasis& basis,
                                         std::span<const WeightFn> functions);

/// Nested Monte Carlo for ||R_{k,p} Z_lambda||^2: per outer p-subspace E,
/// `inner` independent k-subspaces F containing E give the unbiased
/// U-statistic for (E_F Z(F))^2. Z = coefficients * m(y(F, base)).
struct RadonSums {
  std::size_t outer = 0;
  std::vector<double> sum;     // per type
  std::vector<double> sum_sq;  // per type
};

RadonSums radon_norms_serial(int n, int k, int p, const Eigen::MatrixXd& base,
                             const SymmetricBasis& basis, const Eigen::MatrixXd& coefficients,
                             std::size_t outer, std::size_t inner, std::uint64_t seed,
                             std::size_t batches);
RadonSums radon_norms_parallel(int n, int k, int p, const Eigen::MatrixXd& base,
                               const SymmetricBasis& basis, const Eigen::MatrixXd& coefficients,
                               std::size_t outer, std::size_t inner, std::uint64_t seed,
                               std::size_t batches);

/// Splits `total` into `batches` near-equal contiguous ranges.
std::vector<std::size_t> batch_offsets(std::size_t total, std::size_t batches);

/// Threads used by the *_parallel kernels (OpenMP default unless overridden).
void set_thread_count(int threads);
int thread_count();

}  // namespace gh::kernels
