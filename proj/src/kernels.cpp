#include "gh/kernels.hpp"

#include <algorithm>
#include <stdexcept>

#include <omp.h>

#include "gh/grassmann.hpp"
#include "gh/rng.hpp"

namespace gh::kernels {

namespace {

int g_threads = 0;  // 0: OpenMP default

}  // namespace

void set_thread_count(int threads) { g_threads = std::max(0, threads); }

int thread_count() { return g_threads > 0 ? g_threads : omp_get_max_threads(); }

std::vector<std::size_t> batch_offsets(std::size_t total, std::size_t batches) {
  if (batches == 0) throw std::invalid_argument("need at least one batch");
  std::vector<std::size_t> off(batches + 1);
  for (std::size_t b = 0; b <= batches; ++b) off[b] = total * b / batches;
  return off;
}

SymmetricBasis::SymmetricBasis(std::vector<Partition> types, int kappa)
    : types_(std::move(types)), kappa_(kappa) {
  if (kappa < 1) throw std::invalid_argument("kappa must be positive");
  offsets_.push_back(0);
  for (const auto& t : types_) {
    const Partition padded = t.resized(static_cast<std::size_t>(kappa));
    std::vector<int> e(static_cast<std::size_t>(kappa));
    for (int j = 0; j < kappa; ++j) e[j] = padded.parts()[j] / 2;
    max_exponent_ = std::max(max_exponent_, e.empty() ? 0 : *std::max_element(e.begin(), e.end()));
    std::sort(e.begin(), e.end());
    std::size_t count = 0;
    do {
      exponents_.insert(exponents_.end(), e.begin(), e.end());
      ++count;
    } while (std::next_permutation(e.begin(), e.end()));
    offsets_.push_back(offsets_.back() + count);
  }
}

double SymmetricBasis::value_at_ones(std::size_t i) const {
  return static_cast<double>(offsets_.at(i + 1) - offsets_.at(i));
}

void SymmetricBasis::evaluate(const double* y, double* out) const {
  std::vector<double> scratch;
  evaluate(y, out, scratch);
}

void SymmetricBasis::evaluate(const double* y, double* out, std::vector<double>& scratch) const {
  const std::size_t stride = static_cast<std::size_t>(max_exponent_) + 1;
  scratch.resize(stride * static_cast<std::size_t>(kappa_));
  for (int j = 0; j < kappa_; ++j) {
    double* row = scratch.data() + static_cast<std::size_t>(j) * stride;
    row[0] = 1.0;
    for (std::size_t e = 1; e < stride; ++e) row[e] = row[e - 1] * y[j];
  }
  for (std::size_t i = 0; i < types_.size(); ++i) {
    double sum = 0.0;
    for (std::size_t o = offsets_[i]; o < offsets_[i + 1]; ++o) {
      const int* e = exponents_.data() + o * static_cast<std::size_t>(kappa_);
      double term = 1.0;
      for (int j = 0; j < kappa_; ++j) term *= scratch[static_cast<std::size_t>(j) * stride + static_cast<std::size_t>(e[j])];
      sum += term;
    }
    out[i] = sum;
  }
}

namespace {

// Reusable per-batch buffers for the "span(G) vs base" cosine computation.
// The cross-product base^T Q is obtained as (base^T G) R^{-1} from the QR
// factor of G, which has the same singular values as with the explicit Q.
struct CosineWorkspace {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr;
  Eigen::MatrixXd bg;
  Eigen::MatrixXd cross;

  void cosines(const Eigen::MatrixXd& base, const Eigen::MatrixXd& g, int kappa, double* out) {
    qr.compute(g);
    const auto k = g.cols();
    bg.noalias() = base.transpose() * g;
    const auto r = qr.matrixQR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
    // cross = bg * R^{-1}  <=>  R^T cross^T = bg^T
    cross = r.transpose().solve(bg.transpose()).transpose();
    squared_cosines(cross, kappa, out);
  }
};

void check_shape(int n, int k, const Eigen::MatrixXd& base) {
  if (k < 1 || k > n - 1) throw std::invalid_argument("sampling needs 1 <= k <= n-1");
  if (base.rows() != n || base.cols() != k) throw std::invalid_argument("base frame has wrong shape");
}

void draw_batch(int n, int k, int kappa, const Eigen::MatrixXd& base, std::uint64_t seed,
                std::size_t b, std::size_t begin, std::size_t end, double* y) {
  RngStream rng = RngStream::derive(seed, b);
  CosineWorkspace ws;
  Eigen::MatrixXd g(n, k);
  for (std::size_t s = begin; s < end; ++s) {
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < n; ++i) g(i, j) = rng.normal();
    ws.cosines(base, g, kappa, y + s * static_cast<std::size_t>(kappa));
  }
}

SampleSet make_set(int n, int k, std::size_t samples, std::size_t batches) {
  SampleSet set;
  set.n = n;
  set.k = k;
  set.kappa = std::min(k, n - k);
  set.y.assign(samples * static_cast<std::size_t>(set.kappa), 0.0);
  set.batch_offsets = batch_offsets(samples, batches);
  return set;
}

}  // namespace

SampleSet draw_cosines_serial(int n, int k, const Eigen::MatrixXd& base, std::size_t samples,
                              std::uint64_t seed, std::size_t batches) {
  check_shape(n, k, base);
  SampleSet set = make_set(n, k, samples, batches);
  for (std::size_t b = 0; b < set.batches(); ++b)
    draw_batch(n, k, set.kappa, base, seed, b, set.batch_offsets[b], set.batch_offsets[b + 1], set.y.data());
  return set;
}

SampleSet draw_cosines_parallel(int n, int k, const Eigen::MatrixXd& base, std::size_t samples,
                                std::uint64_t seed, std::size_t batches) {
  check_shape(n, k, base);
  SampleSet set = make_set(n, k, samples, batches);
  const auto nb = static_cast<std::ptrdiff_t>(set.batches());
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const auto ub = static_cast<std::size_t>(b);
    draw_batch(n, k, set.kappa, base, seed, ub, set.batch_offsets[ub], set.batch_offsets[ub + 1], set.y.data());
  }
  return set;
}

namespace {

BatchMoments make_moments(const SampleSet& samples, const SymmetricBasis& basis, std::size_t functions) {
  if (basis.kappa() != samples.kappa) throw std::invalid_argument("basis and samples disagree on kappa");
  BatchMoments m;
  m.batches = samples.batches();
  m.basis = basis.size();
  m.functions = functions;
  m.gram.assign(m.batches * m.basis * m.basis, 0.0);
  m.cross.assign(m.batches * m.functions * m.basis, 0.0);
  m.mass.assign(m.batches, 0.0);
  return m;
}

void accumulate_batch(const SampleSet& samples, const SymmetricBasis& basis,
                      std::span<const WeightFn> functions, std::size_t b, BatchMoments& m) {
  const std::size_t nb = basis.size();
  std::vector<double> v(nb), scratch, fv(functions.size());
  double* gram = m.gram.data() + b * nb * nb;
  double* cross = m.cross.data() + b * functions.size() * nb;
  double mass = 0.0;
  for (std::size_t s = samples.batch_offsets[b]; s < samples.batch_offsets[b + 1]; ++s) {
    const double* y = samples.point(s);
    const double w = samples.weights.empty() ? 1.0 : samples.weights[s];
    basis.evaluate(y, v.data(), scratch);
    mass += w;
    for (std::size_t i = 0; i < nb; ++i) {
      const double wi = w * v[i];
      for (std::size_t j = 0; j <= i; ++j) gram[i * nb + j] += wi * v[j];
    }
    for (std::size_t t = 0; t < functions.size(); ++t) {
      const double wf = w * functions[t](y, samples.kappa);
      for (std::size_t i = 0; i < nb; ++i) cross[t * nb + i] += wf * v[i];
    }
  }
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < i; ++j) gram[j * nb + i] = gram[i * nb + j];
  m.mass[b] = mass;
}

}  // namespace

BatchMoments accumulate_moments_serial(const SampleSet& samples, const SymmetricBasis& basis,
                                       std::span<const WeightFn> functions) {
  BatchMoments m = make_moments(samples, basis, functions.size());
  for (std::size_t b = 0; b < m.batches; ++b) accumulate_batch(samples, basis, functions, b, m);
  return m;
}

BatchMoments accumulate_moments_parallel(const SampleSet& samples, const SymmetricBasis& basis,
                                         std::span<const WeightFn> functions) {
  BatchMoments m = make_moments(samples, basis, functions.size());
  const auto nb = static_cast<std::ptrdiff_t>(m.batches);
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
  for (std::ptrdiff_t b = 0; b < nb; ++b) accumulate_batch(samples, basis, functions, static_cast<std::size_t>(b), m);
  return m;
}

namespace {

struct RadonBatch {
  std::vector<double> sum;
  std::vector<double> sum_sq;
};

RadonBatch radon_batch(int n, int k, int p, const Eigen::MatrixXd& base, const SymmetricBasis& basis,
                       const Eigen::MatrixXd& coefficients, std::size_t count, std::size_t inner,
                       std::uint64_t seed, std::size_t b) {
  const std::size_t nb = basis.size();
  const int kappa = basis.kappa();
  RngStream rng = RngStream::derive(seed, b, 1);
  RadonBatch out{std::vector<double>(nb, 0.0), std::vector<double>(nb, 0.0)};
  CosineWorkspace ws;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr_e;
  Eigen::MatrixXd ge(n, p), h(n, k - p), span(n, k), qe;
  std::vector<double> y(static_cast<std::size_t>(kappa)), mv(nb), scratch;
  Eigen::VectorXd zsum(nb), zsq(nb);
  for (std::size_t s = 0; s < count; ++s) {
    for (int j = 0; j < p; ++j)
      for (int i = 0; i < n; ++i) ge(i, j) = rng.normal();
    qr_e.compute(ge);
    qe = qr_e.householderQ() * Eigen::MatrixXd::Identity(n, p);
    span.leftCols(p) = qe;
    zsum.setZero();
    zsq.setZero();
    for (std::size_t r = 0; r < inner; ++r) {
      for (int j = 0; j < k - p; ++j)
        for (int i = 0; i < n; ++i) h(i, j) = rng.normal();
      // Gaussian directions projected onto E^perp are Haar in E^perp.
      span.rightCols(k - p) = h - qe * (qe.transpose() * h);
      ws.cosines(base, span, kappa, y.data());
      basis.evaluate(y.data(), mv.data(), scratch);
      const Eigen::VectorXd z = coefficients * Eigen::Map<const Eigen::VectorXd>(mv.data(), static_cast<Eigen::Index>(nb));
      zsum += z;
      zsq += z.cwiseProduct(z);
    }
    const double pairs = static_cast<double>(inner) * static_cast<double>(inner - 1);
    for (std::size_t i = 0; i < nb; ++i) {
      const double u = (zsum[static_cast<Eigen::Index>(i)] * zsum[static_cast<Eigen::Index>(i)] - zsq[static_cast<Eigen::Index>(i)]) / pairs;
      out.sum[i] += u;
      out.sum_sq[i] += u * u;
    }
  }
  return out;
}

void check_radon(int n, int k, int p, const Eigen::MatrixXd& base, const SymmetricBasis& basis,
                 const Eigen::MatrixXd& coefficients, std::size_t inner) {
  check_shape(n, k, base);
  if (p < 1 || p >= k) throw std::invalid_argument("radon kernel needs 1 <= p < k");
  if (inner < 2) throw std::invalid_argument("radon kernel needs at least two inner samples");
  const auto nb = static_cast<Eigen::Index>(basis.size());
  if (coefficients.rows() != nb || coefficients.cols() != nb)
    throw std::invalid_argument("coefficient matrix does not match basis");
}

RadonSums combine(std::vector<RadonBatch>& parts, std::size_t nb, std::size_t outer) {
  RadonSums sums{outer, std::vector<double>(nb, 0.0), std::vector<double>(nb, 0.0)};
  for (const auto& part : parts)
    for (std::size_t i = 0; i < nb; ++i) {
      sums.sum[i] += part.sum[i];
      sums.sum_sq[i] += part.sum_sq[i];
    }
  return sums;
}

}  // namespace

RadonSums radon_norms_serial(int n, int k, int p, const Eigen::MatrixXd& base,
                             const SymmetricBasis& basis, const Eigen::MatrixXd& coefficients,
                             std::size_t outer, std::size_t inner, std::uint64_t seed,
                             std::size_t batches) {
  check_radon(n, k, p, base, basis, coefficients, inner);
  const auto off = batch_offsets(outer, batches);
  std::vector<RadonBatch> parts;
  for (std::size_t b = 0; b < batches; ++b)
    parts.push_back(radon_batch(n, k, p, base, basis, coefficients, off[b + 1] - off[b], inner, seed, b));
  return combine(parts, basis.size(), outer);
}

RadonSums radon_norms_parallel(int n, int k, int p, const Eigen::MatrixXd& base,
                               const SymmetricBasis& basis, const Eigen::MatrixXd& coefficients,
                               std::size_t outer, std::size_t inner, std::uint64_t seed,
                               std::size_t batches) {
  check_radon(n, k, p, base, basis, coefficients, inner);
  const auto off = batch_offsets(outer, batches);
  std::vector<RadonBatch> parts(batches);
  const auto nbatch = static_cast<std::ptrdiff_t>(batches);
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
  for (std::ptrdiff_t b = 0; b < nbatch; ++b) {
    const auto ub = static_cast<std::size_t>(b);
    parts[ub] = radon_batch(n, k, p, base, basis, coefficients, off[ub + 1] - off[ub], inner, seed, ub);
  }
  return combine(parts, basis.size(), outer);
}

}  // namespace gh::kernels
