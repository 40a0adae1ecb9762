#include "gh/zonal.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "gh/errors.hpp"
#include "gh/rng.hpp"

namespace gh {

std::size_t default_samples(int kappa) { return kappa >= 3 ? 4'000'000 : 1'000'000; }

MomentOracle::MomentOracle(Subspace base, MomentMethod method, std::uint64_t seed)
    : base_(std::move(base)), method_(method), seed_(seed) {}

MomentOracle MomentOracle::monte_carlo(int n, int k, std::size_t samples, std::uint64_t seed,
                                       std::size_t batches) {
  return monte_carlo(Subspace::canonical(n, k), samples, seed, batches);
}

MomentOracle MomentOracle::monte_carlo(const Subspace& base, std::size_t samples, std::uint64_t seed,
                                       std::size_t batches) {
  if (samples < batches || batches == 0) throw std::invalid_argument("need at least one sample per batch");
  MomentOracle o(base, MomentMethod::monte_carlo, seed);
  o.samples_ = kernels::draw_cosines_parallel(base.n(), base.k(), base.frame(), samples, seed, batches);
  return o;
}

MomentOracle MomentOracle::quadrature_kappa1(int n, int k, int nodes) {
  MomentOracle o(Subspace::canonical(n, k), MomentMethod::quadrature_kappa1, 0);
  if (o.kappa() != 1) throw std::invalid_argument("quadrature oracle needs kappa = 1");
  auto [y, w] = beta_half_gauss_rule(n, nodes);
  o.samples_.n = n;
  o.samples_.k = k;
  o.samples_.kappa = 1;
  o.samples_.y = std::move(y);
  o.samples_.weights = std::move(w);
  o.samples_.batch_offsets = {0, o.samples_.y.size()};
  return o;
}

Estimate MomentOracle::expectation(const std::function<double(const double*, int)>& f) const {
  const std::size_t nb = samples_.batches();
  std::vector<double> sums(nb, 0.0), masses(nb, 0.0);
  for (std::size_t b = 0; b < nb; ++b)
    for (std::size_t s = samples_.batch_offsets[b]; s < samples_.batch_offsets[b + 1]; ++s) {
      const double w = samples_.weights.empty() ? 1.0 : samples_.weights[s];
      sums[b] += w * f(samples_.point(s), samples_.kappa);
      masses[b] += w;
    }
  return batch_estimate(sums, masses);
}

Estimate MomentOracle::inner_product(const SymmetricPoly& p, const SymmetricPoly& q) const {
  if (p.nvars() != static_cast<std::size_t>(kappa()) || q.nvars() != static_cast<std::size_t>(kappa()))
    throw std::invalid_argument("inner product needs polynomials in kappa variables");
  return expectation([&](const double* y, int kappa) {
    std::span<const double> pt(y, static_cast<std::size_t>(kappa));
    return p.evaluate(pt) * q.evaluate(pt);
  });
}

kernels::BatchMoments MomentOracle::moments(const std::vector<Partition>& types,
                                            std::span<const kernels::WeightFn> functions) {
  kernels::SymmetricBasis basis(types, kappa());
  kernels::BatchMoments m = kernels::accumulate_moments_parallel(samples_, basis, functions);
  const PooledGram g = pool_gram(m);
  for (std::size_t i = 0; i < types.size(); ++i)
    for (std::size_t j = 0; j < types.size(); ++j) {
      const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
      std::vector<double> reps;
      for (const auto& r : g.replicates) reps.push_back(r(ii, jj));
      cache_[{types[i], types[j]}] = {g.full(ii, jj), jackknife_stderr(reps)};
    }
  return m;
}

Estimate MomentOracle::monomial_inner(const Partition& a, const Partition& b) {
  const Partition pa = a.resized(static_cast<std::size_t>(kappa()));
  const Partition pb = b.resized(static_cast<std::size_t>(kappa()));
  auto it = cache_.find({pa, pb});
  if (it != cache_.end()) return it->second;
  moments(pa == pb ? std::vector<Partition>{pa} : std::vector<Partition>{pa, pb});
  return cache_.at({pa, pb});
}

nlohmann::json MomentOracle::describe() const {
  nlohmann::json j;
  j["n"] = n();
  j["k"] = k();
  if (method_ == MomentMethod::monte_carlo) {
    j["method"] = "monte_carlo";
    j["samples"] = samples_.size();
    j["batches"] = samples_.batches();
    j["seed"] = seed_;
  } else {
    j["method"] = "quadrature_kappa1";
    j["nodes"] = samples_.size();
  }
  return j;
}

std::pair<std::vector<double>, std::vector<double>> beta_half_gauss_rule(int n, int nodes) {
  if (n < 2 || nodes < 1) throw std::invalid_argument("Gauss rule needs n >= 2 and nodes >= 1");
  // Jacobi weight (1-x)^a (1+x)^b on [-1,1] with x = 2y - 1.
  const double a = (n - 3) / 2.0;
  const double b = -0.5;
  const double s = a + b;
  Eigen::MatrixXd jm = Eigen::MatrixXd::Zero(nodes, nodes);
  for (int j = 0; j < nodes; ++j) {
    jm(j, j) = j == 0 ? (b - a) / (s + 2.0) : (b * b - a * a) / ((2.0 * j + s) * (2.0 * j + s + 2.0));
    if (j + 1 < nodes) {
      const double i = j + 1;
      double b2;
      if (j == 0) {
        b2 = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + s) * (2.0 + s) * (3.0 + s));
      } else {
        const double t = 2.0 * i + s;
        b2 = 4.0 * i * (i + a) * (i + b) * (i + s) / (t * t * (t + 1.0) * (t - 1.0));
      }
      jm(j, j + 1) = jm(j + 1, j) = std::sqrt(b2);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jm);
  std::vector<double> y(static_cast<std::size_t>(nodes)), w(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i) {
    y[static_cast<std::size_t>(i)] = (es.eigenvalues()(i) + 1.0) / 2.0;
    const double v = es.eigenvectors()(0, i);
    w[static_cast<std::size_t>(i)] = v * v;
  }
  return {y, w};
}

std::vector<double> beta_samples(double a, double b, std::size_t count, std::uint64_t seed) {
  RngStream rng(seed);
  std::gamma_distribution<double> ga(a, 1.0), gb(b, 1.0);
  std::vector<double> out(count);
  for (auto& v : out) {
    const double x = ga(rng.engine());
    const double z = gb(rng.engine());
    v = x / (x + z);
  }
  return out;
}

KsResult validate_kappa1_law(int n, std::size_t samples, std::uint64_t seed) {
  const Subspace base = Subspace::canonical(n, 1);
  const auto set = kernels::draw_cosines_parallel(n, 1, base.frame(), samples, seed, kDefaultBatches);
  return ks_two_sample(set.y, beta_samples(0.5, (n - 1) / 2.0, samples, mix_seed(seed + 1)));
}

GramSchmidtResult gram_schmidt(const Eigen::MatrixXd& gram) {
  using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = gram.rows();
  if (gram.cols() != n) throw std::invalid_argument("Gram matrix must be square");
  const Mat g = gram.cast<long double>();
  Mat c = Mat::Identity(n, n);
  Eigen::Matrix<long double, Eigen::Dynamic, 1> d(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      const long double proj = (c.row(i) * g * c.row(j).transpose())(0, 0) / d(j);
      c.row(i) -= proj * c.row(j);
    }
    d(i) = (c.row(i) * g * c.row(i).transpose())(0, 0);
  }
  return {c.cast<double>(), d.cast<double>()};
}

PooledGram pool_gram(const kernels::BatchMoments& m) {
  const auto nb = static_cast<Eigen::Index>(m.basis);
  PooledGram out;
  out.full = Eigen::MatrixXd::Zero(nb, nb);
  double mass = 0.0;
  auto batch = [&](std::size_t b) {
    return Eigen::Map<const Eigen::MatrixXd>(m.gram.data() + b * m.basis * m.basis, nb, nb);
  };
  for (std::size_t b = 0; b < m.batches; ++b) {
    out.full += batch(b);
    mass += m.mass[b];
  }
  if (m.batches > 1)
    for (std::size_t b = 0; b < m.batches; ++b)
      out.replicates.push_back((out.full - batch(b)) / (mass - m.mass[b]));
  out.full /= mass;
  return out;
}

PooledCross pool_cross(const kernels::BatchMoments& m) {
  const auto nf = static_cast<Eigen::Index>(m.functions);
  const auto nb = static_cast<Eigen::Index>(m.basis);
  PooledCross out;
  out.full = Eigen::MatrixXd::Zero(nf, nb);
  double mass = 0.0;
  // Stored row-major (function, basis); map as the transpose of a column-major block.
  auto batch = [&](std::size_t b) {
    return Eigen::Map<const Eigen::MatrixXd>(m.cross.data() + b * m.functions * m.basis, nb, nf).transpose();
  };
  for (std::size_t b = 0; b < m.batches; ++b) {
    out.full += batch(b);
    mass += m.mass[b];
  }
  if (m.batches > 1)
    for (std::size_t b = 0; b < m.batches; ++b)
      out.replicates.push_back((out.full - batch(b)) / (mass - m.mass[b]));
  out.full /= mass;
  return out;
}

JacobiFamily::JacobiFamily(int n, int k, int max_weight, std::vector<Partition> types, GramSchmidtResult gs,
                           Eigen::MatrixXd coeff_error, Eigen::VectorXd pivot_error,
                           std::vector<Eigen::MatrixXd> coeff_replicates, Eigen::MatrixXd gram, Subspace base,
                           nlohmann::json oracle)
    : n_(n), k_(k), max_weight_(max_weight), types_(std::move(types)), coeffs_(std::move(gs.coefficients)),
      pivots_(std::move(gs.pivots)), coeff_error_(std::move(coeff_error)), pivot_error_(std::move(pivot_error)),
      replicates_(std::move(coeff_replicates)), gram_(std::move(gram)), base_(std::move(base)),
      oracle_(std::move(oracle)), basis_(types_, std::min(k, n - k)) {}

std::size_t JacobiFamily::index_of(const Partition& lambda) const {
  const Partition p = lambda.resized(static_cast<std::size_t>(kappa()));
  auto it = std::find(types_.begin(), types_.end(), p);
  if (it == types_.end()) throw std::out_of_range("type " + lambda.to_string() + " not in family");
  return static_cast<std::size_t>(it - types_.begin());
}

SymmetricPoly JacobiFamily::poly(std::size_t i) const {
  MultiPoly p(static_cast<std::size_t>(kappa()));
  for (std::size_t j = 0; j <= i; ++j) {
    const double c = coeffs_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    if (c == 0.0) continue;
    p += scale(monomial_symmetric(types_[j], static_cast<std::size_t>(kappa())).poly(), exact_rational(c));
  }
  return SymmetricPoly(std::move(p));
}

double JacobiFamily::evaluate(std::size_t i, const double* y) const {
  std::vector<double> m(types_.size());
  basis_.evaluate(y, m.data());
  double v = 0.0;
  for (std::size_t j = 0; j <= i; ++j) v += coeffs_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * m[j];
  return v;
}

double JacobiFamily::evaluate_zonal(const Partition& lambda, const Subspace& e) const {
  const PrincipalCosines pc = principal_cosines(e, base_);
  return evaluate(index_of(lambda), pc.y.data());
}

Estimate JacobiFamily::value_at_identity(std::size_t i) const {
  const auto ii = static_cast<Eigen::Index>(i);
  auto value = [&](const Eigen::MatrixXd& c) {
    double v = 0.0;
    for (std::size_t j = 0; j <= i; ++j) v += c(ii, static_cast<Eigen::Index>(j)) * basis_.value_at_ones(j);
    return v;
  };
  std::vector<double> reps;
  for (const auto& r : replicates_) reps.push_back(value(r));
  return {value(coeffs_), jackknife_stderr(reps)};
}

nlohmann::json JacobiFamily::to_json() const {
  nlohmann::json j;
  j["n"] = n_;
  j["k"] = k_;
  j["kappa"] = kappa();
  j["max_weight"] = max_weight_;
  j["oracle"] = oracle_;
  auto matrix = [](const Eigen::MatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
      rows.push_back(row);
    }
    return rows;
  };
  nlohmann::json polys = nlohmann::json::array();
  for (std::size_t i = 0; i < types_.size(); ++i) {
    nlohmann::json entry;
    entry["type"] = types_[i].to_string();
    entry["poly"] = gh::to_json(poly(i).poly());
    entry["pivot"] = pivots_[static_cast<Eigen::Index>(i)];
    entry["pivot_error"] = pivot_error_[static_cast<Eigen::Index>(i)];
    polys.push_back(entry);
  }
  j["polys"] = polys;
  j["coefficients"] = matrix(coeffs_);
  j["coefficient_error"] = matrix(coeff_error_);
  j["gram"] = matrix(gram_);
  return j;
}

JacobiFamily build_family(int max_weight, MomentOracle& oracle) {
  const kernels::BatchMoments m = oracle.moments(enumerate_types(oracle.kappa(), max_weight));
  return build_family(max_weight, oracle, m);
}

JacobiFamily build_family(int max_weight, const MomentOracle& oracle, const kernels::BatchMoments& m) {
  std::vector<Partition> types = enumerate_types(oracle.kappa(), max_weight);
  if (types.size() != m.basis) throw std::invalid_argument("moments do not match the type range");
  const PooledGram g = pool_gram(m);
  GramSchmidtResult gs = gram_schmidt(g.full);
  const auto nb = static_cast<Eigen::Index>(types.size());

  std::vector<Eigen::MatrixXd> coeff_reps;
  std::vector<Eigen::VectorXd> pivot_reps;
  for (const auto& r : g.replicates) {
    GramSchmidtResult rep = gram_schmidt(r);
    coeff_reps.push_back(std::move(rep.coefficients));
    pivot_reps.push_back(std::move(rep.pivots));
  }
  Eigen::MatrixXd coeff_error = Eigen::MatrixXd::Zero(nb, nb);
  Eigen::VectorXd pivot_error = Eigen::VectorXd::Zero(nb);
  std::vector<double> buf;
  for (Eigen::Index i = 0; i < nb; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      buf.clear();
      for (const auto& c : coeff_reps) buf.push_back(c(i, j));
      coeff_error(i, j) = jackknife_stderr(buf);
    }
    buf.clear();
    for (const auto& p : pivot_reps) buf.push_back(p(i));
    pivot_error(i) = jackknife_stderr(buf);
    if (!(gs.pivots(i) > 5.0 * pivot_error(i)) || !(gs.pivots(i) > 0.0)) {
      std::ostringstream msg;
      msg << "Gram pivot for " << types[static_cast<std::size_t>(i)] << " is " << gs.pivots(i)
          << " with standard error " << pivot_error(i) << "; increase the sample count";
      throw StatisticalGuardError(msg.str());
    }
  }
  Eigen::MatrixXd gram = gs.coefficients * g.full * gs.coefficients.transpose();
  return JacobiFamily(oracle.n(), oracle.k(), max_weight, std::move(types), std::move(gs), std::move(coeff_error),
                      std::move(pivot_error), std::move(coeff_reps), std::move(gram), oracle.base(),
                      oracle.describe());
}

double GramCheck::worst_sigmas() const {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < value.rows(); ++i)
    for (Eigen::Index j = 0; j < value.cols(); ++j) {
      if (i == j) continue;
      worst = std::max(worst, Estimate{value(i, j), error(i, j)}.sigmas());
    }
  return worst;
}

GramCheck validate_family(const JacobiFamily& family, MomentOracle& validation) {
  if (validation.n() != family.n() || validation.k() != family.k())
    throw std::invalid_argument("validation oracle is for a different grassmannian");
  const kernels::BatchMoments m = validation.moments(family.types());
  const PooledGram g = pool_gram(m);
  const Eigen::MatrixXd& c = family.coefficients();
  const auto nb = c.rows();
  GramCheck out{c * g.full * c.transpose(), Eigen::MatrixXd::Zero(nb, nb)};
  std::vector<Eigen::MatrixXd> val_reps, cons_reps;
  for (const auto& r : g.replicates) val_reps.push_back(c * r * c.transpose());
  for (const auto& rc : family.coefficient_replicates()) cons_reps.push_back(rc * g.full * rc.transpose());
  std::vector<double> buf;
  for (Eigen::Index i = 0; i < nb; ++i)
    for (Eigen::Index j = 0; j < nb; ++j) {
      buf.clear();
      for (const auto& r : val_reps) buf.push_back(r(i, j));
      const double sv = jackknife_stderr(buf);
      buf.clear();
      for (const auto& r : cons_reps) buf.push_back(r(i, j));
      const double sc = jackknife_stderr(buf);
      out.error(i, j) = std::sqrt(sv * sv + sc * sc);
    }
  return out;
}

Estimate spectral_component(const std::function<double(const Subspace&)>& f, const Partition& lambda,
                            const JacobiFamily& family, std::size_t samples, std::uint64_t seed,
                            std::size_t batches) {
  const std::size_t idx = family.index_of(lambda);
  const auto off = kernels::batch_offsets(samples, batches);
  std::vector<double> sums(batches, 0.0), masses(batches, 0.0);
  for (std::size_t b = 0; b < batches; ++b) {
    RngStream rng = RngStream::derive(seed, b, 2);
    for (std::size_t s = off[b]; s < off[b + 1]; ++s) {
      const Subspace e = haar_sample(family.n(), family.k(), rng);
      const PrincipalCosines pc = principal_cosines(e, family.base());
      sums[b] += f(e) * family.evaluate(idx, pc.y.data());
      masses[b] += 1.0;
    }
  }
  return batch_estimate(sums, masses);
}

}  // namespace gh
