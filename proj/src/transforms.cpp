#include "gh/transforms.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gh/errors.hpp"
#include "gh/kernels.hpp"
#include "gh/rng.hpp"

namespace gh {

OperatorTag OperatorTag::parse(std::string_view text) {
  if (text == "cos") return cosine();
  auto value = [&](std::size_t prefix) { return std::string(text.substr(prefix)); };
  try {
    if (text.starts_with("alpha:")) {
      std::size_t used = 0;
      const std::string v = value(6);
      const double a = std::stod(v, &used);
      if (used != v.size() || !(a > -1.0)) throw std::invalid_argument("alpha");
      return alpha_cosine(a);
    }
    if (text.starts_with("radon:")) {
      std::size_t used = 0;
      const std::string v = value(6);
      const int p = std::stoi(v, &used);
      if (used != v.size() || p < 1) throw std::invalid_argument("p");
      return radon_adjoint(p);
    }
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("operator must be cos, alpha:A with A > -1, or radon:P with P >= 1; got '" +
                              std::string(text) + "'");
}

std::string OperatorTag::name() const {
  switch (kind) {
    case Kind::cosine:
      return "cos";
    case Kind::alpha_cosine: {
      std::ostringstream s;
      s << "alpha:" << alpha;
      return s.str();
    }
    case Kind::radon_adjoint:
      return "radon:" + std::to_string(p);
  }
  return {};
}

const MultiplierEstimate& MultiplierTable::at(const Partition& lambda) const {
  const Partition p = lambda.resized(static_cast<std::size_t>(kappa()));
  for (const auto& e : entries)
    if (e.lambda == p) return e;
  throw std::out_of_range("type " + lambda.to_string() + " not in table");
}

nlohmann::json MultiplierTable::to_json() const {
  nlohmann::json j;
  j["operator"] = op.name();
  j["n"] = n;
  j["k"] = k;
  j["max_weight"] = max_weight;
  j["seed"] = seed;
  j["samples"] = samples;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& e : entries)
    rows.push_back({{"type", e.lambda.to_string()}, {"mean", e.mean}, {"stderr", e.error}, {"samples", e.samples}});
  j["entries"] = rows;
  return j;
}

MultiplierTable MultiplierTable::from_json(const nlohmann::json& j) {
  MultiplierTable t;
  t.op = OperatorTag::parse(j.at("operator").get<std::string>());
  t.n = j.at("n").get<int>();
  t.k = j.at("k").get<int>();
  t.max_weight = j.at("max_weight").get<int>();
  t.seed = j.at("seed").get<std::uint64_t>();
  t.samples = j.at("samples").get<std::size_t>();
  for (const auto& row : j.at("entries")) {
    MultiplierEstimate e;
    e.lambda = Partition::parse(row.at("type").get<std::string>()).resized(static_cast<std::size_t>(t.kappa()));
    e.mean = row.at("mean").get<double>();
    e.error = row.at("stderr").get<double>();
    e.samples = row.at("samples").get<std::size_t>();
    e.op = t.op;
    t.entries.push_back(std::move(e));
  }
  return t;
}

MultiplierTable alpha_cosine_spectrum(MomentOracle& oracle, int max_weight, double alpha) {
  if (!(alpha > -1.0)) throw std::invalid_argument("alpha must exceed -1");
  const double half = alpha / 2.0;
  const std::vector<kernels::WeightFn> fns{[half](const double* y, int kappa) {
    double w = 1.0;
    for (int j = 0; j < kappa; ++j) w *= std::pow(y[j], half);
    return w;
  }};
  const kernels::BatchMoments m = oracle.moments(enumerate_types(oracle.kappa(), max_weight), fns);
  const JacobiFamily family = build_family(max_weight, oracle, m);
  const PooledCross h = pool_cross(m);
  const auto nb = static_cast<Eigen::Index>(family.size());
  const kernels::SymmetricBasis basis(family.types(), family.kappa());
  Eigen::VectorXd ones(nb);
  for (Eigen::Index j = 0; j < nb; ++j) ones(j) = basis.value_at_ones(static_cast<std::size_t>(j));

  // Multiplier vector for one (coefficients, cross-moment) pair, plus the
  // magnitude of the summed terms for the rounding floor.
  auto multipliers = [&](const Eigen::MatrixXd& c, const Eigen::MatrixXd& cross, Eigen::VectorXd& numer,
                         Eigen::VectorXd& denom, Eigen::VectorXd* magnitude) {
    numer = c * cross.row(0).transpose();
    denom = c * ones;
    if (magnitude) *magnitude = c.cwiseAbs() * cross.row(0).transpose().cwiseAbs();
  };

  Eigen::VectorXd numer, denom, magnitude;
  multipliers(family.coefficients(), h.full, numer, denom, &magnitude);
  const auto& reps = family.coefficient_replicates();
  std::vector<Eigen::VectorXd> e_reps, d_reps;
  for (std::size_t b = 0; b < reps.size(); ++b) {
    Eigen::VectorXd nr, dr;
    multipliers(reps[b], h.replicates[b], nr, dr, nullptr);
    e_reps.push_back(nr.cwiseQuotient(dr));
    d_reps.push_back(dr);
  }

  MultiplierTable table;
  table.n = oracle.n();
  table.k = oracle.k();
  table.max_weight = max_weight;
  table.op = alpha == 1.0 ? OperatorTag::cosine() : OperatorTag::alpha_cosine(alpha);
  table.seed = oracle.seed();
  table.samples = oracle.sample_count();
  std::vector<double> buf;
  for (Eigen::Index i = 0; i < nb; ++i) {
    buf.clear();
    for (const auto& d : d_reps) buf.push_back(d(i));
    const double d_err = jackknife_stderr(buf);
    const Partition& lambda = family.types()[static_cast<std::size_t>(i)];
    if (!(std::abs(denom(i)) >= 5.0 * d_err) || denom(i) == 0.0) {
      std::ostringstream msg;
      msg << "P" << lambda << "(1,...,1) = " << denom(i) << " with error " << d_err
          << "; increase the sample count";
      throw StatisticalGuardError(msg.str());
    }
    buf.clear();
    for (const auto& e : e_reps) buf.push_back(e(i));
    const double jk = jackknife_stderr(buf);
    // Rounding in the sum C h can leave ~1e-16 residues where the estimator is
    // exactly zero in exact arithmetic (alpha = 0 off the trivial type).
    const double rounding = 64.0 * DBL_EPSILON * magnitude(i) / std::abs(denom(i));
    MultiplierEstimate est;
    est.lambda = lambda;
    est.mean = numer(i) / denom(i);
    est.error = std::sqrt(jk * jk + rounding * rounding);
    est.samples = oracle.sample_count();
    est.op = table.op;
    table.entries.push_back(std::move(est));
  }
  return table;
}

MultiplierTable cosine_spectrum(MomentOracle& oracle, int max_weight) {
  return alpha_cosine_spectrum(oracle, max_weight, 1.0);
}

MultiplierTable radon_adjoint_spectrum(const JacobiFamily& family, int p, std::size_t outer, std::size_t inner,
                                       std::uint64_t seed, std::size_t batches) {
  if (outer < 2) throw std::invalid_argument("radon estimate needs at least two outer samples");
  const kernels::SymmetricBasis basis(family.types(), family.kappa());
  const kernels::RadonSums sums =
      kernels::radon_norms_parallel(family.n(), family.k(), p, family.base().frame(), basis, family.coefficients(),
                                    outer, inner, seed, std::min(batches, outer));
  MultiplierTable table;
  table.n = family.n();
  table.k = family.k();
  table.max_weight = family.max_weight();
  table.op = OperatorTag::radon_adjoint(p);
  table.seed = seed;
  table.samples = outer;
  const double no = static_cast<double>(outer);
  for (std::size_t i = 0; i < family.size(); ++i) {
    const double mean = sums.sum[i] / no;
    const double var = std::max(0.0, (sums.sum_sq[i] / no - mean * mean) * no / (no - 1.0));
    table.entries.push_back({family.types()[i], mean, std::sqrt(var / no), outer, table.op});
  }
  return table;
}

MultiplierTable compute_spectrum(const OperatorTag& op, int n, int k, int max_weight, std::size_t samples,
                                 std::uint64_t seed, std::size_t inner) {
  MomentOracle oracle = MomentOracle::monte_carlo(n, k, samples, seed);
  if (op.kind != OperatorTag::Kind::radon_adjoint) return alpha_cosine_spectrum(oracle, max_weight, op.exponent());
  if (op.p >= k) throw std::invalid_argument("radon:P needs P < k");
  const JacobiFamily family = build_family(max_weight, oracle);
  MultiplierTable t = radon_adjoint_spectrum(family, op.p, std::max<std::size_t>(samples / inner, 2), inner,
                                             mix_seed(seed ^ 0x5261646f6eULL));
  t.seed = seed;
  return t;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::vanishing:
      return "vanishing";
    case Verdict::surviving:
      return "surviving";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

Verdict classify(const Estimate& e, const Thresholds& t) {
  const double a = std::abs(e.mean);
  if (a <= t.vanish * e.error) return Verdict::vanishing;
  if (a >= t.survive * e.error) return Verdict::surviving;
  return Verdict::inconclusive;
}

MultiplierTable spectrum_with_escalation(const OperatorTag& op, int n, int k, int max_weight, std::size_t samples,
                                         std::uint64_t seed, int reruns, int* reruns_used, const Thresholds& t) {
  MultiplierTable table = compute_spectrum(op, n, k, max_weight, samples, seed);
  int used = 0;
  auto inconclusive = [&] {
    return std::any_of(table.entries.begin(), table.entries.end(),
                       [&](const MultiplierEstimate& e) { return classify(e.estimate(), t) == Verdict::inconclusive; });
  };
  while (used < reruns && inconclusive()) {
    samples *= 4;
    ++used;
    table = compute_spectrum(op, n, k, max_weight, samples, seed);
  }
  if (reruns_used) *reruns_used = used;
  return table;
}

PatternCheck check_pattern(const MultiplierTable& table, const TypePredicate& vanishes, const Thresholds& t) {
  PatternCheck out;
  for (const auto& e : table.entries) {
    const Verdict v = classify(e.estimate(), t);
    if (v == Verdict::inconclusive) {
      ++out.inconclusive;
      out.failures.push_back(e.lambda);
    } else if ((v == Verdict::vanishing) == vanishes(e.lambda)) {
      ++out.matched;
    } else {
      ++out.mismatched;
      out.failures.push_back(e.lambda);
    }
  }
  return out;
}

std::vector<DensityRow> support_density(const MultiplierTable& table, const Thresholds& t) {
  std::vector<DensityRow> rows;
  for (int w = 0; w <= table.max_weight; w += 2) {
    DensityRow r;
    r.max_weight = w;
    for (const auto& e : table.entries) {
      if (e.lambda.weight() > w) continue;
      ++r.total;
      if (classify(e.estimate(), t) == Verdict::surviving) ++r.surviving;
    }
    if (r.total == 0) continue;
    r.density = Rational(Integer(static_cast<unsigned long>(r.surviving)), Integer(static_cast<unsigned long>(r.total)));
    r.density.canonicalize();
    rows.push_back(std::move(r));
  }
  return rows;
}

MultiplierTable synthetic_table(int k, int max_weight, const TypePredicate& vanishes) {
  MultiplierTable table;
  table.n = 2 * k;
  table.k = k;
  table.max_weight = max_weight;
  table.op = OperatorTag::cosine();
  for (const auto& lambda : enumerate_types(k, max_weight))
    table.entries.push_back({lambda, vanishes(lambda) ? 0.0 : 1.0, 1e-3, 0, table.op});
  return table;
}

}  // namespace gh
