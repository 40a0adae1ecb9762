#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "gh/partitions.hpp"
#include "gh/stats.hpp"
#include "gh/zonal.hpp"

namespace gh {

/// Which equivariant operator a multiplier belongs to.
struct OperatorTag {
  enum class Kind { cosine, alpha_cosine, radon_adjoint };
  Kind kind = Kind::cosine;
  double alpha = 1.0;  // alpha_cosine
  int p = 0;           // radon_adjoint: Gr_k -> Gr_p

  static OperatorTag cosine() { return {}; }
  static OperatorTag alpha_cosine(double a) { return {Kind::alpha_cosine, a, 0}; }
  static OperatorTag radon_adjoint(int p) { return {Kind::radon_adjoint, 1.0, p}; }
  /// cos | alpha:A | radon:P
  static OperatorTag parse(std::string_view text);
  std::string name() const;
  /// Exponent of |cos| for the cosine family (1 for cos).
  double exponent() const { return kind == Kind::cosine ? 1.0 : alpha; }
};

struct MultiplierEstimate {
  Partition lambda;
  double mean = 0.0;
  double error = 0.0;
  std::size_t samples = 0;
  OperatorTag op;

  Estimate estimate() const { return {mean, error}; }
};

struct MultiplierTable {
  int n = 0;
  int k = 0;
  int max_weight = 0;
  OperatorTag op;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::vector<MultiplierEstimate> entries;  // graded order over Lambda_kappa(max_weight)

  int kappa() const { return std::min(k, n - k); }
  const MultiplierEstimate& at(const Partition& lambda) const;

  nlohmann::json to_json() const;
  static MultiplierTable from_json(const nlohmann::json& j);
};

/// Multipliers of T_alpha(h)(E') = int |cos(E,E')|^alpha h(E) dE on every type
/// in Lambda_kappa(max_weight): e_lambda = E[|cos|^alpha P_lambda(y)] / P_lambda(1,...,1),
/// with the family built from the oracle's own samples. Errors come from the
/// delete-one-batch jackknife through the whole pipeline. Throws
/// StatisticalGuardError if some |P_lambda(1,...,1)| is below 5 of its errors.
MultiplierTable alpha_cosine_spectrum(MomentOracle& oracle, int max_weight, double alpha);
MultiplierTable cosine_spectrum(MomentOracle& oracle, int max_weight);

/// ||R_{k,p} Z_lambda||^2 for every type of the family: outer Haar p-subspaces E,
/// `inner` Haar k-subspaces F containing E per outer draw, and the unbiased
/// pair-product estimate of (E_F Z(F))^2. Samples are shared across types.
MultiplierTable radon_adjoint_spectrum(const JacobiFamily& family, int p, std::size_t outer,
                                       std::size_t inner, std::uint64_t seed,
                                       std::size_t batches = kDefaultBatches);

inline constexpr std::size_t kDefaultRadonInner = 16;

/// One-call spectrum for the CLI and the acceptance suite. For Radon, the
/// family uses `samples` draws and the adjoint norm samples/inner outer draws.
MultiplierTable compute_spectrum(const OperatorTag& op, int n, int k, int max_weight, std::size_t samples,
                                 std::uint64_t seed, std::size_t inner = kDefaultRadonInner);

enum class Verdict { vanishing, surviving, inconclusive };
std::string_view to_string(Verdict v);

struct Thresholds {
  double vanish = 3.0;
  double survive = 5.0;
};

/// |mean| <= vanish * error: vanishing; >= survive * error: surviving; else inconclusive.
Verdict classify(const Estimate& e, const Thresholds& t = {});

/// Computes the spectrum and, while any entry is inconclusive, re-runs it with
/// 4x the samples (at most `reruns` times). `reruns_used` reports how many.
MultiplierTable spectrum_with_escalation(const OperatorTag& op, int n, int k, int max_weight, std::size_t samples,
                                         std::uint64_t seed, int reruns, int* reruns_used = nullptr,
                                         const Thresholds& t = {});

/// Agreement of a table's verdicts with a predicate saying which types vanish.
struct PatternCheck {
  std::size_t matched = 0;
  std::size_t mismatched = 0;
  std::size_t inconclusive = 0;
  std::vector<Partition> failures;  // mismatched or inconclusive types
  bool ok() const { return mismatched == 0 && inconclusive == 0; }
};
PatternCheck check_pattern(const MultiplierTable& table, const TypePredicate& vanishes, const Thresholds& t = {});

/// Exact density of the surviving set in Lambda_kappa(2m') for each 2m' up to
/// the table's max weight. Inconclusive types count as not surviving.
struct DensityRow {
  int max_weight = 0;
  std::size_t surviving = 0;
  std::size_t total = 0;
  Rational density;
};
std::vector<DensityRow> support_density(const MultiplierTable& table, const Thresholds& t = {});

/// A table with multiplier 0 on the types where `vanishes` holds and 1
/// elsewhere (error 1e-3), standing in for an operator with known support.
MultiplierTable synthetic_table(int k, int max_weight, const TypePredicate& vanishes);

}  // namespace gh
