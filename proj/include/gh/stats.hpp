#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace gh {

/// A Monte Carlo (or deterministic) estimate with its standard error.
struct Estimate {
  double mean = 0.0;
  double error = 0.0;

  double sigmas() const { return error > 0 ? std::abs(mean) / error : (mean == 0 ? 0.0 : INFINITY); }
};

/// Sample mean and standard error of the mean.
Estimate mean_and_stderr(std::span<const double> xs);

/// Ratio estimate sum(sums) / sum(masses) from independent batches, with the
/// delete-one-batch jackknife error. One batch gives error 0.
Estimate batch_estimate(std::span<const double> sums, std::span<const double> masses);

/// Delete-one jackknife standard error from leave-one-out replicates.
double jackknife_stderr(std::span<const double> replicates);

/// Asymptotic Kolmogorov survival function Q(t) = 2 sum (-1)^{j-1} e^{-2 j^2 t^2}.
double kolmogorov_survival(double t);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// One-sample KS test of `xs` against a continuous CDF.
KsResult ks_one_sample(std::vector<double> xs, const std::function<double(double)>& cdf);
/// Two-sample KS test.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};

/// Ordinary least squares y ~ a + b x; needs at least two points.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace gh
