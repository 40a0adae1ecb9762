#pragma once

#include <stdexcept>
#include <string>

namespace gh {

/// Raised when a Monte Carlo estimate is too noisy for the decision it feeds
/// (a Gram pivot or normalizer below 5 of its standard errors). The CLI maps
/// this to the "statistically inconclusive" exit code.
class StatisticalGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a subspace meets the complement of the base point numerically,
/// so the rescaling flow or the graph chart is undefined there.
class DegenerateSubspaceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace gh
