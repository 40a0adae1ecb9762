#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "gh/rational.hpp"

namespace gh {

/// An O(n)-type: a partition with even, non-increasing parts, stored with
/// explicit trailing zeros up to the rank it was enumerated for.
class Partition {
 public:
  Partition() = default;
  /// Validates evenness, non-negativity and monotonicity.
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  std::size_t length() const { return parts_.size(); }
  int weight() const { return weight_; }

  /// 1-based part lambda_i; zero beyond the stored length.
  int part(std::size_t i) const { return i >= 1 && i <= parts_.size() ? parts_[i - 1] : 0; }

  /// Same partition padded (or trimmed of zeros) to exactly `len` parts.
  Partition resized(std::size_t len) const;

  std::string to_string() const;  // "(4,2,0)"
  static Partition parse(std::string_view text);

  bool operator==(const Partition& other) const { return parts_ == other.parts_; }
  /// Graded order: weight first, then lexicographically increasing, so
  /// that within a weight class less dominant partitions come first.
  std::strong_ordering operator<=>(const Partition& other) const;

 private:
  std::vector<int> parts_;
  int weight_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Partition& p);

/// A named total boolean function on partitions.
struct TypePredicate {
  std::string name;
  std::function<bool(const Partition&)> test;

  bool operator()(const Partition& p) const { return test(p); }

  static TypePredicate always();
  /// lambda_2 <= bound
  static TypePredicate second_part_at_most(int bound);
  /// lambda_2 >= bound
  static TypePredicate second_part_at_least(int bound);
  /// lambda_{j+1} = 0, i.e. at most j nonzero parts.
  static TypePredicate at_most_parts(int j);

  /// Parses the CLI spelling: all | lambda2_le:A | lambda2_ge:A | tail_zero:J.
  static TypePredicate parse(std::string_view text);
};

/// All of Lambda_k(max_weight), each of length k, in graded order.
/// Throws std::invalid_argument for odd or negative max_weight or k < 1.
std::vector<Partition> enumerate_types(int k, int max_weight);

/// Partitions of exactly `weight` (even) in Lambda_k, lexicographically increasing.
std::vector<Partition> enumerate_types_of_weight(int k, int weight);

/// P(m', k): partitions of m' into at most k parts (= types of weight 2m').
Integer types_of_weight(int k, int half_weight);

/// |Lambda_k(max_weight)| without enumerating.
Integer count_types(int k, int max_weight);

struct CountBounds {
  Rational lower;
  Rational upper;
};

/// Bracketing bounds (1/k!) C(m'+k-1, k-1) <= P(m',k) <= (1/k!) C(m'+C(k+1,2)-1, k-1).
CountBounds restricted_partition_bounds(int k, int half_weight);

/// |{lambda in Lambda_k(max_weight) : pred(lambda)}| / |Lambda_k(max_weight)|.
Rational density(const TypePredicate& pred, int k, int max_weight);

}  // namespace gh
