#pragma once

#include <cstdint>
#include <random>

namespace gh {

/// splitmix64 finalizer; used to derive independent seeds for named streams.
std::uint64_t mix_seed(std::uint64_t x);

/// A seeded random stream. Concurrent tasks each own one, derived from a
/// base seed and a stream id so results do not depend on scheduling.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(mix_seed(seed)) {}

  /// Stream number `id` (and optional sub-id) of the family rooted at `seed`.
  static RngStream derive(std::uint64_t seed, std::uint64_t id, std::uint64_t sub = 0) {
    return RngStream(mix_seed(seed ^ mix_seed(id + 0x9e3779b97f4a7c15ULL * (sub + 1))));
  }

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace gh
