#pragma once

#include <cstdint>
#include <random>

namespace fans {

/// Purposes for deriving independent random streams from one seed.
enum class Stream : std::uint64_t {
  kLabels = 1,
  kAdjacency = 2,
  kFeatures = 3,
  kTieBreak = 4,
  kCrossValidation = 5,
  kTrial = 6,
  kPairSample = 7,
  kEstimator = 8,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for the stream identified by (seed, purpose, index). Streams are
/// keyed, not sequential, so results never depend on evaluation order.
constexpr std::uint64_t derive_seed(std::uint64_t seed, Stream purpose,
                                    std::uint64_t index = 0) noexcept {
  std::uint64_t h = splitmix64(seed ^ 0x6a09e667f3bcc909ULL);
  h = splitmix64(h ^ static_cast<std::uint64_t>(purpose));
  return splitmix64(h ^ index);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, Stream purpose, std::uint64_t a,
                                    std::uint64_t b) noexcept {
  return splitmix64(derive_seed(seed, purpose, a) ^ (b * 0xd1b54a32d192ed03ULL));
}

/// Uniform double in the open interval (0, 1) from 53 random bits.
constexpr double to_open_unit(std::uint64_t bits) noexcept {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, Stream purpose, std::uint64_t index = 0)
      : engine_(derive_seed(seed, purpose, index)) {}

  double uniform() { return to_open_unit(engine_()); }
  double normal() { return normal_(engine_); }
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
  }
  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace fans
