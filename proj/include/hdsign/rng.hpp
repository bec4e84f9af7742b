#pragma once

#include <cstdint>
#include <random>

namespace hdsign {

/// Reproducible random stream keyed by (seed, stream_id).
///
/// The pair is mixed through SplitMix64 into the seed of a mt19937_64, so
/// distinct stream ids give independent-looking streams and the same pair
/// always reproduces the same draws on one platform.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  double normal() { return normal_(engine_); }
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double chi_squared(double df) { return std::chi_squared_distribution<double>(df)(engine_); }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace hdsign
