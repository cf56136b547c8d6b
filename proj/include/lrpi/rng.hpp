#pragma once

#include <cmath>
#include <cstdint>

namespace lrpi {

// SplitMix64 (Steele/Lea/Vigna). The state advances by a fixed odd constant
// and each output is a bijective mix of the state, i.e. the stream equals a
// hash of an incrementing counter. All state arithmetic is exact 64-bit
// integer math, so integer sequences are identical on every platform.
//
// Substreams: derive(base, k) hashes (base, k) into a fresh seed. Parallel
// workers must only ever share seeds through derive() or through distinct
// trial offsets (seed = base + trial).
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next_u64() noexcept {
    state_ += kGamma;
    return mix(state_);
  }

  // Uniform on [0, 1) with 53-bit resolution.
  double next_double() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on {0, ..., n-1}; plain modulo (bias ~ n / 2^64).
  std::size_t next_index(std::size_t n) noexcept {
    return static_cast<std::size_t>(next_u64() % n);
  }

  // Standard normal via Box-Muller; the antithetic partner is cached.
  double next_normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u = 1.0 - next_double();  // (0, 1]
    const double v = next_double();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double w = 2.0 * kPi * v;
    spare_ = r * std::sin(w);
    has_spare_ = true;
    return r * std::cos(w);
  }

  double next_exponential() noexcept { return -std::log(1.0 - next_double()); }

  // Geometric on {1, 2, ...} with success probability p, by inversion.
  long next_geometric(double p) noexcept {
    if (p >= 1.0) return 1;
    const double u = 1.0 - next_double();  // (0, 1]
    return 1 + static_cast<long>(std::floor(std::log(u) / std::log1p(-p)));
  }

  static std::uint64_t derive(std::uint64_t base, std::uint64_t stream) noexcept {
    return mix(base + kGamma * (stream + 1));
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  static constexpr double kPi = 3.14159265358979323846;

  static std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace lrpi
