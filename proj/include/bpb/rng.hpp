#pragma once

#include <cstdint>

#include "bpb/complex_matrix.hpp"

namespace bpb {

/// SplitMix64 stream with hand-rolled uniform/Gaussian draws. Standard
/// library distributions are not bit-stable across implementations, and
/// the experiment harness promises bit-identical reports per seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// uniform in [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// standard normal via Box-Muller
  double gaussian() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    double u1 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
  }

  Complex complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return Complex(re, im);
  }

  /// Stream derivation for per-trial substreams: hash(seed, cell, trial).
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t cell, std::uint64_t trial) {
    Rng h(seed);
    std::uint64_t acc = h.next_u64();
    Rng hc(acc ^ (cell * 0xD6E8FEB86659FD93ULL + 1));
    acc = hc.next_u64();
    Rng ht(acc ^ (trial * 0xCA5A826395121157ULL + 1));
    return ht.next_u64();
  }

 private:
  std::uint64_t state_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace bpb
