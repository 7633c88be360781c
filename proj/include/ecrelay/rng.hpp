#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ecrelay {

/// SplitMix64 mixing step.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Substream derivation scheme: chained SplitMix64 rounds over the master
/// seed and two coordinates (tag, index). Streams depend only on the
/// coordinates, never on evaluation order, so parallel workers reproduce
/// serial results bit for bit.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t a,
                                    std::uint64_t b) {
  std::uint64_t s = splitmix64(master);
  s = splitmix64(s ^ a);
  s = splitmix64(s ^ b);
  return s;
}

/// Draw helpers over mt19937_64 with a fixed uniform-consumption count
/// (exponential: 1, normal: 2), so a stream's layout does not depend on the
/// parameter values or the standard library's distribution internals.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  /// Exponential with the given mean (inverse CDF); mean 0 degenerates to 0.
  double exponential(double mean) {
    const double u = uniform01();
    if (mean <= 0.0) return 0.0;
    return -mean * std::log1p(-u);
  }

  /// Normal(mu, sd^2) truncated below at zero (Box-Muller, cosine branch).
  double normal_trunc0(double mu, double sd) {
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    if (sd <= 0.0) return std::max(0.0, mu);
    const double z =
        std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    return std::max(0.0, mu + sd * z);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace ecrelay
