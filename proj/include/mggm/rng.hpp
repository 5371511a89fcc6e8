#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace mggm {

// Generator identifier recorded in result metadata. Bump the suffix whenever
// the stream produced for a given seed changes.
inline constexpr const char* kRngAlgorithm = "mt19937_64+polar53/v1";

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Deterministic child seed for sub-stream `stream` of `seed`. Used to give the
// graph generators and the sampler of one replication independent streams.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed + (stream + 1) * 0x9E3779B97F4A7C15ULL);
}

// Seedable generator with a fixed, portable stream: mt19937_64 seeded through
// splitmix64, uniforms from the top 53 bits, normals via the Marsaglia polar
// method. std::*_distribution is avoided because its output is
// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool bernoulli(double prob) { return uniform() < prob; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace mggm
