#pragma once

#include <cmath>
#include <cstdint>

namespace verigen {

/*
 * Counter-seeded splitmix64 stream.
 *
 * Consumers never share a stream: anything that needs randomness for item k
 * of a batch derives its own generator with for_stream(seed, k). The
 * finalizer scrambles adjacent counters into statistically independent
 * states, which is what makes results independent of how items are split
 * across workers.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t state) : state_(state) {}

  // splitmix64 finalizer; full-avalanche 64-bit mix
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  static Rng for_stream(std::uint64_t seed, std::uint64_t stream) {
    return Rng(mix(mix(seed) + stream));
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1), 53-bit resolution
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

  // unbiased integer in [0, bound) by rejection from the top of the range
  std::uint64_t uniform_int(std::uint64_t bound) {
    const std::uint64_t all = ~std::uint64_t{0};
    const std::uint64_t limit = all - all % bound;  // multiple of bound
    std::uint64_t r = next_u64();
    while (r >= limit) r = next_u64();
    return r % bound;
  }

  // standard normal via Box-Muller; the second deviate of each pair is cached
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] so the log is finite
    double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    double r = std::sqrt(-2.0 * std::log(u1));
    double t = 2.0 * 3.14159265358979323846 * uniform();
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace verigen
