#pragma once

#include <cmath>
#include <cstdint>

namespace qcert {

// Counter-based seedable generator (splitmix64 core). Streams for parallel
// trials are derived by mixing (seed, stream index), so results do not
// depend on scheduling order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {
    // burn a couple of outputs so that nearby seeds decorrelate
    next_u64();
    next_u64();
  }

  static Rng derive(std::uint64_t seed, std::uint64_t stream) {
    return Rng(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 0x632be59bd9b4e019ULL)));
  }

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform sign in {-1, +1}
  int next_sign() { return (next_u64() & 1u) ? 1 : -1; }

  // index in [0, n)
  std::uint64_t next_index(std::uint64_t n) {
    // rejection-free 128-bit multiply trick; bias is negligible at 64 bits
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  // standard normal via Box-Muller
  double next_gaussian() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = next_double();
    double u2 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(theta);
    have_cached_ = true;
    return r * std::cos(theta);
  }

 private:
  std::uint64_t state_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

// Deterministic sub-seed for a named stream within an experiment.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
  return Rng::derive(seed, tag).next_u64();
}

}  // namespace qcert
