#pragma once

#include <cmath>
#include <cstdint>

namespace hetopt::rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline constexpr std::uint64_t splitmix(std::uint64_t z) {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Hierarchical stateless random stream.  Every entity (pico, UE, link, ...)
// gets its own child stream keyed by integer ids, and each variate is a pure
// function of (key, index).  Draws therefore do not depend on evaluation
// order or thread count, and identical (seed, path) pairs are bit-identical.
class Stream {
 public:
  explicit constexpr Stream(std::uint64_t key) : key_(key) {}

  constexpr Stream child(std::uint64_t id) const {
    return Stream(splitmix(splitmix(key_ ^ (id + 0x6a09e667f3bcc909ULL))));
  }

  constexpr std::uint64_t bits(std::uint64_t index) const {
    return splitmix(key_ + (index + 1) * kGolden);
  }

  // Uniform on the open interval (0, 1); never returns 0 or 1 so logs of
  // draws are always finite.
  double uniform01(std::uint64_t index) const {
    return (static_cast<double>(bits(index) >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(std::uint64_t index, double lo, double hi) const {
    return lo + (hi - lo) * uniform01(index);
  }

  // Standard normal via Box-Muller; consumes indices (2i, 2i+1).
  double normal(std::uint64_t index) const {
    const double u1 = uniform01(2 * index);
    const double u2 = uniform01(2 * index + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  // Unit-mean exponential.
  double exponential(std::uint64_t index) const { return -std::log(uniform01(index)); }

 private:
  std::uint64_t key_;
};

}  // namespace hetopt::rng
