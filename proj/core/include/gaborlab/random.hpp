#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

// Counter-based seeding: every trial owns an engine derived from
// (seed, stream, trial), so results never depend on evaluation order.
namespace gaborlab::rng {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t stream,
                                    std::uint64_t trial) {
  const std::uint64_t key = splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ trial);
  return std::mt19937_64(key);
}

// Uniform on [0, 1) from the top 53 bits; independent of the standard
// library's distribution implementations.
inline double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& eng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(eng);
}

inline int uniform_int(std::mt19937_64& eng, int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(eng() % span);
}

inline std::complex<double> complex_box(std::mt19937_64& eng) {
  const double re = uniform(eng, -1.0, 1.0);
  const double im = uniform(eng, -1.0, 1.0);
  return {re, im};
}

/// Random ±1 pattern of the given length.
inline std::vector<int> sign_pattern(std::mt19937_64& eng, std::size_t n) {
  std::vector<int> signs(n);
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 64 == 0) bits = eng();
    signs[i] = (bits & 1U) ? 1 : -1;
    bits >>= 1;
  }
  return signs;
}

}  // namespace gaborlab::rng
