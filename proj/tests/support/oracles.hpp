#pragma once

// Reference implementations used only by the tests.  They are written for
// obviousness, not speed: pointwise evaluation, brute-force enumeration and
// O(N^2) transforms.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "gaborlab/grid.hpp"
#include "gaborlab/random.hpp"

namespace oracle {

using gaborlab::Complex;
using gaborlab::SampledFunction;

inline constexpr double kPi = std::numbers::pi;

// Value of the step function at x (zero off the grid).
inline Complex eval(const SampledFunction& f, double x) {
  const auto& g = f.grid();
  if (x < g.origin() || x >= g.end()) return 0.0;
  const auto i = static_cast<std::size_t>(std::floor((x - g.origin()) / g.step()));
  return i < f.size() ? f[i] : Complex{};
}

// int |f|^p over [a, b) by midpoints of a grid of step h; exact for step
// functions whose breakpoints lie on that grid.
template <typename F>
double integrate_pow(F&& f, double a, double b, double h, double p) {
  double acc = 0.0;
  const auto n = static_cast<std::int64_t>(std::llround((b - a) / h));
  for (std::int64_t i = 0; i < n; ++i) {
    acc += std::pow(std::abs(f(a + (static_cast<double>(i) + 0.5) * h)), p) * h;
  }
  return acc;
}

// L^p-normalized Haar atom, directly from the definition.
inline double haar_value(std::int64_t cell, int scale, std::int64_t pos, double p, double x) {
  if (scale < 0) return (x >= cell && x < cell + 1) ? 1.0 : 0.0;
  const double w = std::ldexp(1.0, -scale);
  const double lo = static_cast<double>(cell) + static_cast<double>(pos) * w;
  if (x < lo || x >= lo + w) return 0.0;
  const double amp = std::pow(2.0, scale / p);
  return x < lo + w / 2 ? amp : -amp;
}

// (E ||sum eps_j f_j||_p^p) over all 2^n sign patterns, pointwise on a grid
// of step h covering [a, b).
inline double rademacher_pow_brute(const std::vector<SampledFunction>& fs, double p, double a, double b,
                                   double h) {
  const std::size_t n = fs.size();
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    total += integrate_pow(
        [&](double x) {
          Complex v = 0.0;
          for (std::size_t j = 0; j < n; ++j) v += ((mask >> j) & 1U ? -1.0 : 1.0) * eval(fs[j], x);
          return v;
        },
        a, b, h, p);
  }
  return total / static_cast<double>(std::uint64_t{1} << n);
}

inline double khintchine_brute(const std::vector<Complex>& a, double p) {
  const std::size_t n = a.size();
  double total = 0.0;
  double l2 = 0.0;
  for (const auto& v : a) l2 += std::norm(v);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += ((mask >> j) & 1U ? -1.0 : 1.0) * a[j];
    total += std::pow(std::abs(s), p);
  }
  return std::pow(total / static_cast<double>(std::uint64_t{1} << n), 1.0 / p) / std::sqrt(l2);
}

// Naive DFT with signed bins k/L; keeps bins whose frequency lies in [lo, hi).
inline std::vector<Complex> band_projection(const SampledFunction& f, double lo, double hi) {
  const std::size_t n = f.size();
  const double span = f.grid().span();
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double kk = k < (n + 1) / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
    const double xi = kk / span;
    if (!(lo <= xi && xi < hi)) continue;
    Complex c = 0.0;
    for (std::size_t j = 0; j < n; ++j) c += f[j] * std::polar(1.0, -2.0 * kPi * kk * static_cast<double>(j) / static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
      out[j] += c * std::polar(1.0, 2.0 * kPi * kk * static_cast<double>(j) / static_cast<double>(n)) /
                static_cast<double>(n);
    }
  }
  return out;
}

// frac(n * k / 2^m) by 128-bit integer arithmetic.
inline double dyadic_frac(__int128 n, std::int64_t k, int m) {
  const __int128 mod = static_cast<__int128>(1) << m;
  __int128 r = (n % mod) * (static_cast<__int128>(k) % mod) % mod;
  if (r < 0) r += mod;
  return static_cast<double>(r) / static_cast<double>(mod);
}

// Random complex step function on [origin, origin + cells) at step 2^-m.
inline SampledFunction random_step(std::mt19937_64& eng, double origin, std::size_t cells, int m) {
  gaborlab::Grid grid(origin, m, cells << m);
  std::vector<Complex> v(grid.count());
  for (auto& x : v) x = gaborlab::rng::complex_box(eng);
  return SampledFunction(grid, std::move(v));
}

}  // namespace oracle
