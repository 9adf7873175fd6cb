#pragma once

// Rademacher averages of functions and scalars, type/cotype ratios and
// lacunary trigonometric sums.
//
// Exact expectations enumerate sign patterns with the first sign fixed
// (theta and -theta give the same norm) and walk the rest in Gray-code
// order, so each pattern costs one vector update and one norm.

#include <cstdint>
#include <random>
#include <vector>

#include "gaborlab/grid.hpp"

namespace gaborlab {

inline constexpr std::size_t kMaxExactFunctions = 12;
inline constexpr std::size_t kMaxExactScalars = 20;

/// (E ||sum eps_j f_j||_p^p)^(1/p), exact.  TooManyFunctions above 12
/// functions; GridMismatch unless all share one grid.
double rademacher_pnorm_exact(const std::vector<SampledFunction>& fs, double p);

/// E ||sum eps_j f_j||_p, exact (first moment, used by type/cotype ratios).
double rademacher_mean_norm_exact(const std::vector<SampledFunction>& fs, double p);

struct MonteCarloEstimate {
  double estimate = 0.0;   // of E ||sum eps_j f_j||_p^p
  double stderr_ = 0.0;    // standard error of the estimate
  int trials = 0;
};

/// Sample mean of ||sum eps_j f_j||_p^p over seeded sign patterns.
MonteCarloEstimate rademacher_pnorm_mc(const std::vector<SampledFunction>& fs, double p, int trials,
                                       std::uint64_t seed);

/// (E |sum a_n eps_n|^p)^(1/p) / (sum |a_n|^2)^(1/2), enumerating all
/// patterns.  TooManyFunctions above 20 scalars, ZeroFunction for a = 0.
double khintchine_ratio(const std::vector<Complex>& a, double p);

/// (sum ||f_j||_p^2)^(1/2) / E ||sum eps_j f_j||_p, for p <= 2.
double cotype2_ratio(const std::vector<SampledFunction>& fs, double p);
/// E ||sum eps_j f_j||_p / (sum ||f_j||_p^2)^(1/2), for p >= 2.
double type2_ratio(const std::vector<SampledFunction>& fs, double p);

/// min s_{n+1}/s_n.  NotLacunary unless s is positive and strictly
/// increasing.
double lacunarity(const std::vector<std::int64_t>& s);

/// Grid exponent used on [0, 1] when none is requested: resolves 64 samples
/// per period of the highest frequency.
int lacunary_default_resolution(const std::vector<std::int64_t>& s);

/// (int_0^1 |sum a_n e_{s_n}(x)|^p dx)^(1/p) by the midpoint rule with step
/// 2^-resolution_log2 (resolution_log2 < 0 picks the default).  Exact for
/// p = 2 and for even integer p when p/2 * s_max stays below the sample
/// count.  AliasedFrequency if s_max is not below the Nyquist bound.
double lacunary_pnorm(const std::vector<Complex>& a, const std::vector<std::int64_t>& s, double p,
                      int resolution_log2 = -1);

/// Random family of n time-frequency atoms of a random step window: window
/// on [0, 2) at step 2^-4, t in {0, 1/16, ..., 63/16}, s in (-1, 1) on the
/// 1/16 lattice.  All atoms are embedded on one grid.
std::vector<SampledFunction> random_atom_family(std::mt19937_64& eng, std::size_t n);

}  // namespace gaborlab
