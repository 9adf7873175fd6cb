#pragma once

// The Haar system on R, normalized in L^p, with its biorthogonal functionals.
//
// Scale j >= 0 atoms on cell n live on [n + i 2^-j, n + (i+1) 2^-j) and take
// the values +2^(j/p) / -2^(j/p) on the left / right half.  Scale -1 encodes
// the father function 1_[n, n+1).  A grid resolves scale j when its step is
// at most 2^-(j+1); a grid with step 2^-m is fully expanded by scales up to
// m - 1.

#include <compare>
#include <cstdint>
#include <map>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gaborlab/grid.hpp"

namespace gaborlab {

struct HaarIndex {
  std::int64_t cell = 0;
  int scale = -1;
  std::int64_t position = 0;

  HaarIndex() = default;
  HaarIndex(std::int64_t cell, int scale, std::int64_t position = 0);

  double support_begin() const;
  double support_end() const;

  // Enumeration order: cells interleaved by |n| (0, 1, -1, 2, -2, ...), then
  // scale, then position.
  std::strong_ordering operator<=>(const HaarIndex& other) const noexcept;
  bool operator==(const HaarIndex& other) const noexcept = default;
};

using HaarCoefficients = std::map<HaarIndex, Complex>;

/// All indices on cells [first_cell, last_cell) with scale <= max_scale, in
/// enumeration order.
std::vector<HaarIndex> haar_indices(std::int64_t first_cell, std::int64_t last_cell,
                                    int max_scale);

SampledFunction haar_function(const HaarIndex& idx, const Exponent& p, const Grid& grid);
/// The dual atom h*, normalized in L^p'.
SampledFunction haar_dual_function(const HaarIndex& idx, const Exponent& p, const Grid& grid);

/// integral of f * h*; <h_idx, h*_idx> = 1.
Complex haar_functional(const HaarIndex& idx, const SampledFunction& f, const Exponent& p);

HaarCoefficients haar_expand(const SampledFunction& f, const Exponent& p,
                             std::int64_t first_cell, std::int64_t last_cell, int max_scale);
/// Expansion over every cell the grid spans, at the grid's full resolution.
HaarCoefficients haar_expand(const SampledFunction& f, const Exponent& p);

SampledFunction haar_reconstruct(const HaarCoefficients& coeffs, const Exponent& p,
                                 const Grid& grid);

/// max(p - 1, 1/(p - 1)): the sign-flip constant checked for the Haar basis.
double haar_unconditional_constant(const Exponent& p);

/// Largest observed ||sum theta_k c_k h_k||_p / ||f||_p over `trials` seeded
/// random sign patterns (the identity pattern is always included).
double haar_unconditionality_ratio(const SampledFunction& f, const Exponent& p, int trials,
                                   std::uint64_t seed);

void to_json(nlohmann::json& j, const HaarIndex& idx);
HaarIndex haar_index_from_json(const nlohmann::json& j);
nlohmann::json haar_coefficients_to_json(const HaarCoefficients& coeffs);
HaarCoefficients haar_coefficients_from_json(const nlohmann::json& j);

}  // namespace gaborlab
