#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gaborlab/grid.hpp"

namespace gaborlab {

struct TimeFreqPoint {
  double t = 0.0;
  double s = 0.0;

  auto operator<=>(const TimeFreqPoint&) const = default;
};

using CoefficientMap = std::map<TimeFreqPoint, Complex>;

/// Finite Gabor system G(g; Lambda) whose atoms e_s tau_t g all live on one
/// common grid.
class GaborSystem {
 public:
  /// Every atom must fit on `grid`, which shares the window's step.
  GaborSystem(SampledFunction window, std::vector<TimeFreqPoint> points, Grid grid);

  /// Uses the smallest grid covering every translated window.
  static GaborSystem with_covering_grid(SampledFunction window, std::vector<TimeFreqPoint> points);

  const SampledFunction& window() const noexcept { return window_; }
  const std::vector<TimeFreqPoint>& points() const noexcept { return points_; }
  const Grid& grid() const noexcept { return grid_; }

  bool contains(const TimeFreqPoint& pt) const;

 private:
  SampledFunction window_;
  std::vector<TimeFreqPoint> points_;
  Grid grid_;
};

/// e_s tau_t g on the system grid; UnknownPoint if pt is not in the system.
SampledFunction atom(const GaborSystem& sys, const TimeFreqPoint& pt);

SampledFunction synthesize(const GaborSystem& sys, const CoefficientMap& a);

struct SignFlipRange {
  double max_ratio = 1.0;
  double min_ratio = 1.0;
  std::size_t patterns = 0;
  bool exhaustive = false;
};

/// Extremes of ||sum theta a atom||_p / ||sum a atom||_p.  All 2^n patterns
/// are enumerated when the map has at most 12 nonzero entries; otherwise
/// `trials` counter-seeded patterns are drawn.
SignFlipRange sign_flip_ratio(const GaborSystem& sys, const CoefficientMap& a, const Exponent& p,
                              int trials, std::uint64_t seed);

/// || (sum |a_ts|^2 |e_s tau_t g|^2)^(1/2) ||_p.
double square_function_equivalent(const GaborSystem& sys, const CoefficientMap& a,
                                  const Exponent& p);

/// The functions a_ts e_s tau_t g, one per nonzero coefficient, in map order.
std::vector<SampledFunction> weighted_atoms(const GaborSystem& sys, const CoefficientMap& a);

inline constexpr std::size_t kExactEnumerationLimit = 12;

nlohmann::json points_to_json(const std::vector<TimeFreqPoint>& points);
std::vector<TimeFreqPoint> points_from_json(const nlohmann::json& j);
nlohmann::json coefficients_to_json(const CoefficientMap& a);
CoefficientMap coefficients_from_json(const nlohmann::json& j);

}  // namespace gaborlab
