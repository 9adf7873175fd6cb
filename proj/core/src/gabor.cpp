#include "gaborlab/gabor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include "gaborlab/error.hpp"
#include "gaborlab/random.hpp"
#include "summation.hpp"

namespace gaborlab {

namespace {

double norm_pow(std::span<const Complex> values, double p, double step) {
  detail::CompensatedSum sum;
  for (const auto& v : values) sum.add(detail::abs_pow(std::abs(v), p));
  return sum.value() * step;
}

}  // namespace

GaborSystem::GaborSystem(SampledFunction window, std::vector<TimeFreqPoint> points, Grid grid)
    : window_(std::move(window)), points_(std::move(points)), grid_(grid) {
  if (grid_.step_log2() != window_.grid().step_log2()) {
    throw Error(ErrorCode::GridMismatch, "system grid and window differ in step");
  }
  for (const auto& pt : points_) {
    // Validates alignment, aliasing and that the atom fits the grid.
    (void)embed(time_freq_shift(window_, pt.t, pt.s), grid_);
  }
}

GaborSystem GaborSystem::with_covering_grid(SampledFunction window,
                                            std::vector<TimeFreqPoint> points) {
  Grid cover = window.grid();
  for (const auto& pt : points) cover = union_grid(cover, translate(window, pt.t).grid());
  return GaborSystem(std::move(window), std::move(points), cover);
}

bool GaborSystem::contains(const TimeFreqPoint& pt) const {
  return std::find(points_.begin(), points_.end(), pt) != points_.end();
}

SampledFunction atom(const GaborSystem& sys, const TimeFreqPoint& pt) {
  if (!sys.contains(pt)) {
    throw Error(ErrorCode::UnknownPoint,
                "(" + std::to_string(pt.t) + ", " + std::to_string(pt.s) + ") not in the system");
  }
  return embed(time_freq_shift(sys.window(), pt.t, pt.s), sys.grid());
}

std::vector<SampledFunction> weighted_atoms(const GaborSystem& sys, const CoefficientMap& a) {
  std::vector<SampledFunction> out;
  for (const auto& [pt, c] : a) {
    if (c == Complex{}) {
      if (!sys.contains(pt)) throw Error(ErrorCode::UnknownPoint, "coefficient key not in system");
      continue;
    }
    out.push_back(c * atom(sys, pt));
  }
  return out;
}

SampledFunction synthesize(const GaborSystem& sys, const CoefficientMap& a) {
  std::vector<Complex> total(sys.grid().count());
  for (const auto& term : weighted_atoms(sys, a)) {
    if (!(term.grid() == sys.grid())) throw Error(ErrorCode::GridMismatch, "atom off system grid");
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += term[i];
  }
  return SampledFunction(sys.grid(), std::move(total));
}

SignFlipRange sign_flip_ratio(const GaborSystem& sys, const CoefficientMap& a, const Exponent& p,
                              int trials, std::uint64_t seed) {
  const auto terms = weighted_atoms(sys, a);
  const double step = sys.grid().step();
  std::vector<Complex> sum(sys.grid().count());
  for (const auto& term : terms) {
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += term[i];
  }
  const double base = std::pow(norm_pow(sum, p.p(), step), 1.0 / p.p());
  if (base == 0.0) throw Error(ErrorCode::ZeroFunction, "synthesized function is zero");

  SignFlipRange range;
  range.max_ratio = 1.0;
  range.min_ratio = 1.0;
  auto record = [&](std::span<const Complex> values) {
    const double r = std::pow(norm_pow(values, p.p(), step), 1.0 / p.p()) / base;
    range.max_ratio = std::max(range.max_ratio, r);
    range.min_ratio = std::min(range.min_ratio, r);
    ++range.patterns;
  };

  const std::size_t n = terms.size();
  if (n <= kExactEnumerationLimit) {
    // theta and -theta give equal norms, so fix the first sign and walk the
    // remaining n-1 signs in Gray-code order, one flip per step.
    range.exhaustive = true;
    std::vector<Complex> current = sum;
    record(current);
    const std::size_t free_signs = n == 0 ? 0 : n - 1;
    std::vector<int> signs(n, 1);
    for (std::uint64_t step_no = 1; step_no < (std::uint64_t{1} << free_signs); ++step_no) {
      const auto k = static_cast<std::size_t>(std::countr_zero(step_no)) + 1;
      signs[k] = -signs[k];
      const double factor = 2.0 * signs[k];
      for (std::size_t i = 0; i < current.size(); ++i) current[i] += factor * terms[k][i];
      record(current);
    }
    return range;
  }

  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be positive");
  for (int trial = 0; trial < trials; ++trial) {
    auto eng = rng::trial_engine(seed, 0x6AB0, static_cast<std::uint64_t>(trial));
    const auto signs = rng::sign_pattern(eng, n);
    std::vector<Complex> flipped(sum.size());
    for (std::size_t k = 0; k < n; ++k) {
      const double sgn = signs[k];
      for (std::size_t i = 0; i < flipped.size(); ++i) flipped[i] += sgn * terms[k][i];
    }
    record(flipped);
  }
  return range;
}

double square_function_equivalent(const GaborSystem& sys, const CoefficientMap& a,
                                  const Exponent& p) {
  const auto terms = weighted_atoms(sys, a);
  if (terms.empty()) return 0.0;
  return lp_ell2_norm(terms, p);
}

nlohmann::json points_to_json(const std::vector<TimeFreqPoint>& points) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& pt : points) out.push_back({{"t", pt.t}, {"s", pt.s}});
  return out;
}

std::vector<TimeFreqPoint> points_from_json(const nlohmann::json& j) {
  std::vector<TimeFreqPoint> out;
  try {
    for (const auto& row : j) out.push_back({row.at("t").get<double>(), row.at("s").get<double>()});
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed point set: ") + e.what());
  }
  return out;
}

nlohmann::json coefficients_to_json(const CoefficientMap& a) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [pt, c] : a) {
    out.push_back({{"t", pt.t}, {"s", pt.s}, {"re", c.real()}, {"im", c.imag()}});
  }
  return out;
}

CoefficientMap coefficients_from_json(const nlohmann::json& j) {
  CoefficientMap out;
  try {
    for (const auto& row : j) {
      out[{row.at("t").get<double>(), row.at("s").get<double>()}] =
          Complex(row.at("re").get<double>(), row.at("im").get<double>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed coefficient map: ") + e.what());
  }
  return out;
}

}  // namespace gaborlab
