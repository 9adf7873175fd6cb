#include "gaborlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include "gaborlab/error.hpp"
#include "summation.hpp"

namespace gaborlab {

namespace {

void require_same_grid(const SampledFunction& f, const SampledFunction& g) {
  if (!(f.grid() == g.grid())) {
    throw Error(ErrorCode::GridMismatch, "functions live on different grids");
  }
}

// Nearest integer to x when x is within kAlignTolerance of one.
bool aligned_integer(double x, double& rounded) {
  rounded = std::nearbyint(x);
  return std::abs(x - rounded) <= kAlignTolerance;
}

}  // namespace

Grid::Grid(double origin, int step_log2, std::size_t count)
    : origin_(origin), step_log2_(step_log2), step_(std::ldexp(1.0, -step_log2)), count_(count) {
  if (step_log2 < 0 || step_log2 > 60) {
    throw Error(ErrorCode::InvalidArgument, "step_log2 must lie in [0, 60]");
  }
  if (count == 0) throw Error(ErrorCode::InvalidArgument, "grid needs at least one cell");
  if (!std::isfinite(origin)) throw Error(ErrorCode::InvalidArgument, "origin must be finite");
}

Grid Grid::covering(double a, double b, int step_log2) {
  const double step = std::ldexp(1.0, -step_log2);
  double cells = 0.0;
  double start = 0.0;
  if (!aligned_integer((b - a) / step, cells) || !aligned_integer(a / step, start)) {
    throw Error(ErrorCode::NonAlignedGrid, "interval endpoints are not multiples of the step");
  }
  if (cells < 1.0) throw Error(ErrorCode::InvalidArgument, "empty interval");
  return Grid(start * step, step_log2, static_cast<std::size_t>(cells));
}

std::ptrdiff_t Grid::offset_of(double x) const {
  double k = 0.0;
  if (!aligned_integer((x - origin_) / step_, k)) {
    throw Error(ErrorCode::NonAlignedGrid, "point " + std::to_string(x) + " is not a grid point");
  }
  return static_cast<std::ptrdiff_t>(k);
}

Exponent::Exponent(double p) : p_(p), conjugate_(p / (p - 1.0)) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw Error(ErrorCode::InvalidArgument, "exponent must satisfy 1 < p < inf");
  }
}

SampledFunction::SampledFunction(Grid grid) : grid_(grid), values_(grid.count()) {}

SampledFunction::SampledFunction(Grid grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.count()) {
    throw Error(ErrorCode::InvalidArgument, "value count does not match grid");
  }
}

bool SampledFunction::is_zero() const noexcept {
  return std::all_of(values_.begin(), values_.end(),
                     [](const Complex& v) { return v == Complex{}; });
}

SampledFunction indicator(const Grid& grid, double a, double b, Complex value) {
  const auto lo = grid.offset_of(a);
  const auto hi = grid.offset_of(b);
  if (lo < 0 || hi > static_cast<std::ptrdiff_t>(grid.count()) || lo > hi) {
    throw Error(ErrorCode::SupportOutOfRange, "indicator interval outside grid span");
  }
  std::vector<Complex> values(grid.count());
  std::fill(values.begin() + lo, values.begin() + hi, value);
  return SampledFunction(grid, std::move(values));
}

SampledFunction operator+(const SampledFunction& f, const SampledFunction& g) {
  require_same_grid(f, g);
  std::vector<Complex> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f[i] + g[i];
  return SampledFunction(f.grid(), std::move(out));
}

SampledFunction operator-(const SampledFunction& f, const SampledFunction& g) {
  require_same_grid(f, g);
  std::vector<Complex> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f[i] - g[i];
  return SampledFunction(f.grid(), std::move(out));
}

SampledFunction operator*(Complex scalar, const SampledFunction& f) {
  std::vector<Complex> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = scalar * f[i];
  return SampledFunction(f.grid(), std::move(out));
}

SampledFunction multiply(const SampledFunction& f, const SampledFunction& g) {
  require_same_grid(f, g);
  std::vector<Complex> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f[i] * g[i];
  return SampledFunction(f.grid(), std::move(out));
}

double lp_norm_pow(const SampledFunction& f, double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "lp_norm requires p >= 1");
  detail::CompensatedSum sum;
  for (const auto& v : f.values()) sum.add(detail::abs_pow(std::abs(v), p));
  return sum.value() * f.grid().step();
}

double lp_norm(const SampledFunction& f, double p) {
  return std::pow(lp_norm_pow(f, p), 1.0 / p);
}

double sup_norm(const SampledFunction& f) {
  double m = 0.0;
  for (const auto& v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

SampledFunction translate(const SampledFunction& f, double t) {
  const Grid& g = f.grid();
  double cells = 0.0;
  if (!aligned_integer(t / g.step(), cells)) {
    throw Error(ErrorCode::NonAlignedShift,
                "shift " + std::to_string(t) + " is not a multiple of the grid step");
  }
  Grid shifted(g.origin() + cells * g.step(), g.step_log2(), g.count());
  return SampledFunction(shifted, std::vector<Complex>(f.values().begin(), f.values().end()));
}

SampledFunction modulate(const SampledFunction& f, double s) {
  const Grid& g = f.grid();
  if (!(std::abs(s) < 0.5 / g.step())) {
    throw Error(ErrorCode::AliasedFrequency,
                "frequency " + std::to_string(s) + " exceeds the grid Nyquist bound");
  }
  if (s == 0.0) return f;
  std::vector<Complex> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double sx = s * g.midpoint(i);
    const double frac = sx - std::nearbyint(sx);
    out[i] = f[i] * std::polar(1.0, kTwoPi * frac);
  }
  return SampledFunction(g, std::move(out));
}

SampledFunction time_freq_shift(const SampledFunction& g, double t, double s) {
  return modulate(translate(g, t), s);
}

double lp_ell2_norm(std::span<const SampledFunction> fs, double p) {
  if (fs.empty()) return 0.0;
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "lp_ell2_norm requires p >= 1");
  const Grid& grid = fs.front().grid();
  for (const auto& f : fs) {
    if (!(f.grid() == grid)) throw Error(ErrorCode::GridMismatch, "square function needs one grid");
  }
  detail::CompensatedSum sum;
  for (std::size_t i = 0; i < grid.count(); ++i) {
    double sq = 0.0;
    for (const auto& f : fs) sq += std::norm(f[i]);
    sum.add(detail::abs_pow(std::sqrt(sq), p));
  }
  return std::pow(sum.value() * grid.step(), 1.0 / p);
}

double lp_ell2_norm(std::span<const SampledFunction> fs, const Exponent& p) {
  return lp_ell2_norm(fs, p.p());
}

double wiener_norm(const SampledFunction& f) {
  const Grid& g = f.grid();
  double first = 0.0;
  if (!aligned_integer(g.origin(), first)) {
    throw Error(ErrorCode::NonAlignedGrid, "Wiener norm needs an integer grid origin");
  }
  const std::size_t per_unit = std::size_t{1} << g.step_log2();
  double total = 0.0;
  for (std::size_t start = 0; start < f.size(); start += per_unit) {
    const std::size_t stop = std::min(start + per_unit, f.size());
    double m = 0.0;
    for (std::size_t i = start; i < stop; ++i) m = std::max(m, std::abs(f[i]));
    total += m;
  }
  return total;
}

SampledFunction embed(const SampledFunction& f, const Grid& target) {
  if (f.grid().step_log2() != target.step_log2()) {
    throw Error(ErrorCode::GridMismatch, "embedding requires equal steps");
  }
  const std::ptrdiff_t offset = target.offset_of(f.grid().origin());
  std::vector<Complex> out(target.count());
  const auto n = static_cast<std::ptrdiff_t>(target.count());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::ptrdiff_t k = offset + static_cast<std::ptrdiff_t>(i);
    if (k >= 0 && k < n) {
      out[static_cast<std::size_t>(k)] = f[i];
    } else if (f[i] != Complex{}) {
      throw Error(ErrorCode::SupportOutOfRange, "function support leaves the target grid");
    }
  }
  return SampledFunction(target, std::move(out));
}

Grid union_grid(const Grid& a, const Grid& b) {
  if (a.step_log2() != b.step_log2()) throw Error(ErrorCode::GridMismatch, "steps differ");
  const double lo = std::min(a.origin(), b.origin());
  const double hi = std::max(a.end(), b.end());
  return Grid::covering(lo, hi, a.step_log2());
}

double max_abs_difference(const SampledFunction& f, const SampledFunction& g) {
  const Grid u = union_grid(f.grid(), g.grid());
  const SampledFunction a = embed(f, u);
  const SampledFunction b = embed(g, u);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

void to_json(nlohmann::json& j, const SampledFunction& f) {
  nlohmann::json values = nlohmann::json::array();
  for (const auto& v : f.values()) values.push_back({v.real(), v.imag()});
  j = nlohmann::json{{"origin", f.grid().origin()},
                     {"step_log2", f.grid().step_log2()},
                     {"values", std::move(values)}};
}

SampledFunction sampled_function_from_json(const nlohmann::json& j) {
  try {
    const auto& raw = j.at("values");
    std::vector<Complex> values;
    values.reserve(raw.size());
    for (const auto& pair : raw) {
      if (!pair.is_array() || pair.size() != 2) {
        throw Error(ErrorCode::InvalidArgument, "values must be [re, im] pairs");
      }
      values.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    Grid grid(j.at("origin").get<double>(), j.at("step_log2").get<int>(), values.size());
    return SampledFunction(grid, std::move(values));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed sampled function: ") + e.what());
  }
}

}  // namespace gaborlab
