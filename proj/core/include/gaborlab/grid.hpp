#pragma once

// Step functions on uniform dyadic grids.
//
// A SampledFunction IS the step function whose value on the cell
// [origin + i*step, origin + (i+1)*step) is values[i]; it is not a set of
// samples of something smooth.  Norms are therefore exact integrals up to
// floating-point rounding.
//
// translate() shifts the grid origin and leaves the values untouched, so it
// never resamples.  embed() moves a function onto a larger grid with the
// same step when several functions must be combined.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace gaborlab {

using Complex = std::complex<double>;

inline constexpr double kAlignTolerance = 1e-12;
inline constexpr double kTwoPi = 6.283185307179586476925286766559;

class Grid {
 public:
  /// step = 2^(-step_log2); requires step_log2 >= 0 and count >= 1.
  Grid(double origin, int step_log2, std::size_t count);

  /// Smallest grid with the given step whose span is exactly [a, b); a and b
  /// must be multiples of the step.
  static Grid covering(double a, double b, int step_log2);

  double origin() const noexcept { return origin_; }
  int step_log2() const noexcept { return step_log2_; }
  double step() const noexcept { return step_; }
  std::size_t count() const noexcept { return count_; }
  double end() const noexcept { return origin_ + static_cast<double>(count_) * step_; }
  double span() const noexcept { return static_cast<double>(count_) * step_; }

  double left(std::size_t i) const noexcept { return origin_ + static_cast<double>(i) * step_; }
  double midpoint(std::size_t i) const noexcept {
    return origin_ + (static_cast<double>(i) + 0.5) * step_;
  }

  /// Signed cell offset of the grid point x relative to origin.  Throws
  /// NonAlignedGrid if x is not a grid point.
  std::ptrdiff_t offset_of(double x) const;

  bool operator==(const Grid& other) const noexcept = default;

 private:
  double origin_;
  int step_log2_;
  double step_;
  std::size_t count_;
};

class Exponent {
 public:
  explicit Exponent(double p);

  double p() const noexcept { return p_; }
  /// p' = p / (p - 1).
  double conjugate() const noexcept { return conjugate_; }

 private:
  double p_;
  double conjugate_;
};

class SampledFunction {
 public:
  /// The zero function on grid.
  explicit SampledFunction(Grid grid);
  SampledFunction(Grid grid, std::vector<Complex> values);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const Complex> values() const noexcept { return values_; }
  const Complex& operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

  bool is_zero() const noexcept;

 private:
  Grid grid_;
  std::vector<Complex> values_;
};

/// value * 1_[a, b); a and b must be grid points.
SampledFunction indicator(const Grid& grid, double a, double b, Complex value = 1.0);

SampledFunction operator+(const SampledFunction& f, const SampledFunction& g);
SampledFunction operator-(const SampledFunction& f, const SampledFunction& g);
SampledFunction operator*(Complex scalar, const SampledFunction& f);
/// Pointwise product.
SampledFunction multiply(const SampledFunction& f, const SampledFunction& g);

/// (sum_i |v_i|^p * step)^(1/p); requires p >= 1.
double lp_norm(const SampledFunction& f, double p);
inline double lp_norm(const SampledFunction& f, const Exponent& p) { return lp_norm(f, p.p()); }
/// ||f||_p^p without the final root.
double lp_norm_pow(const SampledFunction& f, double p);
double sup_norm(const SampledFunction& f);

/// (tau_t f)(x) = f(x - t).  Shifts the grid origin; t must be an integer
/// multiple of the step (NonAlignedShift otherwise).
SampledFunction translate(const SampledFunction& f, double t);
/// (e_s f)(x) = e^{2 pi i s x} f(x) with x the cell midpoint; |s| < 1/(2 step).
SampledFunction modulate(const SampledFunction& f, double s);
/// e_s tau_t g.
SampledFunction time_freq_shift(const SampledFunction& g, double t, double s);

/// || (sum_j |f_j|^2)^(1/2) ||_p for functions sharing one grid.
double lp_ell2_norm(std::span<const SampledFunction> fs, const Exponent& p);
double lp_ell2_norm(std::span<const SampledFunction> fs, double p);

/// sum over integer cells [k, k+1) of sup |f|; requires an integer origin.
double wiener_norm(const SampledFunction& f);

/// Places f on target (same step, aligned origin).  Nonzero values that fall
/// outside target raise SupportOutOfRange.
SampledFunction embed(const SampledFunction& f, const Grid& target);
/// Smallest grid with the common step covering both spans.
Grid union_grid(const Grid& a, const Grid& b);
/// sup |f - g| after embedding both on their union grid.
double max_abs_difference(const SampledFunction& f, const SampledFunction& g);

void to_json(nlohmann::json& j, const SampledFunction& f);
SampledFunction sampled_function_from_json(const nlohmann::json& j);

}  // namespace gaborlab
