#include "gaborlab/haar.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include "gaborlab/error.hpp"
#include "gaborlab/random.hpp"

namespace gaborlab {

namespace {

constexpr int kMaxScale = 50;

std::int64_t cell_rank(std::int64_t n) { return n > 0 ? 2 * n - 1 : -2 * n; }

// Cell offsets of an atom's support on a grid.  For the father function
// mid == hi.
struct Placement {
  std::size_t lo;
  std::size_t mid;
  std::size_t hi;
};

Placement place(const HaarIndex& idx, const Grid& grid) {
  const int needed = idx.scale < 0 ? 0 : idx.scale + 1;
  if (grid.step_log2() < needed) {
    throw Error(ErrorCode::GridTooCoarse,
                "grid step 2^-" + std::to_string(grid.step_log2()) + " cannot resolve Haar scale " +
                    std::to_string(idx.scale));
  }
  const std::ptrdiff_t lo = grid.offset_of(idx.support_begin());
  const std::ptrdiff_t hi = grid.offset_of(idx.support_end());
  if (lo < 0 || hi > static_cast<std::ptrdiff_t>(grid.count())) {
    throw Error(ErrorCode::SupportOutOfRange, "Haar support outside grid span");
  }
  const std::ptrdiff_t mid = idx.scale < 0 ? hi : lo + (hi - lo) / 2;
  return {static_cast<std::size_t>(lo), static_cast<std::size_t>(mid),
          static_cast<std::size_t>(hi)};
}

double amplitude(int scale, double exponent) {
  return scale < 0 ? 1.0 : std::exp2(static_cast<double>(scale) / exponent);
}

SampledFunction shape(const HaarIndex& idx, const Grid& grid, double amp) {
  const Placement pl = place(idx, grid);
  std::vector<Complex> values(grid.count());
  std::fill(values.begin() + pl.lo, values.begin() + pl.mid, Complex(amp));
  std::fill(values.begin() + pl.mid, values.begin() + pl.hi, Complex(-amp));
  return SampledFunction(grid, std::move(values));
}

void require_integer_cells(const Grid& grid, std::int64_t& first, std::int64_t& last) {
  const double lo = grid.origin();
  const double hi = grid.end();
  if (lo != std::floor(lo) || hi != std::floor(hi)) {
    throw Error(ErrorCode::NonAlignedGrid, "full Haar expansion needs a grid of whole cells");
  }
  first = static_cast<std::int64_t>(lo);
  last = static_cast<std::int64_t>(hi);
}

// Adds sign * coefficient * h_idx into a difference array.
void accumulate(std::vector<Complex>& diff, const Placement& pl, Complex weight) {
  diff[pl.lo] += weight;
  if (pl.mid != pl.hi) {
    diff[pl.mid] -= 2.0 * weight;
  }
  diff[pl.hi] += pl.mid != pl.hi ? weight : -weight;
}

std::vector<Complex> integrate(const std::vector<Complex>& diff, std::size_t count) {
  std::vector<Complex> values(count);
  Complex running{};
  for (std::size_t i = 0; i < count; ++i) {
    running += diff[i];
    values[i] = running;
  }
  return values;
}

}  // namespace

HaarIndex::HaarIndex(std::int64_t cell_, int scale_, std::int64_t position_)
    : cell(cell_), scale(scale_), position(position_) {
  if (scale < -1 || scale > kMaxScale) {
    throw Error(ErrorCode::InvalidArgument, "Haar scale must lie in [-1, 50]");
  }
  if (scale == -1 && position != 0) {
    throw Error(ErrorCode::InvalidArgument, "father function has position 0");
  }
  if (scale >= 0 && (position < 0 || position >= (std::int64_t{1} << scale))) {
    throw Error(ErrorCode::InvalidArgument, "Haar position outside [0, 2^scale)");
  }
}

double HaarIndex::support_begin() const {
  if (scale < 0) return static_cast<double>(cell);
  return static_cast<double>(cell) + std::ldexp(static_cast<double>(position), -scale);
}

double HaarIndex::support_end() const {
  if (scale < 0) return static_cast<double>(cell) + 1.0;
  return static_cast<double>(cell) + std::ldexp(static_cast<double>(position + 1), -scale);
}

std::strong_ordering HaarIndex::operator<=>(const HaarIndex& other) const noexcept {
  if (auto c = cell_rank(cell) <=> cell_rank(other.cell); c != 0) return c;
  if (auto c = scale <=> other.scale; c != 0) return c;
  return position <=> other.position;
}

std::vector<HaarIndex> haar_indices(std::int64_t first_cell, std::int64_t last_cell,
                                    int max_scale) {
  std::vector<HaarIndex> out;
  for (std::int64_t n = first_cell; n < last_cell; ++n) {
    out.emplace_back(n, -1, 0);
    for (int j = 0; j <= max_scale; ++j) {
      for (std::int64_t i = 0; i < (std::int64_t{1} << j); ++i) out.emplace_back(n, j, i);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

SampledFunction haar_function(const HaarIndex& idx, const Exponent& p, const Grid& grid) {
  return shape(idx, grid, amplitude(idx.scale, p.p()));
}

SampledFunction haar_dual_function(const HaarIndex& idx, const Exponent& p, const Grid& grid) {
  return shape(idx, grid, amplitude(idx.scale, p.conjugate()));
}

Complex haar_functional(const HaarIndex& idx, const SampledFunction& f, const Exponent& p) {
  const Placement pl = place(idx, f.grid());
  Complex left{};
  Complex right{};
  for (std::size_t i = pl.lo; i < pl.mid; ++i) left += f[i];
  for (std::size_t i = pl.mid; i < pl.hi; ++i) right += f[i];
  return amplitude(idx.scale, p.conjugate()) * f.grid().step() * (left - right);
}

HaarCoefficients haar_expand(const SampledFunction& f, const Exponent& p, std::int64_t first_cell,
                             std::int64_t last_cell, int max_scale) {
  const Grid& grid = f.grid();
  std::vector<Complex> prefix(grid.count() + 1);
  for (std::size_t i = 0; i < grid.count(); ++i) prefix[i + 1] = prefix[i] + f[i];

  HaarCoefficients out;
  for (const auto& idx : haar_indices(first_cell, last_cell, max_scale)) {
    const Placement pl = place(idx, grid);
    const Complex left = prefix[pl.mid] - prefix[pl.lo];
    const Complex right = prefix[pl.hi] - prefix[pl.mid];
    out.emplace(idx, amplitude(idx.scale, p.conjugate()) * grid.step() * (left - right));
  }
  return out;
}

HaarCoefficients haar_expand(const SampledFunction& f, const Exponent& p) {
  std::int64_t first = 0;
  std::int64_t last = 0;
  require_integer_cells(f.grid(), first, last);
  return haar_expand(f, p, first, last, f.grid().step_log2() - 1);
}

SampledFunction haar_reconstruct(const HaarCoefficients& coeffs, const Exponent& p,
                                 const Grid& grid) {
  std::vector<Complex> diff(grid.count() + 1);
  for (const auto& [idx, c] : coeffs) {
    accumulate(diff, place(idx, grid), amplitude(idx.scale, p.p()) * c);
  }
  return SampledFunction(grid, integrate(diff, grid.count()));
}

double haar_unconditional_constant(const Exponent& p) {
  return std::max(p.p() - 1.0, 1.0 / (p.p() - 1.0));
}

double haar_unconditionality_ratio(const SampledFunction& f, const Exponent& p, int trials,
                                   std::uint64_t seed) {
  const double base = lp_norm(f, p);
  if (base == 0.0) throw Error(ErrorCode::ZeroFunction, "unconditionality ratio of zero");
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be positive");

  struct Term {
    Placement placement;
    Complex weight;
  };
  std::vector<Term> terms;
  for (const auto& [idx, c] : haar_expand(f, p)) {
    if (c != Complex{}) terms.push_back({place(idx, f.grid()), amplitude(idx.scale, p.p()) * c});
  }

  const Grid& grid = f.grid();
  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    auto eng = rng::trial_engine(seed, 0x4AA2, static_cast<std::uint64_t>(trial));
    std::vector<int> signs(terms.size(), 1);
    if (trial > 0) signs = rng::sign_pattern(eng, terms.size());
    std::vector<Complex> diff(grid.count() + 1);
    for (std::size_t k = 0; k < terms.size(); ++k) {
      accumulate(diff, terms[k].placement, static_cast<double>(signs[k]) * terms[k].weight);
    }
    const SampledFunction flipped(grid, integrate(diff, grid.count()));
    worst = std::max(worst, lp_norm(flipped, p) / base);
  }
  return worst;
}

void to_json(nlohmann::json& j, const HaarIndex& idx) {
  j = nlohmann::json{{"cell", idx.cell}, {"scale", idx.scale}, {"position", idx.position}};
}

HaarIndex haar_index_from_json(const nlohmann::json& j) {
  try {
    return HaarIndex(j.at("cell").get<std::int64_t>(), j.at("scale").get<int>(),
                     j.at("position").get<std::int64_t>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed Haar index: ") + e.what());
  }
}

nlohmann::json haar_coefficients_to_json(const HaarCoefficients& coeffs) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [idx, c] : coeffs) {
    nlohmann::json row = idx;
    row["re"] = c.real();
    row["im"] = c.imag();
    out.push_back(std::move(row));
  }
  return out;
}

HaarCoefficients haar_coefficients_from_json(const nlohmann::json& j) {
  HaarCoefficients out;
  try {
    for (const auto& row : j) {
      out[haar_index_from_json(row)] = Complex(row.at("re").get<double>(), row.at("im").get<double>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed Haar coefficients: ") + e.what());
  }
  return out;
}

}  // namespace gaborlab
