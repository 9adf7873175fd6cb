#include "gaborlab/stochastic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "gaborlab/error.hpp"
#include "gaborlab/random.hpp"
#include "summation.hpp"

namespace gaborlab {

namespace {

constexpr std::uint64_t kMonteCarloStream = 0x3C4A;

void require_common_grid(const std::vector<SampledFunction>& fs) {
  for (const auto& f : fs) {
    if (!(f.grid() == fs.front().grid())) {
      throw Error(ErrorCode::GridMismatch, "Rademacher sums need functions on one grid");
    }
  }
}

double norm_pow(const std::vector<Complex>& v, double p, double step) {
  detail::CompensatedSum sum;
  for (const auto& x : v) sum.add(detail::abs_pow(std::abs(x), p));
  return sum.value() * step;
}

// Calls visit(||sum theta_j f_j||_p^p) for every pattern with theta_0 = +1.
template <typename Visit>
void enumerate_patterns(const std::vector<SampledFunction>& fs, double p, Visit visit) {
  const std::size_t n = fs.size();
  const double step = fs.front().grid().step();
  std::vector<Complex> current(fs.front().size());
  for (const auto& f : fs) {
    for (std::size_t i = 0; i < current.size(); ++i) current[i] += f[i];
  }
  visit(norm_pow(current, p, step));
  std::vector<int> signs(n, 1);
  for (std::uint64_t step_no = 1; step_no < (std::uint64_t{1} << (n - 1)); ++step_no) {
    const auto k = static_cast<std::size_t>(std::countr_zero(step_no)) + 1;
    signs[k] = -signs[k];
    const double factor = 2.0 * signs[k];
    for (std::size_t i = 0; i < current.size(); ++i) current[i] += factor * fs[k][i];
    visit(norm_pow(current, p, step));
  }
}

double sum_of_squared_norms(const std::vector<SampledFunction>& fs, double p) {
  double acc = 0.0;
  for (const auto& f : fs) {
    const double n = lp_norm(f, p);
    acc += n * n;
  }
  return acc;
}

}  // namespace

double rademacher_pnorm_exact(const std::vector<SampledFunction>& fs, double p) {
  if (fs.size() > kMaxExactFunctions) {
    throw Error(ErrorCode::TooManyFunctions,
                std::to_string(fs.size()) + " functions exceed the exact enumeration limit of 12");
  }
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "p must be >= 1");
  if (fs.empty()) return 0.0;
  require_common_grid(fs);
  detail::CompensatedSum sum;
  std::uint64_t count = 0;
  enumerate_patterns(fs, p, [&](double v) {
    sum.add(v);
    ++count;
  });
  return std::pow(sum.value() / static_cast<double>(count), 1.0 / p);
}

double rademacher_mean_norm_exact(const std::vector<SampledFunction>& fs, double p) {
  if (fs.size() > kMaxExactFunctions) {
    throw Error(ErrorCode::TooManyFunctions, "too many functions for exact enumeration");
  }
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "p must be >= 1");
  if (fs.empty()) return 0.0;
  require_common_grid(fs);
  detail::CompensatedSum sum;
  std::uint64_t count = 0;
  enumerate_patterns(fs, p, [&](double v) {
    sum.add(std::pow(v, 1.0 / p));
    ++count;
  });
  return sum.value() / static_cast<double>(count);
}

MonteCarloEstimate rademacher_pnorm_mc(const std::vector<SampledFunction>& fs, double p, int trials,
                                       std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be positive");
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "p must be >= 1");
  MonteCarloEstimate out;
  out.trials = trials;
  if (fs.empty()) return out;
  require_common_grid(fs);
  const double step = fs.front().grid().step();
  detail::CompensatedSum sum;
  detail::CompensatedSum sum_sq;
  std::vector<Complex> current(fs.front().size());
  for (int t = 0; t < trials; ++t) {
    auto eng = rng::trial_engine(seed, kMonteCarloStream, static_cast<std::uint64_t>(t));
    const auto signs = rng::sign_pattern(eng, fs.size());
    std::fill(current.begin(), current.end(), Complex{});
    for (std::size_t j = 0; j < fs.size(); ++j) {
      const double sgn = signs[j];
      for (std::size_t i = 0; i < current.size(); ++i) current[i] += sgn * fs[j][i];
    }
    const double v = norm_pow(current, p, step);
    sum.add(v);
    sum_sq.add(v * v);
  }
  const double n = trials;
  out.estimate = sum.value() / n;
  if (trials > 1) {
    const double var = std::max(0.0, (sum_sq.value() - n * out.estimate * out.estimate) / (n - 1.0));
    out.stderr_ = std::sqrt(var / n);
  }
  return out;
}

double khintchine_ratio(const std::vector<Complex>& a, double p) {
  if (a.size() > kMaxExactScalars) {
    throw Error(ErrorCode::TooManyFunctions, "khintchine_ratio enumerates at most 20 scalars");
  }
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "p must be >= 1");
  double l2 = 0.0;
  for (const auto& x : a) l2 += std::norm(x);
  if (l2 == 0.0) throw Error(ErrorCode::ZeroFunction, "coefficient vector is zero");

  const std::size_t n = a.size();
  Complex current{};
  for (const auto& x : a) current += x;
  detail::CompensatedSum sum;
  sum.add(detail::abs_pow(std::abs(current), p));
  std::vector<int> signs(n, 1);
  const std::uint64_t patterns = std::uint64_t{1} << (n - 1);
  for (std::uint64_t step_no = 1; step_no < patterns; ++step_no) {
    const auto k = static_cast<std::size_t>(std::countr_zero(step_no)) + 1;
    signs[k] = -signs[k];
    current += 2.0 * signs[k] * a[k];
    sum.add(detail::abs_pow(std::abs(current), p));
  }
  const double moment = std::pow(sum.value() / static_cast<double>(patterns), 1.0 / p);
  return moment / std::sqrt(l2);
}

double cotype2_ratio(const std::vector<SampledFunction>& fs, double p) {
  if (!(p <= 2.0)) throw Error(ErrorCode::InvalidArgument, "cotype 2 ratio needs p <= 2");
  const double mean = rademacher_mean_norm_exact(fs, p);
  if (mean == 0.0) throw Error(ErrorCode::ZeroFunction, "Rademacher mean is zero");
  return std::sqrt(sum_of_squared_norms(fs, p)) / mean;
}

double type2_ratio(const std::vector<SampledFunction>& fs, double p) {
  if (!(p >= 2.0)) throw Error(ErrorCode::InvalidArgument, "type 2 ratio needs p >= 2");
  const double denom = std::sqrt(sum_of_squared_norms(fs, p));
  if (denom == 0.0) throw Error(ErrorCode::ZeroFunction, "all functions are zero");
  return rademacher_mean_norm_exact(fs, p) / denom;
}

double lacunarity(const std::vector<std::int64_t>& s) {
  if (s.empty()) throw Error(ErrorCode::NotLacunary, "empty frequency sequence");
  if (s.front() < 1) throw Error(ErrorCode::NotLacunary, "frequencies must be positive integers");
  double lambda = std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n < s.size(); ++n) {
    // s_{n+1} > s_n as integers is the exact form of ratio > 1.
    if (s[n] <= s[n - 1]) {
      throw Error(ErrorCode::NotLacunary, "frequencies must be strictly increasing");
    }
    lambda = std::min(lambda, static_cast<double>(s[n]) / static_cast<double>(s[n - 1]));
  }
  return lambda;
}

int lacunary_default_resolution(const std::vector<std::int64_t>& s) {
  const std::int64_t top = s.empty() ? 1 : std::max<std::int64_t>(1, s.back());
  return static_cast<int>(std::bit_width(static_cast<std::uint64_t>(top))) + 6;
}

double lacunary_pnorm(const std::vector<Complex>& a, const std::vector<std::int64_t>& s, double p,
                      int resolution_log2) {
  if (a.size() != s.size()) throw Error(ErrorCode::InvalidArgument, "a and s differ in length");
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "p must be >= 1");
  (void)lacunarity(s);
  const int m = resolution_log2 < 0 ? lacunary_default_resolution(s) : resolution_log2;
  if (m > 26) throw Error(ErrorCode::InvalidArgument, "grid on [0, 1] too fine");
  if (!(static_cast<double>(s.back()) < std::ldexp(0.5, m))) {
    throw Error(ErrorCode::AliasedFrequency, "highest frequency is not below the grid Nyquist bound");
  }
  const Grid grid(0.0, m, std::size_t{1} << m);
  std::vector<Complex> values(grid.count());
  for (std::size_t n = 0; n < a.size(); ++n) {
    // Exact phase: s_n * (i + 1/2) / 2^m reduced mod 1 in integer arithmetic.
    const auto period = static_cast<std::uint64_t>(2) << m;
    const auto freq = static_cast<std::uint64_t>(s[n]) % period;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const std::uint64_t num = (freq * (2 * i + 1)) % period;
      values[i] += a[n] * std::polar(1.0, kTwoPi * std::ldexp(static_cast<double>(num), -(m + 1)));
    }
  }
  return lp_norm(SampledFunction(grid, std::move(values)), p);
}

std::vector<SampledFunction> random_atom_family(std::mt19937_64& eng, std::size_t n) {
  constexpr int kStepLog2 = 4;
  const Grid window_grid = Grid::covering(0.0, 2.0, kStepLog2);
  std::vector<Complex> w;
  for (std::size_t i = 0; i < window_grid.count(); ++i) w.push_back(rng::complex_box(eng));
  const SampledFunction window(window_grid, std::move(w));

  const Grid target = Grid::covering(0.0, 6.0, kStepLog2);
  std::vector<SampledFunction> out;
  for (std::size_t j = 0; j < n; ++j) {
    const double t = rng::uniform_int(eng, 0, 63) / 16.0;
    const double s = rng::uniform_int(eng, -15, 15) / 16.0;
    out.push_back(embed(time_freq_shift(window, t, s), target));
  }
  return out;
}

}  // namespace gaborlab
