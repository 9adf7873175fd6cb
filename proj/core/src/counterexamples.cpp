#include "gaborlab/counterexamples.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/zeta.hpp>
#include <nlohmann/json.hpp>

#include "gaborlab/error.hpp"
#include "gaborlab/random.hpp"
#include "summation.hpp"

namespace gaborlab {

namespace {

constexpr std::uint64_t kThm42Stream = 0x7442;
constexpr std::uint64_t kThm52Stream = 0x7552;

double abs_p(const Complex& z, double p) { return detail::abs_pow(std::abs(z), p); }

// sum_j a_j * atoms[j], all on one grid.
SampledFunction combine_atoms(const std::vector<SampledFunction>& atoms, const std::vector<Complex>& a) {
  const Grid& grid = atoms.front().grid();
  std::vector<Complex> out(grid.count());
  for (std::size_t j = 0; j < atoms.size() && j < a.size(); ++j) {
    if (a[j] == Complex{}) continue;
    const auto values = atoms[j].values();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += a[j] * values[i];
  }
  return SampledFunction(grid, std::move(out));
}

std::vector<Complex> random_coefficients(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial,
                                         int n) {
  auto eng = rng::trial_engine(seed, stream, trial);
  std::vector<Complex> a;
  for (int j = 0; j < n; ++j) a.push_back(rng::complex_box(eng));
  return a;
}

double range_pow(std::span<const Complex> values, std::size_t lo, std::size_t hi, double p, double step) {
  detail::CompensatedSum sum;
  for (std::size_t i = lo; i < hi; ++i) sum.add(abs_p(values[i], p));
  return sum.value() * step;
}

}  // namespace

Complex WeightSequence::coefficient(int k) const {
  if (k < first_index || k > last_index()) return Complex{};
  return c[static_cast<std::size_t>(k - first_index)];
}

double WeightSequence::tail(int j) const {
  if (j > last_index()) return 0.0;
  return w[static_cast<std::size_t>(std::max(j, first_index) - first_index)];
}

WeightSequence WeightSequence::from_coefficients(std::vector<Complex> c, double p, int first_index) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "weight sequences need p >= 1");
  WeightSequence out;
  out.first_index = first_index;
  out.c = std::move(c);
  out.w.assign(out.c.size(), 0.0);
  double acc = 0.0;
  for (std::size_t i = out.c.size(); i-- > 0;) {
    acc += abs_p(out.c[i], p);
    out.w[i] = acc;
  }
  return out;
}

WeightSequence WeightSequence::from_tail_weights(const std::vector<double>& w, double p) {
  if (w.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one weight");
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(w[i] > 0.0) || (i > 0 && w[i] > w[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "tail weights must be positive and non-increasing");
    }
  }
  std::vector<Complex> c;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double mass = i + 1 < w.size() ? w[i] - w[i + 1] : w[i];
    c.emplace_back(std::pow(mass, 1.0 / p));
  }
  WeightSequence out = from_coefficients(std::move(c), p, 1);
  out.w = w;  // exact tails, free of the pow round trip
  return out;
}

std::vector<double> power_law_weights(int count, double alpha) {
  std::vector<double> w;
  for (int j = 1; j <= count; ++j) w.push_back(std::pow(static_cast<double>(j), -alpha));
  return w;
}

SampledFunction thm42_window(const WeightSequence& c, const Exponent& p, int K, const Grid& grid) {
  if (grid.step_log2() < K) {
    throw Error(ErrorCode::GridTooCoarse, "thm42 window needs step <= 2^-K");
  }
  std::vector<Complex> values(grid.count());
  for (int k = std::max(1, c.first_index); k <= std::min(K, c.last_index()); ++k) {
    const Complex v = c.coefficient(k) * std::pow(2.0, k / p.p());
    const auto piece = indicator(grid, k, k + std::ldexp(1.0, -k), v);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += piece[i];
  }
  return SampledFunction(grid, std::move(values));
}

std::vector<TimeFreqPoint> thm42_lattice(int J) {
  if (J < 0) throw Error(ErrorCode::InvalidArgument, "J must be non-negative");
  std::vector<TimeFreqPoint> out;
  for (int j = 1; j <= J; ++j) out.push_back({std::ldexp(1.0, -j), std::ldexp(1.0, j)});
  return out;
}

double thm42_predicted_norm(const std::vector<Complex>& a, const WeightSequence& c, const Exponent& p) {
  double weighted = 0.0;
  double squares = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    weighted += abs_p(a[i], p.p()) * c.tail(static_cast<int>(i) + 1);
    squares += std::norm(a[i]);
  }
  return std::pow(weighted, 1.0 / p.p()) + std::sqrt(squares);
}

double thm42_cell_prediction(const std::vector<Complex>& a, const WeightSequence& c,
                             const Exponent& p, int k) {
  double head = 0.0;
  double tail = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int j = static_cast<int>(i) + 1;
    if (j <= k) {
      head += abs_p(a[i], p.p());
    } else {
      tail += std::norm(a[i]);
    }
  }
  return abs_p(c.coefficient(k), p.p()) * (head + std::pow(tail, p.p() / 2.0));
}

GaborSystem thm42_system(const WeightSequence& c, const Exponent& p, int K, int J) {
  const int m = std::max(J + 6, K);
  auto window = thm42_window(c, p, K, Grid::covering(1.0, K + 1.0, m));
  return GaborSystem::with_covering_grid(std::move(window), thm42_lattice(J));
}

std::vector<IntervalPiece> thm42_intervals(int k, int J, int resolution_log2) {
  if (k < 1 || J < 0) throw Error(ErrorCode::InvalidArgument, "need k >= 1 and J >= 0");
  if (resolution_log2 < k || resolution_log2 < J + 1 || resolution_log2 > 60) {
    throw Error(ErrorCode::GridTooCoarse, "tick resolution does not resolve the interval endpoints");
  }
  const auto tick = [&](int e) { return std::int64_t{1} << (resolution_log2 - e); };  // 2^-e
  std::vector<IntervalPiece> out;
  for (int l = 1; l <= k - 1; ++l) out.push_back({1, l, tick(l), tick(l) + tick(k)});
  const int l0 = std::max(k, J);
  for (int l = k; l < l0; ++l) out.push_back({2, l, tick(k) + tick(l + 1), tick(k) + tick(l)});
  out.push_back({2, l0, tick(k), tick(k) + tick(l0)});
  for (int l = k; l < l0; ++l) out.push_back({3, l, tick(l + 1), tick(l)});
  out.push_back({3, l0, 0, tick(l0)});
  return out;
}

CellDecomposition thm42_decompose(const SampledFunction& phi, const std::vector<Complex>& a,
                                  const WeightSequence& c, const Exponent& p, int k, int J) {
  const Grid& grid = phi.grid();
  const int m = grid.step_log2();
  const auto pieces = thm42_intervals(k, J, m);
  const std::int64_t cell_ticks = std::int64_t{1} << m;
  const std::ptrdiff_t base = grid.offset_of(static_cast<double>(k));
  if (base < 0 || static_cast<std::size_t>(base + cell_ticks) > grid.count()) {
    throw Error(ErrorCode::SupportOutOfRange, "cell [k, k+1] is not on the grid");
  }
  const auto values = phi.values();
  const auto at = [&](std::int64_t t) { return static_cast<std::size_t>(base + t); };

  CellDecomposition out;
  out.k = k;
  out.cell_norm_pow = range_pow(values, at(0), at(cell_ticks), p.p(), grid.step());

  auto sorted = pieces;
  std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
  out.disjoint = true;
  for (std::size_t r = 1; r < sorted.size(); ++r) {
    if (sorted[r - 1].hi > sorted[r].lo) out.disjoint = false;
  }

  std::vector<bool> covered(static_cast<std::size_t>(cell_ticks), false);
  for (const auto& piece : pieces) {
    std::fill(covered.begin() + piece.lo, covered.begin() + piece.hi, true);
    out.type_sum[piece.type - 1] += range_pow(values, at(piece.lo), at(piece.hi), p.p(), grid.step());
  }
  // Support of Phi_a on [k, k+1]: the summands [k + 2^-j, k + 2^-j + 2^-k), j <= J.
  out.covers_support = true;
  if (c.coefficient(k) != Complex{}) {
    for (int j = 1; j <= J; ++j) {
      const std::int64_t lo = cell_ticks >> j;
      const std::int64_t hi = std::min(cell_ticks, lo + (cell_ticks >> k));
      for (std::int64_t t = lo; t < hi; ++t) out.covers_support = out.covers_support && covered[t];
    }
  }
  for (std::int64_t t = 0; t < cell_ticks; ++t) {
    if (!covered[t] && values[at(t)] != Complex{}) out.covers_support = false;
  }

  double head = 0.0;
  for (std::size_t i = 0; i + 1 < static_cast<std::size_t>(k) && i < a.size(); ++i) head += abs_p(a[i], p.p());
  out.type1_closed_form = abs_p(c.coefficient(k), p.p()) * head;
  out.prediction = thm42_cell_prediction(a, c, p, k);
  return out;
}

Thm42Report thm42_verify(const WeightSequence& c, const Exponent& p, int J, int K, int trials,
                         std::uint64_t seed) {
  if (trials < 0) throw Error(ErrorCode::InvalidArgument, "trials must be non-negative");
  if (J < 1 || K < 1) throw Error(ErrorCode::InvalidArgument, "need J >= 1 and K >= 1");
  const auto sys = thm42_system(c, p, K, J);
  std::vector<SampledFunction> atoms;
  for (const auto& pt : sys.points()) atoms.push_back(atom(sys, pt));

  Thm42Report rep;
  rep.p = p.p();
  rep.J = J;
  rep.K = K;
  rep.resolution_log2 = sys.grid().step_log2();
  rep.min_ratio = rep.min_cell_ratio = std::numeric_limits<double>::infinity();
  rep.max_ratio = rep.max_cell_ratio = 0.0;

  std::vector<Complex> e1(static_cast<std::size_t>(J));
  e1[0] = 1.0;
  rep.degenerate_ratio = lp_norm(combine_atoms(atoms, e1), p) / thm42_predicted_norm(e1, c, p);

  for (int t = 0; t < trials; ++t) {
    const auto a = random_coefficients(seed, kThm42Stream, static_cast<std::uint64_t>(t), J);
    const auto phi = combine_atoms(atoms, a);
    Thm42Trial row;
    row.trial = static_cast<std::uint64_t>(t);
    row.computed = lp_norm(phi, p);
    row.predicted = thm42_predicted_norm(a, c, p);
    row.ratio = row.computed / row.predicted;
    rep.min_ratio = std::min(rep.min_ratio, row.ratio);
    rep.max_ratio = std::max(rep.max_ratio, row.ratio);
    rep.trials.push_back(row);

    for (int k = 1; k <= K; ++k) {
      const auto d = thm42_decompose(phi, a, c, p, k, J);
      rep.intervals_disjoint = rep.intervals_disjoint && d.disjoint;
      rep.intervals_cover = rep.intervals_cover && d.covers_support;
      const double total = d.type_sum[0] + d.type_sum[1] + d.type_sum[2];
      if (d.cell_norm_pow > 0.0) {
        rep.max_decomposition_error =
            std::max(rep.max_decomposition_error, std::abs(total - d.cell_norm_pow) / d.cell_norm_pow);
      }
      if (d.type1_closed_form > 0.0) {
        rep.max_type1_error = std::max(
            rep.max_type1_error, std::abs(d.type_sum[0] - d.type1_closed_form) / d.type1_closed_form);
      }
      if (d.prediction > 0.0) {
        const double r = d.cell_norm_pow / d.prediction;
        rep.min_cell_ratio = std::min(rep.min_cell_ratio, r);
        rep.max_cell_ratio = std::max(rep.max_cell_ratio, r);
      }
    }
  }
  if (trials == 0) rep.min_ratio = rep.min_cell_ratio = 0.0;
  return rep;
}

std::vector<double> thm42_growth_profile(double alpha, double p, int n_max) {
  std::vector<double> out;
  double acc = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    acc += std::pow(static_cast<double>(n), -alpha);
    out.push_back(acc / std::pow(static_cast<double>(n), p / 2.0));
  }
  return out;
}

SampledFunction thm52_window(const WeightSequence& c, const Exponent& /*p*/, int K, const Grid& grid) {
  if (K < 0 || K > 40) throw Error(ErrorCode::InvalidArgument, "K must lie in [0, 40]");
  if (!(std::ldexp(1.0, K) < std::ldexp(0.5, grid.step_log2()))) {
    throw Error(ErrorCode::AliasedFrequency, "frequency 2^K is not below the grid Nyquist bound");
  }
  std::vector<Complex> values(grid.count());
  for (int k = std::max(0, c.first_index); k <= std::min(K, c.last_index()); ++k) {
    const auto piece = modulate(indicator(grid, k, k + 1.0, c.coefficient(k)), std::ldexp(1.0, k));
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += piece[i];
  }
  return SampledFunction(grid, std::move(values));
}

double thm52_predicted_pow(const std::vector<Complex>& a, const WeightSequence& c, const Exponent& p) {
  const int n = static_cast<int>(a.size());
  const int K = c.last_index();
  detail::CompensatedSum sum;
  for (int l = 1; l <= n + K; ++l) {
    double inner = 0.0;
    for (int k = std::max(0, l - n); k <= std::min(l - 1, K); ++k) {
      inner += std::norm(a[static_cast<std::size_t>(l - k - 1)]) * std::norm(c.coefficient(k));
    }
    sum.add(std::pow(inner, p.p() / 2.0));
  }
  return sum.value();
}

WeightSequence thm52_truncated_weights(int K, double beta, double p) {
  if (K < 0) throw Error(ErrorCode::InvalidArgument, "K must be non-negative");
  std::vector<Complex> c;
  double total = 0.0;
  for (int k = 0; k <= K; ++k) {
    const double v = std::pow(k + 1.0, -beta);
    c.emplace_back(v);
    total += std::pow(v, p);
  }
  const double scale = std::pow(total, -1.0 / p);
  for (auto& v : c) v *= scale;
  return WeightSequence::from_coefficients(std::move(c), p, 0);
}

std::vector<double> thm52_growth_profile(double beta, double p, int n_max) {
  if (!(p * beta > 1.0)) throw Error(ErrorCode::InvalidArgument, "need p * beta > 1 for normalization");
  const double zeta = boost::math::zeta(p * beta);
  const double scale2 = std::pow(zeta, -2.0 / p);  // |c_k|^2 = (k+1)^(-2 beta) zeta^(-2/p)
  std::vector<double> out;
  double partial = 0.0;  // sum_{k<l} |c_k|^2
  double acc = 0.0;
  for (int l = 1; l <= n_max; ++l) {
    partial += std::pow(static_cast<double>(l), -2.0 * beta) * scale2;
    acc += std::pow(partial, p / 2.0);
    out.push_back(acc / l);
  }
  return out;
}

Thm52Report thm52_verify(const WeightSequence& c, const Exponent& p, int K, int length, int trials,
                         std::uint64_t seed, int growth_scan, int separated_count) {
  if (length < 1 || trials < 0 || separated_count < 1) {
    throw Error(ErrorCode::InvalidArgument, "need length >= 1, trials >= 0, separated_count >= 1");
  }
  const int m = K + 6;
  const auto window = thm52_window(c, p, K, Grid::covering(0.0, K + 1.0, m));
  std::vector<TimeFreqPoint> points;
  for (int j = 1; j <= length; ++j) points.push_back({static_cast<double>(j), 0.0});
  const auto sys = GaborSystem::with_covering_grid(window, points);
  std::vector<SampledFunction> atoms;
  for (const auto& pt : sys.points()) atoms.push_back(atom(sys, pt));

  Thm52Report rep;
  rep.p = p.p();
  rep.K = K;
  rep.length = length;
  rep.resolution_log2 = m;
  rep.min_ratio = std::numeric_limits<double>::infinity();

  std::vector<Complex> e1(static_cast<std::size_t>(length));
  e1[0] = 1.0;
  rep.degenerate_ratio = lp_norm_pow(combine_atoms(atoms, e1), p.p()) / thm52_predicted_pow(e1, c, p);

  for (int t = 0; t < trials; ++t) {
    const auto a = random_coefficients(seed, kThm52Stream, static_cast<std::uint64_t>(t), length);
    Thm52Trial row;
    row.trial = static_cast<std::uint64_t>(t);
    row.computed_pow = lp_norm_pow(combine_atoms(atoms, a), p.p());
    row.predicted_pow = thm52_predicted_pow(a, c, p);
    row.ratio = row.computed_pow / row.predicted_pow;
    rep.min_ratio = std::min(rep.min_ratio, row.ratio);
    rep.max_ratio = std::max(rep.max_ratio, row.ratio);
    rep.trials.push_back(row);
  }
  if (trials == 0) rep.min_ratio = 0.0;

  const auto growth = thm52_growth_profile(kThm52Beta, p.p(), growth_scan);
  for (std::size_t n = 0; n < growth.size(); ++n) {
    if (growth[n] > 2.0) {
      rep.growth_crossing = static_cast<int>(n) + 1;
      rep.growth_at_crossing = growth[n];
      break;
    }
  }

  // supp g lies in [0, K+1), so M = K+1 separates the translates completely.
  rep.separation = K + 1;
  rep.separated_count = separated_count;
  std::vector<TimeFreqPoint> separated;
  for (int j = 1; j <= separated_count; ++j) separated.push_back({static_cast<double>(rep.separation * j), 0.0});
  const auto sep_sys = GaborSystem::with_covering_grid(window, separated);
  CoefficientMap ones;
  for (const auto& pt : separated) ones[pt] = 1.0;
  rep.separated_norm = lp_norm(synthesize(sep_sys, ones), p);
  rep.separated_bound = 2.0 * std::pow(static_cast<double>(separated_count), 1.0 / p.p());
  return rep;
}

nlohmann::json to_json(const Thm42Report& r) {
  return {
      {"p", r.p},
      {"J", r.J},
      {"K", r.K},
      {"resolution_log2", r.resolution_log2},
      {"trials", r.trials.size()},
      {"min_ratio", r.min_ratio},
      {"max_ratio", r.max_ratio},
      {"min_cell_ratio", r.min_cell_ratio},
      {"max_cell_ratio", r.max_cell_ratio},
      {"degenerate_ratio", r.degenerate_ratio},
      {"max_decomposition_error", r.max_decomposition_error},
      {"max_type1_error", r.max_type1_error},
      {"intervals_disjoint", r.intervals_disjoint},
      {"intervals_cover", r.intervals_cover},
  };
}

nlohmann::json to_json(const Thm52Report& r) {
  return {
      {"p", r.p},
      {"K", r.K},
      {"length", r.length},
      {"resolution_log2", r.resolution_log2},
      {"trials", r.trials.size()},
      {"min_ratio", r.min_ratio},
      {"max_ratio", r.max_ratio},
      {"degenerate_ratio", r.degenerate_ratio},
      {"growth_crossing", r.growth_crossing},
      {"growth_at_crossing", r.growth_at_crossing},
      {"separation", r.separation},
      {"separated_count", r.separated_count},
      {"separated_norm", r.separated_norm},
      {"separated_bound", r.separated_bound},
  };
}

}  // namespace gaborlab
