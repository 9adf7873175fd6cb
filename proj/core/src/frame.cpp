#include "gaborlab/frame.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "gaborlab/error.hpp"
#include "gaborlab/random.hpp"

namespace gaborlab {

namespace {

using Rational = boost::multiprecision::cpp_rational;

constexpr std::int64_t kMaxFirstBlock = 1'000'000;
constexpr int kSelectionAttempts = 6;

// Exact evaluation of the strict block condition when p is an even integer
// (then N^(1-p/2) and (2K_p)^(-p/2) are rationals); floating point otherwise.
bool block_condition_holds(double p, const std::vector<std::int64_t>& sizes) {
  const double half = p / 2.0;
  if (p == std::floor(p) && static_cast<std::int64_t>(p) % 2 == 0 && p <= 64.0) {
    const auto e = static_cast<unsigned>(half - 1.0);
    Rational sum = 0;
    for (auto n : sizes) sum += Rational(1, boost::multiprecision::pow(BigInt(n), e));
    const auto two_k = static_cast<std::int64_t>(2.0 * (p - 1.0));
    const Rational bound(1, boost::multiprecision::pow(BigInt(two_k), static_cast<unsigned>(half)));
    return sum < bound;
  }
  double sum = 0.0;
  for (auto n : sizes) sum += std::pow(static_cast<double>(n), 1.0 - half);
  return sum < std::pow(2.0 * (p - 1.0), -half);
}

BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

std::vector<std::int64_t> grown_sizes(std::int64_t first, int num_blocks, double growth) {
  std::vector<std::int64_t> sizes;
  for (int k = 0; k < num_blocks; ++k) {
    const double raw = static_cast<double>(first) * std::pow(growth, k);
    sizes.push_back(static_cast<std::int64_t>(std::ceil(raw - 1e-9 * raw)));
  }
  return sizes;
}

// Local support [lo, hi) of h_k in ticks of 2^-m inside cell 0.
struct LocalSupport {
  std::int64_t lo;
  std::int64_t hi;
};

std::vector<LocalSupport> local_supports(const std::vector<HaarIndex>& atoms, int m) {
  std::vector<LocalSupport> out;
  for (const auto& idx : atoms) {
    out.push_back({static_cast<std::int64_t>(std::ldexp(idx.support_begin(), m)),
                   static_cast<std::int64_t>(std::ldexp(idx.support_end(), m))});
  }
  return out;
}

struct ShiftedSet {
  BigInt cell;
  LocalSupport local;
};

// Sorts by (cell, lo) and reports whether neighbours on a shared cell overlap.
bool sets_disjoint(std::vector<ShiftedSet>& sets, std::size_t& shared_cells) {
  std::vector<std::size_t> order(sets.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (sets[a].cell != sets[b].cell) return sets[a].cell < sets[b].cell;
    return sets[a].local.lo < sets[b].local.lo;
  });
  shared_cells = 0;
  bool ok = true;
  for (std::size_t r = 1; r < order.size(); ++r) {
    const auto& prev = sets[order[r - 1]];
    const auto& next = sets[order[r]];
    if (prev.cell != next.cell) continue;
    ++shared_cells;
    if (prev.local.hi > next.local.lo) ok = false;
  }
  return ok;
}

SampledFunction cell_zero_view(const CellFunction& f) {
  const Grid local(0.0, f.resolution_log2(), f.cell_size());
  return SampledFunction(local, f.cell_values(BigInt(0)));
}

}  // namespace

BlockPlan::BlockPlan(const Exponent& p, std::vector<std::int64_t> sizes)
    : p_(p), k_p_(p.p() - 1.0), sizes_(std::move(sizes)) {
  if (!(p.p() > 2.0)) {
    throw Error(ErrorCode::InfeasiblePlan, "block plans need p > 2 (N^(1-p/2) must decay)");
  }
  if (sizes_.empty()) throw Error(ErrorCode::InfeasiblePlan, "plan needs at least one block");
  for (auto n : sizes_) {
    if (n < 1) throw Error(ErrorCode::InfeasiblePlan, "block sizes must be positive");
    starts_.push_back(total_);
    total_ += static_cast<std::size_t>(n);
    block_sum_ += std::pow(static_cast<double>(n), 1.0 - p.p() / 2.0);
  }
  threshold_ = std::pow(2.0 * k_p_, -p.p() / 2.0);
  if (!block_condition_holds(p.p(), sizes_)) {
    throw Error(ErrorCode::InfeasiblePlan, "sum N_k^(1-p/2) = " + std::to_string(block_sum_) +
                                               " is not below (2K_p)^(-p/2) = " +
                                               std::to_string(threshold_));
  }
}

std::size_t BlockPlan::block_of(std::size_t i) const {
  if (i >= total_) throw Error(ErrorCode::InvalidArgument, "selection index outside plan");
  const auto it = std::upper_bound(starts_.begin(), starts_.end(), i);
  return static_cast<std::size_t>(it - starts_.begin()) - 1;
}

BlockPlan plan_blocks(const Exponent& p, int num_blocks, double growth) {
  if (!(p.p() > 2.0)) throw Error(ErrorCode::InfeasiblePlan, "block plans need p > 2");
  if (num_blocks < 1) throw Error(ErrorCode::InvalidArgument, "need at least one block");
  if (!(growth >= 2.0)) throw Error(ErrorCode::InvalidArgument, "growth must be >= 2");
  for (std::int64_t first = 1; first <= kMaxFirstBlock; ++first) {
    auto sizes = grown_sizes(first, num_blocks, growth);
    if (block_condition_holds(p.p(), sizes)) return BlockPlan(p, std::move(sizes));
  }
  throw Error(ErrorCode::InfeasiblePlan, "no first block size up to 10^6 satisfies the condition");
}

double error_bound(const BlockPlan& plan) {
  return plan.k_p() * std::pow(plan.block_sum(), 2.0 / plan.exponent().p());
}

std::vector<HaarIndex> block_haar_atoms(std::size_t num_blocks) {
  int max_scale = -1;
  while ((std::size_t{1} << (max_scale + 1)) < num_blocks) ++max_scale;
  auto all = haar_indices(0, 1, max_scale);
  all.resize(num_blocks);
  return all;
}

int required_resolution(std::size_t num_blocks) {
  int m = 0;
  for (const auto& idx : block_haar_atoms(num_blocks)) m = std::max(m, idx.scale + 1);
  return m;
}

int required_resolution(std::size_t num_blocks, const std::vector<FramePoint>& points) {
  int m = required_resolution(num_blocks);
  for (const auto& pt : points) {
    while (!(std::abs(pt.s) < std::ldexp(0.5, m)) && m < 16) ++m;
  }
  return m;
}

DisjointnessCertificate certify_disjointness(const std::vector<FramePoint>& points,
                                             const BlockPlan& plan) {
  if (points.size() != plan.total_points()) {
    throw Error(ErrorCode::InvalidArgument, "selection size does not match the plan");
  }
  const auto atoms = block_haar_atoms(plan.num_blocks());
  const auto supports = local_supports(atoms, required_resolution(plan.num_blocks()));
  const std::size_t n = points.size();

  DisjointnessCertificate cert;
  std::vector<ShiftedSet> sets;
  sets.reserve(n * (n - 1));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& local = supports[plan.block_of(i)];
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) sets.push_back({points[j].t - points[i].t, local});
    }
  }
  cert.sets_checked = sets.size();
  const bool quadruples_ok = sets_disjoint(sets, cert.shared_cells);

  std::vector<ShiftedSet> summands;
  for (std::size_t i = 0; i < n; ++i) summands.push_back({-points[i].t, supports[plan.block_of(i)]});
  std::size_t shared = 0;
  cert.window_summands_disjoint = sets_disjoint(summands, shared);
  cert.passed = quadruples_ok && cert.window_summands_disjoint;
  return cert;
}

TranslateSelection select_translates(const std::vector<FramePoint>& lambda,
                                     const BlockPlan& plan) {
  std::vector<std::size_t> order(lambda.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return abs_big(lambda[a].t) < abs_big(lambda[b].t);
  });

  const std::size_t needed = plan.total_points();
  double growth = 4.0;
  for (int attempt = 0; attempt < kSelectionAttempts; ++attempt, growth *= 2.0) {
    const auto g = static_cast<std::int64_t>(growth);
    TranslateSelection sel;
    sel.growth_factor = growth;
    BigInt prev = 0;
    for (std::size_t idx : order) {
      if (sel.points.size() == needed) break;
      const BigInt mag = abs_big(lambda[idx].t);
      if (mag >= g * prev + g) {
        sel.points.push_back(lambda[idx]);
        prev = mag;
      }
    }
    if (sel.points.size() < needed) {
      throw Error(ErrorCode::InsufficientSpread,
                  "Lambda supplies " + std::to_string(sel.points.size()) + " of " +
                      std::to_string(needed) + " sufficiently spread points");
    }
    for (std::size_t i = 0; i < needed; ++i) sel.block.push_back(plan.block_of(i));
    sel.certificate = certify_disjointness(sel.points, plan);
    if (sel.certificate.passed) return sel;
  }
  throw Error(ErrorCode::InsufficientSpread, "no growth factor produced a disjointness certificate");
}

std::vector<FramePoint> geometric_spread(std::size_t count, std::int64_t ratio,
                                         const std::vector<double>& frequencies) {
  if (ratio < 2) throw Error(ErrorCode::InvalidArgument, "spread ratio must be >= 2");
  if (frequencies.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one frequency");
  std::vector<FramePoint> out;
  BigInt mag = 1;
  for (std::size_t n = 1; n <= count; ++n) {
    mag *= ratio;
    out.push_back({n % 2 == 1 ? mag : BigInt(-mag), frequencies[(n - 1) % frequencies.size()]});
  }
  return out;
}

CellFunction build_window(const BlockPlan& plan, const TranslateSelection& selection,
                          int resolution_log2) {
  return ConstructedFrame(plan, selection, resolution_log2).window();
}

ConstructedFrame::ConstructedFrame(BlockPlan plan, TranslateSelection selection,
                                   int resolution_log2)
    : plan_(std::move(plan)),
      selection_(std::move(selection)),
      haar_(block_haar_atoms(plan_.num_blocks())),
      resolution_log2_(resolution_log2),
      window_(resolution_log2),
      q_(error_bound(plan_)) {
  const std::size_t n_points = plan_.total_points();
  if (resolution_log2_ < required_resolution(plan_.num_blocks()) || resolution_log2_ > 16) {
    throw Error(ErrorCode::GridTooSmall, "cell resolution 2^-" + std::to_string(resolution_log2_) +
                                             " does not resolve the block Haar atoms");
  }
  if (selection_.points.size() != n_points) {
    throw Error(ErrorCode::InvalidArgument, "selection does not match the plan");
  }
  if (!selection_.certificate.passed) {
    selection_.certificate = certify_disjointness(selection_.points, plan_);
    if (!selection_.certificate.passed) {
      throw Error(ErrorCode::InvalidArgument, "selection fails the disjointness certificate");
    }
  }
  if (selection_.block.size() != n_points) {
    selection_.block.clear();
    for (std::size_t i = 0; i < n_points; ++i) selection_.block.push_back(plan_.block_of(i));
  }
  const double nyquist = std::ldexp(0.5, resolution_log2_);
  for (const auto& pt : selection_.points) {
    if (!(std::abs(pt.s) < nyquist)) {
      throw Error(ErrorCode::AliasedFrequency, "selected frequency exceeds the cell Nyquist bound");
    }
  }

  const Grid local(0.0, resolution_log2_, std::size_t{1} << resolution_log2_);
  const std::size_t width = local.count();
  for (std::size_t i = 0; i < n_points; ++i) {
    const std::size_t k = selection_.block[i];
    const auto h = haar_function(haar_[k], plan_.exponent(), local);
    const auto phases = cell_phases(BigInt(0), -selection_.points[i].s, resolution_log2_);
    const double scale = 1.0 / std::sqrt(static_cast<double>(plan_.sizes()[k]));
    std::vector<Complex> values(width);
    for (std::size_t x = 0; x < width; ++x) values[x] = scale * h[x] * phases[x];
    modulated_haar_.push_back(std::move(values));
  }

  CellFunctionBuilder builder(resolution_log2_);
  for (std::size_t i = 0; i < n_points; ++i) builder.add(-selection_.points[i].t, modulated_haar_[i]);
  window_ = std::move(builder).finish();

  // Pieces of u_j = e_{s_j} tau_{t_j} g: summand i lands on cell t_j - t_i.
  std::vector<BigInt> cells(n_points * n_points);
  for (std::size_t j = 0; j < n_points; ++j) {
    for (std::size_t i = 0; i < n_points; ++i) {
      cells[j * n_points + i] = selection_.points[j].t - selection_.points[i].t;
    }
  }
  std::vector<std::uint32_t> order(cells.size());
  std::iota(order.begin(), order.end(), 0U);
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) { return cells[a] < cells[b]; });
  std::vector<std::uint32_t> slot_of(cells.size());
  std::vector<BigInt> unique;
  for (std::uint32_t idx : order) {
    if (unique.empty() || unique.back() != cells[idx]) unique.push_back(cells[idx]);
    slot_of[idx] = static_cast<std::uint32_t>(unique.size() - 1);
  }
  table_ = std::make_shared<const CellTable>(resolution_log2_, std::move(unique));
  zero_slot_ = table_->find(BigInt(0));

  pieces_.resize(n_points);
  piece_values_.resize(n_points);
  for (std::size_t j = 0; j < n_points; ++j) {
    auto& values = piece_values_[j];
    values.reserve(n_points * width);
    for (std::size_t i = 0; i < n_points; ++i) {
      const std::size_t flat = j * n_points + i;
      pieces_[j].push_back({slot_of[flat], static_cast<std::uint32_t>(i)});
      const auto phases = cell_phases(cells[flat], selection_.points[j].s, resolution_log2_);
      for (std::size_t x = 0; x < width; ++x) values.push_back(modulated_haar_[i][x] * phases[x]);
    }
  }
}

double ConstructedFrame::functional_scale(std::size_t j) const {
  return 1.0 / std::sqrt(static_cast<double>(plan_.sizes()[selection_.block.at(j)]));
}

std::vector<Complex> ConstructedFrame::haar_coefficients(const CellFunction& f) const {
  if (f.resolution_log2() != resolution_log2_) {
    throw Error(ErrorCode::GridMismatch, "function resolution differs from the frame");
  }
  const SampledFunction local = cell_zero_view(f);
  std::vector<Complex> out;
  for (const auto& idx : haar_) out.push_back(haar_functional(idx, local, plan_.exponent()));
  return out;
}

CellFunction ConstructedFrame::span_element(const std::vector<Complex>& coefficients) const {
  if (coefficients.size() != haar_.size()) {
    throw Error(ErrorCode::InvalidArgument, "one coefficient per block atom expected");
  }
  const Grid local(0.0, resolution_log2_, std::size_t{1} << resolution_log2_);
  std::vector<Complex> values(table_->size() * local.count());
  for (std::size_t l = 0; l < haar_.size(); ++l) {
    const auto h = haar_function(haar_[l], plan_.exponent(), local);
    for (std::size_t x = 0; x < local.count(); ++x) {
      values[zero_slot_ * local.count() + x] += coefficients[l] * h[x];
    }
  }
  return CellFunction(table_, std::move(values));
}

CellFunction ConstructedFrame::project(const CellFunction& f) const {
  return span_element(haar_coefficients(f));
}

CellFunction ConstructedFrame::random_span_element(std::mt19937_64& eng) const {
  std::vector<Complex> coefficients;
  for (std::size_t l = 0; l < haar_.size(); ++l) coefficients.push_back(rng::complex_box(eng));
  return span_element(coefficients);
}

std::vector<Complex> ConstructedFrame::analyze(const CellFunction& f) const {
  const auto h = haar_coefficients(f);
  std::vector<Complex> out(plan_.total_points());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = functional_scale(j) * h[selection_.block[j]];
  return out;
}

CellFunction ConstructedFrame::synthesize(const std::vector<Complex>& coefficients) const {
  if (coefficients.size() != plan_.total_points()) {
    throw Error(ErrorCode::InvalidArgument, "one coefficient per selected point expected");
  }
  const std::size_t width = std::size_t{1} << resolution_log2_;
  std::vector<Complex> out(table_->size() * width);
  for (std::size_t j = 0; j < coefficients.size(); ++j) {
    const Complex c = coefficients[j];
    if (c == Complex{}) continue;
    const auto& values = piece_values_[j];
    for (std::size_t r = 0; r < pieces_[j].size(); ++r) {
      Complex* dst = out.data() + static_cast<std::size_t>(pieces_[j][r].slot) * width;
      const Complex* src = values.data() + r * width;
      for (std::size_t x = 0; x < width; ++x) dst[x] += c * src[x];
    }
  }
  return CellFunction(table_, std::move(out));
}

FrameApplication frame_operator(const ConstructedFrame& frame, const SampledFunction& f) {
  const CellFunction cf = CellFunction::from_sampled(f);
  if (cf.resolution_log2() != frame.resolution_log2()) {
    throw Error(ErrorCode::GridMismatch, "function step differs from the frame resolution");
  }
  FrameApplication out{frame_operator(frame, cf), 0.0};
  out.projection_residual = lp_norm(cf - frame.project(cf), frame.plan().exponent().p());
  return out;
}

CellFunction frame_operator(const ConstructedFrame& frame, const CellFunction& f) {
  return frame.synthesize(frame.analyze(f));
}

CellFunction extended_frame_operator(const ConstructedFrame& frame, const CellFunction& y) {
  const CellFunction projected = frame.project(y);
  return (y - projected) + frame_operator(frame, y);
}

CellFunction main_term(const ConstructedFrame& frame, const CellFunction& f) {
  const auto h = frame.haar_coefficients(f);
  const auto& plan = frame.plan();
  const int m = frame.resolution_log2();
  const Grid local(0.0, m, std::size_t{1} << m);
  CellFunctionBuilder builder(m);
  for (std::size_t i = 0; i < plan.total_points(); ++i) {
    const std::size_t k = frame.selection().block[i];
    const auto hk = haar_function(frame.haar_atoms()[k], plan.exponent(), local);
    builder.add(BigInt(0), hk.values(), h[k] / static_cast<double>(plan.sizes()[k]));
  }
  return std::move(builder).finish();
}

CellFunction error_term(const ConstructedFrame& frame, const CellFunction& f) {
  const auto h = frame.haar_coefficients(f);
  const auto& plan = frame.plan();
  const auto& points = frame.selection().points;
  const auto& block = frame.selection().block;
  const int m = frame.resolution_log2();
  const Grid local(0.0, m, std::size_t{1} << m);

  std::vector<CellFunction> atoms;
  for (const auto& idx : frame.haar_atoms()) {
    atoms.push_back(CellFunction::from_sampled(haar_function(idx, plan.exponent(), local)));
  }
  CellFunctionBuilder builder(m);
  for (std::size_t j = 0; j < points.size(); ++j) {
    const std::size_t l = block[j];
    if (h[l] == Complex{}) continue;
    const double nl = static_cast<double>(plan.sizes()[l]);
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (i == j) continue;
      const std::size_t k = block[i];
      const double nk = static_cast<double>(plan.sizes()[k]);
      const CellFunction term =
          modulate(translate(modulate(atoms[k], -points[i].s), points[j].t - points[i].t), points[j].s);
      const Complex weight = h[l] / std::sqrt(nk * nl);
      for (std::size_t slot = 0; slot < term.piece_count(); ++slot) {
        builder.add(term.table()->cell(slot), term.piece(slot), weight);
      }
    }
  }
  return std::move(builder).finish();
}

int neumann_iteration_limit(double q, double tol) {
  if (!(tol > 0.0) || !(tol < 1.0)) throw Error(ErrorCode::InvalidArgument, "tol must lie in (0, 1)");
  if (!(q >= 0.0) || !(q < 1.0)) throw Error(ErrorCode::InvalidArgument, "q must lie in [0, 1)");
  if (q == 0.0) return 1;
  return static_cast<int>(std::ceil(std::log(tol) / std::log(q))) + 1;
}

NeumannResult invert_neumann(const ConstructedFrame& frame, const CellFunction& f, double tol) {
  NeumannResult result{f, 0, neumann_iteration_limit(frame.q(), tol), 0.0};
  const double p = frame.plan().exponent().p();
  const double base = lp_norm(f, p);
  if (base == 0.0) return result;

  CellFunction y = f;
  CellFunction sy = extended_frame_operator(frame, y);
  for (int n = 1; n <= result.iteration_limit; ++n) {
    y = (f + y) - sy;
    sy = extended_frame_operator(frame, y);
    const double residual = lp_norm(sy - f, p) / base;
    if (residual <= tol) {
      result.solution = std::move(y);
      result.iterations = n;
      result.relative_residual = residual;
      return result;
    }
  }
  throw Error(ErrorCode::NoConvergence, "Neumann iteration exceeded its certified bound of " +
                                            std::to_string(result.iteration_limit) + " steps");
}

Reconstruction reconstruct(const ConstructedFrame& frame, const CellFunction& f, double tol) {
  const double p = frame.plan().exponent().p();
  auto inverse = invert_neumann(frame, f, tol);
  Reconstruction rec{f, 0.0, frame.analyze(inverse.solution),
                     inverse.solution - frame.project(inverse.solution), inverse.iterations};
  rec.approximation = frame.synthesize(rec.coefficients) + rec.far_field;
  const double base = lp_norm(f, p);
  rec.relative_error = base == 0.0 ? 0.0 : lp_norm(rec.approximation - f, p) / base;
  return rec;
}

double reconstruction_sign_flip_max(const ConstructedFrame& frame, const Reconstruction& rec,
                                    int patterns, std::uint64_t seed) {
  const double p = frame.plan().exponent().p();
  double worst = 0.0;
  for (int trial = 0; trial < patterns; ++trial) {
    auto eng = rng::trial_engine(seed, 0xF1A9, static_cast<std::uint64_t>(trial));
    const auto signs = rng::sign_pattern(eng, rec.coefficients.size());
    std::vector<Complex> flipped(rec.coefficients);
    for (std::size_t j = 0; j < flipped.size(); ++j) flipped[j] *= static_cast<double>(signs[j]);
    worst = std::max(worst, lp_norm(frame.synthesize(flipped) + rec.far_field, p));
  }
  return worst;
}

nlohmann::json frame_points_to_json(const std::vector<FramePoint>& points) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& pt : points) out.push_back({{"t", pt.t.str()}, {"s", pt.s}});
  return out;
}

std::vector<FramePoint> frame_points_from_json(const nlohmann::json& j) {
  std::vector<FramePoint> out;
  try {
    for (const auto& row : j) {
      const auto& t = row.at("t");
      BigInt value = t.is_string() ? BigInt(t.get<std::string>()) : BigInt(t.get<std::int64_t>());
      out.push_back({std::move(value), row.value("s", 0.0)});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed frame point set: ") + e.what());
  } catch (const std::runtime_error& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed time shift: ") + e.what());
  }
  return out;
}

nlohmann::json frame_to_json(const ConstructedFrame& frame) {
  const auto& plan = frame.plan();
  const auto& sel = frame.selection();
  nlohmann::json selection = nlohmann::json::array();
  for (std::size_t i = 0; i < sel.points.size(); ++i) {
    selection.push_back({{"t", sel.points[i].t.str()}, {"s", sel.points[i].s}, {"block", sel.block[i]}});
  }
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& idx : frame.haar_atoms()) atoms.push_back(idx);
  return {
      {"p", plan.exponent().p()},
      {"k_p", plan.k_p()},
      {"sizes", plan.sizes()},
      {"block_sum", plan.block_sum()},
      {"threshold", plan.threshold()},
      {"q", frame.q()},
      {"resolution_log2", frame.resolution_log2()},
      {"growth_factor", sel.growth_factor},
      {"haar_atoms", std::move(atoms)},
      {"selection", std::move(selection)},
      {"certificate",
       {{"passed", sel.certificate.passed},
        {"sets_checked", sel.certificate.sets_checked},
        {"shared_cells", sel.certificate.shared_cells},
        {"window_summands_disjoint", sel.certificate.window_summands_disjoint}}},
      {"window",
       {{"pieces", frame.window().piece_count()},
        {"norm_p_pow", lp_norm_pow(frame.window(), plan.exponent().p())}}},
  };
}

ConstructedFrame frame_from_json(const nlohmann::json& j) {
  try {
    BlockPlan plan(Exponent(j.at("p").get<double>()), j.at("sizes").get<std::vector<std::int64_t>>());
    TranslateSelection sel;
    sel.points = frame_points_from_json(j.at("selection"));
    sel.growth_factor = j.value("growth_factor", 4.0);
    sel.certificate = certify_disjointness(sel.points, plan);
    for (std::size_t i = 0; i < sel.points.size(); ++i) sel.block.push_back(plan.block_of(i));
    return ConstructedFrame(std::move(plan), std::move(sel), j.at("resolution_log2").get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed frame bundle: ") + e.what());
  }
}

}  // namespace gaborlab
