#include "gaborlab/cells.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gaborlab/error.hpp"
#include "summation.hpp"

namespace gaborlab {

namespace {

void require_resolution(int m) {
  if (m < 0 || m > 30) throw Error(ErrorCode::InvalidArgument, "cell resolution must lie in [0, 30]");
}

std::shared_ptr<const CellTable> merged_table(const CellTable& a, const CellTable& b) {
  if (a.resolution_log2() != b.resolution_log2()) {
    throw Error(ErrorCode::GridMismatch, "cell functions differ in resolution");
  }
  std::vector<BigInt> cells;
  cells.reserve(a.size() + b.size());
  std::set_union(a.cells().begin(), a.cells().end(), b.cells().begin(), b.cells().end(),
                 std::back_inserter(cells));
  return std::make_shared<const CellTable>(a.resolution_log2(), std::move(cells));
}

template <typename Op>
CellFunction combine(const CellFunction& f, const CellFunction& g, Op op) {
  if (f.table() == g.table()) {
    std::vector<Complex> out(f.values().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(f.values()[i], g.values()[i]);
    return CellFunction(f.table(), std::move(out));
  }
  auto table = merged_table(*f.table(), *g.table());
  return combine(f.on_table(table), g.on_table(table), op);
}

}  // namespace

CellTable::CellTable(int resolution_log2, std::vector<BigInt> sorted_cells)
    : resolution_log2_(resolution_log2), cells_(std::move(sorted_cells)) {
  require_resolution(resolution_log2);
  for (std::size_t i = 1; i < cells_.size(); ++i) {
    if (!(cells_[i - 1] < cells_[i])) {
      throw Error(ErrorCode::InvalidArgument, "cell table must be strictly increasing");
    }
  }
}

std::size_t CellTable::find(const BigInt& cell) const {
  const auto it = std::lower_bound(cells_.begin(), cells_.end(), cell);
  if (it == cells_.end() || *it != cell) return cells_.size();
  return static_cast<std::size_t>(it - cells_.begin());
}

CellFunction::CellFunction(int resolution_log2)
    : table_(std::make_shared<const CellTable>(resolution_log2, std::vector<BigInt>{})) {}

CellFunction::CellFunction(std::shared_ptr<const CellTable> table, std::vector<Complex> values)
    : table_(std::move(table)), values_(std::move(values)) {
  if (values_.size() != table_->size() * table_->cell_size()) {
    throw Error(ErrorCode::InvalidArgument, "value count does not match cell table");
  }
}

std::span<const Complex> CellFunction::piece(std::size_t slot) const {
  return std::span<const Complex>(values_).subspan(slot * cell_size(), cell_size());
}

std::vector<Complex> CellFunction::cell_values(const BigInt& cell) const {
  const std::size_t slot = table_->find(cell);
  if (slot == table_->size()) return std::vector<Complex>(cell_size());
  const auto p = piece(slot);
  return {p.begin(), p.end()};
}

SampledFunction CellFunction::to_sampled(std::int64_t first, std::int64_t last) const {
  if (last <= first) throw Error(ErrorCode::InvalidArgument, "empty cell range");
  const std::size_t n = cell_size();
  Grid grid(static_cast<double>(first), resolution_log2(),
            static_cast<std::size_t>(last - first) * n);
  std::vector<Complex> out(grid.count());
  const BigInt lo(first);
  const BigInt hi(last);
  for (std::size_t slot = 0; slot < table_->size(); ++slot) {
    const BigInt& c = table_->cell(slot);
    const auto values = piece(slot);
    if (c >= lo && c < hi) {
      const auto offset = static_cast<std::size_t>(static_cast<std::int64_t>(c) - first) * n;
      std::copy(values.begin(), values.end(), out.begin() + static_cast<std::ptrdiff_t>(offset));
    } else if (std::any_of(values.begin(), values.end(), [](const Complex& v) { return v != Complex{}; })) {
      throw Error(ErrorCode::SupportOutOfRange, "cell function has support outside the range");
    }
  }
  return SampledFunction(grid, std::move(out));
}

CellFunction CellFunction::from_sampled(const SampledFunction& f) {
  const Grid& g = f.grid();
  const std::size_t n = std::size_t{1} << g.step_log2();
  if (g.origin() != std::floor(g.origin()) || g.count() % n != 0) {
    throw Error(ErrorCode::NonAlignedGrid, "sampled function must cover whole unit cells");
  }
  const auto first = static_cast<std::int64_t>(g.origin());
  std::vector<BigInt> cells;
  for (std::size_t k = 0; k < g.count() / n; ++k) cells.emplace_back(first + static_cast<std::int64_t>(k));
  auto table = std::make_shared<const CellTable>(g.step_log2(), std::move(cells));
  return CellFunction(std::move(table), std::vector<Complex>(f.values().begin(), f.values().end()));
}

CellFunction CellFunction::on_table(std::shared_ptr<const CellTable> table) const {
  if (table == table_) return *this;
  if (table->resolution_log2() != resolution_log2()) {
    throw Error(ErrorCode::GridMismatch, "cell tables differ in resolution");
  }
  const std::size_t n = cell_size();
  std::vector<Complex> out(table->size() * n);
  for (std::size_t slot = 0; slot < table_->size(); ++slot) {
    const auto values = piece(slot);
    const std::size_t target = table->find(table_->cell(slot));
    if (target == table->size()) {
      if (std::any_of(values.begin(), values.end(), [](const Complex& v) { return v != Complex{}; })) {
        throw Error(ErrorCode::SupportOutOfRange, "target table misses an occupied cell");
      }
      continue;
    }
    std::copy(values.begin(), values.end(), out.begin() + static_cast<std::ptrdiff_t>(target * n));
  }
  return CellFunction(std::move(table), std::move(out));
}

CellFunctionBuilder::CellFunctionBuilder(int resolution_log2) : resolution_log2_(resolution_log2) {
  require_resolution(resolution_log2);
}

void CellFunctionBuilder::add(BigInt cell, std::span<const Complex> values, Complex weight) {
  const std::size_t n = std::size_t{1} << resolution_log2_;
  if (values.size() != n) throw Error(ErrorCode::InvalidArgument, "piece has the wrong length");
  cells_.push_back(std::move(cell));
  for (const auto& v : values) values_.push_back(weight * v);
}

CellFunction CellFunctionBuilder::finish() && {
  const std::size_t n = std::size_t{1} << resolution_log2_;
  std::vector<std::size_t> order(cells_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return cells_[a] < cells_[b]; });
  std::vector<BigInt> unique;
  std::vector<Complex> values;
  for (std::size_t idx : order) {
    if (unique.empty() || unique.back() != cells_[idx]) {
      unique.push_back(std::move(cells_[idx]));
      values.resize(values.size() + n);
    }
    Complex* dst = values.data() + values.size() - n;
    for (std::size_t k = 0; k < n; ++k) dst[k] += values_[idx * n + k];
  }
  auto table = std::make_shared<const CellTable>(resolution_log2_, std::move(unique));
  return CellFunction(std::move(table), std::move(values));
}

CellFunction operator+(const CellFunction& f, const CellFunction& g) {
  return combine(f, g, [](Complex a, Complex b) { return a + b; });
}

CellFunction operator-(const CellFunction& f, const CellFunction& g) {
  return combine(f, g, [](Complex a, Complex b) { return a - b; });
}

CellFunction operator*(Complex scalar, const CellFunction& f) {
  std::vector<Complex> out(f.values().begin(), f.values().end());
  for (auto& v : out) v *= scalar;
  return CellFunction(f.table(), std::move(out));
}

double lp_norm_pow(const CellFunction& f, double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "lp_norm requires p >= 1");
  detail::CompensatedSum sum;
  for (const auto& v : f.values()) sum.add(detail::abs_pow(std::abs(v), p));
  return std::ldexp(sum.value(), -f.resolution_log2());
}

double lp_norm(const CellFunction& f, double p) { return std::pow(lp_norm_pow(f, p), 1.0 / p); }

double max_abs_difference(const CellFunction& f, const CellFunction& g) {
  const CellFunction d = f - g;
  double m = 0.0;
  for (const auto& v : d.values()) m = std::max(m, std::abs(v));
  return m;
}

CellFunction translate(const CellFunction& f, const BigInt& shift) {
  std::vector<BigInt> cells;
  cells.reserve(f.piece_count());
  for (const auto& c : f.table()->cells()) cells.push_back(c + shift);
  auto table = std::make_shared<const CellTable>(f.resolution_log2(), std::move(cells));
  return CellFunction(std::move(table), std::vector<Complex>(f.values().begin(), f.values().end()));
}

double fractional_product(const BigInt& n, double s) {
  if (s == 0.0 || n == 0) return 0.0;
  int exponent = 0;
  const double mantissa = std::frexp(s, &exponent);
  const auto digits = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  const int shift = 53 - exponent;  // s = digits * 2^-shift
  if (shift <= 0) return 0.0;
  const BigInt modulus = BigInt(1) << shift;
  BigInt r = (n * digits) % modulus;
  if (r < 0) r += modulus;
  // r < 2^shift; keep the leading 64 bits for the conversion.
  const int drop = std::max(0, shift - 64);
  const BigInt top = r >> drop;
  return std::ldexp(top.convert_to<double>(), -(shift - drop));
}

std::vector<Complex> cell_phases(const BigInt& n, double s, int resolution_log2) {
  const std::size_t count = std::size_t{1} << resolution_log2;
  std::vector<Complex> out(count, Complex(1.0));
  if (s == 0.0) return out;
  const double base = fractional_product(n, s);
  for (std::size_t k = 0; k < count; ++k) {
    const double local = s * std::ldexp(static_cast<double>(k) + 0.5, -resolution_log2);
    double phase = base + local;
    phase -= std::floor(phase);
    out[k] = std::polar(1.0, kTwoPi * phase);
  }
  return out;
}

CellFunction modulate(const CellFunction& f, double s) {
  if (!(std::abs(s) < std::ldexp(0.5, f.resolution_log2()))) {
    throw Error(ErrorCode::AliasedFrequency, "frequency exceeds the cell resolution Nyquist bound");
  }
  if (s == 0.0) return f;
  std::vector<Complex> out(f.values().begin(), f.values().end());
  const std::size_t n = f.cell_size();
  for (std::size_t slot = 0; slot < f.piece_count(); ++slot) {
    const auto phases = cell_phases(f.table()->cell(slot), s, f.resolution_log2());
    for (std::size_t k = 0; k < n; ++k) out[slot * n + k] *= phases[k];
  }
  return CellFunction(f.table(), std::move(out));
}

}  // namespace gaborlab
