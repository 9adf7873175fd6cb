#pragma once

// Step functions supported on finitely many unit cells [n, n+1) of R, where
// n is an arbitrary-precision integer.  Each occupied cell carries 2^m values
// (resolution 2^-m).  The frame construction shifts by integers far beyond
// double range, so cell positions are exact big integers.
//
// Cell tables are shared between functions: arithmetic on two functions with
// the same table is elementwise, otherwise the tables are merged.

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gaborlab/grid.hpp"

namespace gaborlab {

using BigInt = boost::multiprecision::cpp_int;

/// Sorted, duplicate-free list of occupied cells at a fixed resolution.
class CellTable {
 public:
  CellTable(int resolution_log2, std::vector<BigInt> sorted_cells);

  int resolution_log2() const noexcept { return resolution_log2_; }
  std::size_t cell_size() const noexcept { return std::size_t{1} << resolution_log2_; }
  std::size_t size() const noexcept { return cells_.size(); }
  const BigInt& cell(std::size_t slot) const { return cells_[slot]; }
  const std::vector<BigInt>& cells() const noexcept { return cells_; }

  /// Slot of `cell`, or size() when absent.
  std::size_t find(const BigInt& cell) const;

 private:
  int resolution_log2_;
  std::vector<BigInt> cells_;
};

class CellFunction {
 public:
  /// The zero function at the given resolution.
  explicit CellFunction(int resolution_log2);
  CellFunction(std::shared_ptr<const CellTable> table, std::vector<Complex> values);

  int resolution_log2() const noexcept { return table_->resolution_log2(); }
  std::size_t cell_size() const noexcept { return table_->cell_size(); }
  const std::shared_ptr<const CellTable>& table() const noexcept { return table_; }
  std::span<const Complex> values() const noexcept { return values_; }
  std::span<const Complex> piece(std::size_t slot) const;
  std::size_t piece_count() const noexcept { return table_->size(); }

  /// Values on [cell, cell+1); all zeros when the cell is not occupied.
  std::vector<Complex> cell_values(const BigInt& cell) const;

  /// Sampled view of [first, last) for small cell indices.
  SampledFunction to_sampled(std::int64_t first, std::int64_t last) const;
  /// Requires an integer grid origin, whole cells, and step 2^-resolution.
  static CellFunction from_sampled(const SampledFunction& f);

  /// Re-expresses the function on a table that contains all of its cells.
  CellFunction on_table(std::shared_ptr<const CellTable> table) const;

 private:
  std::shared_ptr<const CellTable> table_;
  std::vector<Complex> values_;
};

/// Collects pieces in any order; pieces on the same cell are summed.
class CellFunctionBuilder {
 public:
  explicit CellFunctionBuilder(int resolution_log2);
  void add(BigInt cell, std::span<const Complex> values, Complex weight = 1.0);
  CellFunction finish() &&;

 private:
  int resolution_log2_;
  std::vector<BigInt> cells_;
  std::vector<Complex> values_;
};

CellFunction operator+(const CellFunction& f, const CellFunction& g);
CellFunction operator-(const CellFunction& f, const CellFunction& g);
CellFunction operator*(Complex scalar, const CellFunction& f);

double lp_norm_pow(const CellFunction& f, double p);
double lp_norm(const CellFunction& f, double p);
double max_abs_difference(const CellFunction& f, const CellFunction& g);

/// Shift by an integer number of units.
CellFunction translate(const CellFunction& f, const BigInt& shift);
/// Multiplies by e^{2 pi i s x} at cell midpoints; the phase of the huge
/// integer part of x is reduced exactly.  |s| < 2^(m-1).
CellFunction modulate(const CellFunction& f, double s);

/// frac(n * s) in [0, 1), computed exactly from the binary expansion of s.
double fractional_product(const BigInt& n, double s);

/// Phase factors e^{2 pi i s x_k} for the midpoints x_k of cell n at
/// resolution 2^-m.
std::vector<Complex> cell_phases(const BigInt& n, double s, int resolution_log2);

}  // namespace gaborlab
