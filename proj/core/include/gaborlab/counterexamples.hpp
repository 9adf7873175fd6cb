#pragma once

// Two explicit windows whose Gabor systems are unconditional basic sequences
// but are not equivalent to a subsequence of the unit vector basis of
// l^p(l^2):
//
//  * thm42: g = sum_{k>=1} c_k 2^(k/p) 1_[k, k+2^-k) with the lattice
//    {(2^-j, 2^j)}, 1 <= p < 2.
//  * thm52: g = sum_{k>=0} c_k e_{2^k} 1_[k, k+1) with integer translates,
//    p > 2.
//
// Both are truncated (k <= K, j <= J) and evaluated exactly as step
// functions.  The equivalence constants are unspecified, so verification
// reports observed ratio windows; the CLI freezes those windows in the
// calibration file and re-checks them.

#include <cstdint>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gaborlab/gabor.hpp"
#include "gaborlab/grid.hpp"

namespace gaborlab {

/// Coefficients c_k for k = first_index, first_index + 1, ... and the tail
/// sums w_j = sum_{k>=j} |c_k|^p.
struct WeightSequence {
  int first_index = 1;
  std::vector<Complex> c;
  std::vector<double> w;

  Complex coefficient(int k) const;  // 0 outside the stored range
  double tail(int j) const;          // w_j; 0 past the end
  int last_index() const { return first_index + static_cast<int>(c.size()) - 1; }

  /// Computes w from c for the exponent p.
  static WeightSequence from_coefficients(std::vector<Complex> c, double p, int first_index);
  /// c_k = (w_k - w_{k+1})^(1/p) for k < K and c_K = w_K^(1/p), so the
  /// truncated sequence keeps sum |c_k|^p = w_1.  w must be non-increasing
  /// and positive.
  static WeightSequence from_tail_weights(const std::vector<double>& w, double p);
};

/// w_j = j^(-alpha), j = 1..count.
std::vector<double> power_law_weights(int count, double alpha);

// --- thm42 ------------------------------------------------------------------

/// g = sum_{k<=K} c_k 2^(k/p) 1_[k, k+2^-k) on `grid`.  GridTooCoarse when
/// the step exceeds 2^-K.
SampledFunction thm42_window(const WeightSequence& c, const Exponent& p, int K, const Grid& grid);

/// (2^-j, 2^j), j = 1..J.
std::vector<TimeFreqPoint> thm42_lattice(int J);

/// (sum_j |a_j|^p w_j)^(1/p) + (sum_j |a_j|^2)^(1/2) with a_j = a[j-1].
double thm42_predicted_norm(const std::vector<Complex>& a, const WeightSequence& c, const Exponent& p);

/// |c_k|^p { sum_{j<=k} |a_j|^p + (sum_{j>k} |a_j|^2)^(p/2) }.
double thm42_cell_prediction(const std::vector<Complex>& a, const WeightSequence& c,
                             const Exponent& p, int k);

/// Gabor system of the truncated thm42 window and lattice on a grid of step
/// 2^-max(J+6, K) that covers every atom.
GaborSystem thm42_system(const WeightSequence& c, const Exponent& p, int K, int J);

/// One of the three interval families inside [k, k+1], in exact dyadic
/// ticks of 2^-resolution_log2 relative to k.  Tails l >= J are merged into
/// one interval per family since a_j = 0 for j > J.
struct IntervalPiece {
  int type = 1;      // 1, 2 or 3
  int l = 0;         // family parameter (the merged tail uses l = J)
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

std::vector<IntervalPiece> thm42_intervals(int k, int J, int resolution_log2);

struct CellDecomposition {
  int k = 0;
  double cell_norm_pow = 0.0;                 // ||Phi_a|_[k,k+1]||_p^p
  double type_sum[3] = {0.0, 0.0, 0.0};       // contributions (1), (2), (3)
  double type1_closed_form = 0.0;             // |c_k|^p sum_{j<k} |a_j|^p
  bool disjoint = false;
  bool covers_support = false;
  double prediction = 0.0;                    // thm42_cell_prediction
};

/// Splits Phi_a on [k, k+1] along thm42_intervals and checks disjointness
/// and cover exactly on the tick grid.
CellDecomposition thm42_decompose(const SampledFunction& phi, const std::vector<Complex>& a,
                                  const WeightSequence& c, const Exponent& p, int k, int J);

struct Thm42Trial {
  std::uint64_t trial = 0;
  double computed = 0.0;    // ||Phi_a||_p
  double predicted = 0.0;   // thm42_predicted_norm
  double ratio = 0.0;
};

struct Thm42Report {
  double p = 0.0;
  int J = 0;
  int K = 0;
  int resolution_log2 = 0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double min_cell_ratio = 0.0;   // per-cell ratios over all trials and k
  double max_cell_ratio = 0.0;
  double degenerate_ratio = 0.0;  // a = e_1
  double max_decomposition_error = 0.0;  // relative, over all trials and k
  double max_type1_error = 0.0;
  bool intervals_disjoint = true;
  bool intervals_cover = true;
  std::vector<Thm42Trial> trials;
};

/// Random a in the complex unit box, a_j for j = 1..J, trial t seeded by
/// (seed, t).
Thm42Report thm42_verify(const WeightSequence& c, const Exponent& p, int J, int K, int trials,
                         std::uint64_t seed);

/// (sum_{j<=n} w_j) / n^(p/2) for n = 1..n_max, with w_j = j^(-alpha).
std::vector<double> thm42_growth_profile(double alpha, double p, int n_max);

/// Demo weights: w_j = j^(-0.1).
inline constexpr double kThm42Alpha = 0.1;

// --- thm52 ------------------------------------------------------------------

/// g = sum_{k<=K} c_k e_{2^k} 1_[k, k+1) on `grid` (c indexed from 0).
/// AliasedFrequency when 2^K is not below the grid Nyquist bound.
SampledFunction thm52_window(const WeightSequence& c, const Exponent& p, int K, const Grid& grid);

/// sum_{l>=1} (sum_{k=0}^{min(l-1,K)} |a_{l-k}|^2 |c_k|^2)^(p/2), a_j = a[j-1].
double thm52_predicted_pow(const std::vector<Complex>& a, const WeightSequence& c, const Exponent& p);

/// c_k proportional to (k+1)^(-beta) for k = 0..K, normalized so that
/// sum |c_k|^p = 1.
WeightSequence thm52_truncated_weights(int K, double beta, double p);

/// Exponent of the divergent surrogate: sum (k+1)^(-p beta) converges for
/// p = 4 while sum (k+1)^(-2 beta) diverges.
inline constexpr double kThm52Beta = 0.4;

/// sum_{l<=n} (sum_{k<l} |c_k|^2)^(p/2) / n for the infinite sequence
/// c_k = (k+1)^(-beta) / zeta(p beta)^(1/p), n = 1..n_max.
std::vector<double> thm52_growth_profile(double beta, double p, int n_max);

struct Thm52Trial {
  std::uint64_t trial = 0;
  double computed_pow = 0.0;   // ||Phi_a||_p^p
  double predicted_pow = 0.0;
  double ratio = 0.0;
};

struct Thm52Report {
  double p = 0.0;
  int K = 0;
  int length = 0;              // number of coefficients a_1..a_n
  int resolution_log2 = 0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double degenerate_ratio = 0.0;   // a = e_1
  int growth_crossing = 0;         // first n with growth ratio > 2, 0 if none
  double growth_at_crossing = 0.0;
  int separation = 0;              // M
  int separated_count = 0;         // n in the footnote test
  double separated_norm = 0.0;     // ||sum_j g(x - M j)||_p
  double separated_bound = 0.0;    // 2 n^(1/p)
  std::vector<Thm52Trial> trials;
};

/// Integer-translate system {g(x - j)}, j = 1..length, on a grid of step
/// 2^-(K+6).  growth_scan bounds the n* search.
Thm52Report thm52_verify(const WeightSequence& c, const Exponent& p, int K, int length, int trials,
                         std::uint64_t seed, int growth_scan = 1 << 16, int separated_count = 8);

nlohmann::json to_json(const Thm42Report& r);
nlohmann::json to_json(const Thm52Report& r);

}  // namespace gaborlab
