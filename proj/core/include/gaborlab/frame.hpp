#pragma once

// Constructive unconditional approximate Schauder frame of Gabor atoms in
// L^p(R), p > 2.
//
// Pipeline: plan_blocks -> select_translates -> build_frame (window, coordinate
// functionals, synthesis tables) -> frame_operator / invert_neumann /
// reconstruct.
//
// Finite model.  Block k pairs N_k selected points with one Haar atom h_k on
// cell 0 (the first K atoms of the cell-0 enumeration).  V = span{h_1..h_K}.
// For f in V the frame operator splits exactly as S f = f + E f, where the
// error term E f lives on the far cells supp(h_k) + t_j - t_i, which the
// coordinate functionals never read.  Haar atoms outside the plan behave as
// blocks of unbounded size, i.e. they reproduce themselves with no error term;
// this is the operator S~ = (I - P_V) + S P_V used by the Neumann inversion.
// ||S~ - I|| <= q holds on V with q = K_p (sum N_k^(1-p/2))^(2/p).

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gaborlab/cells.hpp"
#include "gaborlab/grid.hpp"
#include "gaborlab/haar.hpp"

namespace gaborlab {

/// Time-frequency point with an exact integer time shift.
struct FramePoint {
  BigInt t;
  double s = 0.0;
};

class BlockPlan {
 public:
  /// Validates p > 2 and the strict block condition
  /// sum_k N_k^(1-p/2) < (2 K_p)^(-p/2) with K_p = p - 1.
  BlockPlan(const Exponent& p, std::vector<std::int64_t> sizes);

  const Exponent& exponent() const noexcept { return p_; }
  double k_p() const noexcept { return k_p_; }
  const std::vector<std::int64_t>& sizes() const noexcept { return sizes_; }
  std::size_t num_blocks() const noexcept { return sizes_.size(); }
  std::size_t total_points() const noexcept { return total_; }
  /// First selection index of block k (0-based; block k covers
  /// [block_start(k), block_start(k) + N_k)).
  std::size_t block_start(std::size_t k) const { return starts_[k]; }
  std::size_t block_of(std::size_t i) const;

  /// sum_k N_k^(1-p/2).
  double block_sum() const noexcept { return block_sum_; }
  /// (2 K_p)^(-p/2).
  double threshold() const noexcept { return threshold_; }

 private:
  Exponent p_;
  double k_p_;
  std::vector<std::int64_t> sizes_;
  std::vector<std::size_t> starts_;
  std::size_t total_ = 0;
  double block_sum_ = 0.0;
  double threshold_ = 0.0;
};

/// N_k = ceil(N_1 growth^(k-1)) with the smallest N_1 <= 10^6 that satisfies
/// the block condition.
BlockPlan plan_blocks(const Exponent& p, int num_blocks, double growth);

/// q = K_p (sum N_k^(1-p/2))^(2/p).
double error_bound(const BlockPlan& plan);

/// h_1..h_K: the first K Haar atoms on cell 0 in enumeration order.
std::vector<HaarIndex> block_haar_atoms(std::size_t num_blocks);
/// Smallest resolution that resolves block_haar_atoms(num_blocks).
int required_resolution(std::size_t num_blocks);
// also leaves every selected frequency strictly below the cell Nyquist bound
int required_resolution(std::size_t num_blocks, const std::vector<FramePoint>& points);

struct DisjointnessCertificate {
  bool passed = false;
  std::size_t sets_checked = 0;          // |Q| = T(T-1)
  std::size_t shared_cells = 0;          // E-sets sharing a unit cell
  bool window_summands_disjoint = false;
};

struct TranslateSelection {
  std::vector<FramePoint> points;        // (t_i, s_i), i = 0..T-1
  std::vector<std::size_t> block;        // k(i)
  double growth_factor = 4.0;            // accepted iff |t| >= G |t_prev| + G
  DisjointnessCertificate certificate;
};

/// Exact check that the sets E(i,k,j,l) = supp(h_k) + t_j - t_i, i != j, are
/// pairwise disjoint, and that the window summands supp(h_k) - t_i are too.
DisjointnessCertificate certify_disjointness(const std::vector<FramePoint>& points,
                                             const BlockPlan& plan);

/// Greedy selection by increasing |t| under the growth rule
/// |t| >= 4 |t_prev| + 4, retried with stricter growth if the certificate
/// fails.  InsufficientSpread when Lambda cannot supply the plan.
TranslateSelection select_translates(const std::vector<FramePoint>& lambda,
                                     const BlockPlan& plan);

/// t_n = (-1)^(n+1) ratio^n with frequencies cycling through `frequencies`.
std::vector<FramePoint> geometric_spread(std::size_t count, std::int64_t ratio,
                                         const std::vector<double>& frequencies = {0.0});

/// g = sum_k sum_{i in J_k} N_k^(-1/2) tau_{-t_i}(e_{-s_i} h_k).  GridTooSmall
/// if the resolution does not resolve the Haar atoms.
CellFunction build_window(const BlockPlan& plan, const TranslateSelection& selection,
                          int resolution_log2);

class ConstructedFrame {
 public:
  ConstructedFrame(BlockPlan plan, TranslateSelection selection, int resolution_log2);

  const BlockPlan& plan() const noexcept { return plan_; }
  const TranslateSelection& selection() const noexcept { return selection_; }
  const std::vector<HaarIndex>& haar_atoms() const noexcept { return haar_; }
  int resolution_log2() const noexcept { return resolution_log2_; }
  const CellFunction& window() const noexcept { return window_; }
  double q() const noexcept { return q_; }

  /// Coefficient of the functional attached to selected point j:
  /// g*_j = functional_scale(j) * h*_{k(j)}.
  double functional_scale(std::size_t j) const;

  /// Haar functionals h*_l(f), l = 1..K, read from cell 0.
  std::vector<Complex> haar_coefficients(const CellFunction& f) const;
  /// P_V f.
  CellFunction project(const CellFunction& f) const;
  /// An element of V on the frame's shared cell table.
  CellFunction span_element(const std::vector<Complex>& coefficients) const;
  /// Random element of V with coefficients in the unit complex box.
  CellFunction random_span_element(std::mt19937_64& eng) const;

  /// Shared table of every cell touched by the atoms e_{s_j} tau_{t_j} g.
  const std::shared_ptr<const CellTable>& atom_table() const noexcept { return table_; }
  /// sum_j c_j e_{s_j} tau_{t_j} g for per-point coefficients c_j.
  CellFunction synthesize(const std::vector<Complex>& coefficients) const;
  /// g*_j(f) for every selected point.
  std::vector<Complex> analyze(const CellFunction& f) const;

 private:
  struct AtomPiece {
    std::uint32_t slot;
    std::uint32_t source;  // index i of the window summand
  };

  BlockPlan plan_;
  TranslateSelection selection_;
  std::vector<HaarIndex> haar_;
  int resolution_log2_;
  CellFunction window_;
  double q_;
  std::vector<std::vector<Complex>> modulated_haar_;  // e_{-s_i} h_{k(i)} on cell 0, scaled
  std::shared_ptr<const CellTable> table_;
  std::size_t zero_slot_ = 0;
  std::vector<std::vector<AtomPiece>> pieces_;        // per point j
  std::vector<std::vector<Complex>> piece_values_;    // per point j, flattened
};

struct FrameApplication {
  CellFunction image;
  double projection_residual = 0.0;  // ||f - P_V f||_p
};

/// S f = sum_j g*_j(P_V f) e_{s_j} tau_{t_j} g, computed from atoms and
/// functionals.  f is projected onto V first.
FrameApplication frame_operator(const ConstructedFrame& frame, const SampledFunction& f);
CellFunction frame_operator(const ConstructedFrame& frame, const CellFunction& f);
/// S~ y = (y - P_V y) + S P_V y.
CellFunction extended_frame_operator(const ConstructedFrame& frame, const CellFunction& y);

/// sum_k sum_{i in J_k} N_k^-1 h*_k(f) h_k.
CellFunction main_term(const ConstructedFrame& frame, const CellFunction& f);
/// sum over quadruples (i,k,j,l), i != j, of
/// N_k^-1/2 N_l^-1/2 h*_l(f) e_{s_j} tau_{t_j} tau_{-t_i}(e_{-s_i} h_k),
/// evaluated term by term.
CellFunction error_term(const ConstructedFrame& frame, const CellFunction& f);

struct NeumannResult {
  CellFunction solution;
  int iterations = 0;
  int iteration_limit = 0;
  double relative_residual = 0.0;  // ||S~ y - f|| / ||f||
};

/// ceil(log tol / log q) + 1.
int neumann_iteration_limit(double q, double tol);

/// y_{n+1} = f + (I - S~) y_n from y_0 = f until ||S~ y - f|| <= tol ||f||.
NeumannResult invert_neumann(const ConstructedFrame& frame, const CellFunction& f, double tol);

struct Reconstruction {
  CellFunction approximation;
  double relative_error = 0.0;
  std::vector<Complex> coefficients;  // g*_j(S~^-1 f)
  CellFunction far_field;             // (I - P_V) S~^-1 f
  int iterations = 0;
};

/// Expansion of f through the corrected functionals g*_j(S~^-1 .).
Reconstruction reconstruct(const ConstructedFrame& frame, const CellFunction& f, double tol);

/// Largest ||sum_j theta_j c_j u_j + far_field||_p over `patterns` seeded
/// sign patterns, evaluated directly.
double reconstruction_sign_flip_max(const ConstructedFrame& frame, const Reconstruction& rec,
                                    int patterns, std::uint64_t seed);

nlohmann::json frame_to_json(const ConstructedFrame& frame);
ConstructedFrame frame_from_json(const nlohmann::json& j);
nlohmann::json frame_points_to_json(const std::vector<FramePoint>& points);
std::vector<FramePoint> frame_points_from_json(const nlohmann::json& j);

}  // namespace gaborlab
