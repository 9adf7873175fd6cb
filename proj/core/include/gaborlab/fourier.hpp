#pragma once

// Fourier partial sums Delta_I and the Rubio de Francia square function,
// realized on the circle whose circumference is the grid span L.  The
// discrete frequencies are k/L for k in [-N/2, N/2); a tone e_s with s = k/L
// sits exactly on one bin.  Intervals are half-open: lo <= xi < hi.

#include <cstddef>
#include <random>
#include <vector>

#include "gaborlab/grid.hpp"

namespace gaborlab {

struct FrequencyInterval {
  double lo = 0.0;
  double hi = 0.0;

  FrequencyInterval() = default;
  /// InvalidArgument unless lo < hi.
  FrequencyInterval(double lo, double hi);

  bool contains(double xi) const noexcept { return lo <= xi && xi < hi; }
};

/// Frequencies k/L of the DFT bins of the grid, in FFT order.
std::vector<double> bin_frequencies(const Grid& grid);

/// Inverse transform of f^ restricted to the bins inside I.
SampledFunction partial_sum(const SampledFunction& f, const FrequencyInterval& I);

/// ||(sum_k |Delta_{I_k} f|^2)^(1/2)||_p.  OverlappingIntervals unless the
/// intervals are pairwise disjoint; InvalidArgument for p < 2.
double rdf_square_norm(const SampledFunction& f, const std::vector<FrequencyInterval>& intervals,
                       double p);

/// Greedy colouring of the overlap graph: intervals sorted by lo, each put in
/// the first class whose last interval ends at or before it starts.  Optimal
/// for interval graphs.  Returns indices into `intervals`.
std::vector<std::vector<std::size_t>> overlapping_family_split(
    const std::vector<FrequencyInterval>& intervals);

/// Consecutive intervals [offset + k d, offset + (k+1) d) covering the whole
/// discrete spectrum of the grid.
std::vector<FrequencyInterval> equal_length_partition(const Grid& grid, double d, double offset = 0.0);

/// Random complex step function on [0, 8) at step 2^-4 with a random
/// band-limited tone mixture added; used by the RdF regression corpus.
SampledFunction random_corpus_function(std::mt19937_64& eng);

/// Interval length for corpus element i: cycles through 1/2, 1, 2, 4.
double corpus_interval_length(std::size_t i);

}  // namespace gaborlab
