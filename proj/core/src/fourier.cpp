#include "gaborlab/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fftw3.h>

#include "gaborlab/error.hpp"
#include "gaborlab/random.hpp"

namespace gaborlab {

namespace {

constexpr int kCorpusStepLog2 = 4;
constexpr double kCorpusSpan = 8.0;

// Thin owner of a one-dimensional FFTW plan; std::complex<double> is layout
// compatible with fftw_complex.
class Transform {
 public:
  Transform(std::size_t n, int sign) : n_(n), in_(n), out_(n) {
    plan_ = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(in_.data()),
                             reinterpret_cast<fftw_complex*>(out_.data()), sign, FFTW_ESTIMATE);
  }
  ~Transform() { fftw_destroy_plan(plan_); }
  Transform(const Transform&) = delete;
  Transform& operator=(const Transform&) = delete;

  const std::vector<Complex>& run(std::span<const Complex> input) {
    std::copy(input.begin(), input.end(), in_.begin());
    fftw_execute(plan_);
    return out_;
  }

 private:
  std::size_t n_;
  std::vector<Complex> in_;
  std::vector<Complex> out_;
  fftw_plan plan_;
};

std::vector<Complex> masked_inverse(Transform& inverse, const std::vector<Complex>& spectrum,
                                    const std::vector<double>& freqs, const FrequencyInterval& I) {
  std::vector<Complex> masked(spectrum.size());
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    if (I.contains(freqs[k])) masked[k] = spectrum[k];
  }
  std::vector<Complex> out = inverse.run(masked);
  const double scale = 1.0 / static_cast<double>(spectrum.size());
  for (auto& v : out) v *= scale;
  return out;
}

}  // namespace

FrequencyInterval::FrequencyInterval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "frequency interval needs lo < hi");
}

std::vector<double> bin_frequencies(const Grid& grid) {
  const std::size_t n = grid.count();
  const double span = grid.span();
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto signed_k = k < (n + 1) / 2 ? static_cast<double>(k)
                                          : static_cast<double>(k) - static_cast<double>(n);
    out[k] = signed_k / span;
  }
  // With even n the bin n/2 aliases +-N/(2L); keep it at the negative end.
  return out;
}

SampledFunction partial_sum(const SampledFunction& f, const FrequencyInterval& I) {
  const std::size_t n = f.size();
  Transform forward(n, FFTW_FORWARD);
  Transform inverse(n, FFTW_BACKWARD);
  // Midpoint samples x_j = origin + (j + 1/2) h carry the phase of the bin
  // k/L as e^{2 pi i k j / N} times a constant, so the plain DFT diagonalizes
  // every tone on the grid.
  const std::vector<Complex> spectrum = forward.run(f.values());
  return SampledFunction(f.grid(), masked_inverse(inverse, spectrum, bin_frequencies(f.grid()), I));
}

double rdf_square_norm(const SampledFunction& f, const std::vector<FrequencyInterval>& intervals,
                       double p) {
  if (!(p >= 2.0)) throw Error(ErrorCode::InvalidArgument, "rdf_square_norm needs p >= 2");
  std::vector<FrequencyInterval> sorted(intervals);
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i - 1].hi > sorted[i].lo) {
      throw Error(ErrorCode::OverlappingIntervals, "square function needs disjoint intervals");
    }
  }
  const std::size_t n = f.size();
  Transform forward(n, FFTW_FORWARD);
  Transform inverse(n, FFTW_BACKWARD);
  const std::vector<Complex> spectrum = forward.run(f.values());
  const auto freqs = bin_frequencies(f.grid());
  std::vector<double> square(n, 0.0);
  for (const auto& I : intervals) {
    const auto piece = masked_inverse(inverse, spectrum, freqs, I);
    for (std::size_t i = 0; i < n; ++i) square[i] += std::norm(piece[i]);
  }
  std::vector<Complex> root(n);
  for (std::size_t i = 0; i < n; ++i) root[i] = std::sqrt(square[i]);
  return lp_norm(SampledFunction(f.grid(), std::move(root)), p);
}

std::vector<std::vector<std::size_t>> overlapping_family_split(
    const std::vector<FrequencyInterval>& intervals) {
  std::vector<std::size_t> order(intervals.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return intervals[a].lo < intervals[b].lo; });
  std::vector<std::vector<std::size_t>> classes;
  std::vector<double> class_end;
  for (std::size_t idx : order) {
    std::size_t c = 0;
    while (c < classes.size() && class_end[c] > intervals[idx].lo) ++c;
    if (c == classes.size()) {
      classes.emplace_back();
      class_end.push_back(intervals[idx].hi);
    }
    classes[c].push_back(idx);
    class_end[c] = intervals[idx].hi;
  }
  return classes;
}

std::vector<FrequencyInterval> equal_length_partition(const Grid& grid, double d, double offset) {
  if (!(d > 0.0)) throw Error(ErrorCode::InvalidArgument, "interval length must be positive");
  const auto freqs = bin_frequencies(grid);
  const auto [lo_it, hi_it] = std::minmax_element(freqs.begin(), freqs.end());
  const double first = offset + std::floor((*lo_it - offset) / d) * d;
  std::vector<FrequencyInterval> out;
  for (double a = first; a <= *hi_it; a += d) out.emplace_back(a, a + d);
  return out;
}

SampledFunction random_corpus_function(std::mt19937_64& eng) {
  const Grid grid = Grid::covering(0.0, kCorpusSpan, kCorpusStepLog2);
  std::vector<Complex> values;
  for (std::size_t i = 0; i < grid.count(); ++i) values.push_back(rng::complex_box(eng));
  SampledFunction f(grid, std::move(values));
  const int tones = rng::uniform_int(eng, 1, 4);
  for (int t = 0; t < tones; ++t) {
    const double s = rng::uniform_int(eng, -60, 60) / kCorpusSpan;
    f = f + rng::uniform(eng, 0.5, 3.0) * modulate(indicator(grid, 0.0, kCorpusSpan), s);
  }
  return f;
}

double corpus_interval_length(std::size_t i) {
  constexpr double lengths[] = {0.5, 1.0, 2.0, 4.0};
  return lengths[i % 4];
}

}  // namespace gaborlab
