#include <doctest.h>

#include <cmath>

#include "gaborlab/counterexamples.hpp"
#include "gaborlab/random.hpp"
#include "support/oracles.hpp"
#include "support/testing.hpp"

using namespace gaborlab;
using testing::error_of;

namespace {

WeightSequence demo42(double p, int K) {
  return WeightSequence::from_tail_weights(power_law_weights(K, kThm42Alpha), p);
}

// Phi_a(x) = sum_j a_j e^{2 pi i 2^j x} g(x - 2^-j), g = sum_k c_k 2^(k/p) 1_[k, k+2^-k).
Complex phi42(const std::vector<Complex>& a, const WeightSequence& c, double p, int K, double x) {
  Complex out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int j = static_cast<int>(i) + 1;
    const double y = x - std::ldexp(1.0, -j);
    Complex g = 0.0;
    for (int k = 1; k <= K; ++k) {
      if (y >= k && y < k + std::ldexp(1.0, -k)) g = c.coefficient(k) * std::pow(2.0, k / p);
    }
    out += a[i] * std::polar(1.0, 2.0 * oracle::kPi * std::ldexp(1.0, j) * x) * g;
  }
  return out;
}

}  // namespace

TEST_CASE("weight sequences") {
  const auto w = WeightSequence::from_tail_weights({1.0, 0.5, 0.25}, 2.0);
  CHECK(w.coefficient(1).real() == doctest::Approx(std::sqrt(0.5)));
  CHECK(w.coefficient(2).real() == doctest::Approx(0.5));
  CHECK(w.coefficient(3).real() == doctest::Approx(0.5));
  CHECK(w.coefficient(4) == Complex{});
  CHECK(w.tail(2) == 0.5);
  CHECK(w.tail(9) == 0.0);
  CHECK(error_of([] { (void)WeightSequence::from_tail_weights({0.5, 1.0}, 2.0); }) == ErrorCode::InvalidArgument);

  const auto v = WeightSequence::from_coefficients({2.0, Complex(0, 1)}, 3.0, 0);
  CHECK(v.tail(0) == doctest::Approx(9.0));
  CHECK(v.tail(1) == doctest::Approx(1.0));
  CHECK(v.last_index() == 1);

  const auto pw = power_law_weights(4, 0.5);
  CHECK(pw[3] == doctest::Approx(0.5));
}

TEST_CASE("thm42 window and lattice") {
  const Exponent p(1.5);
  const auto c = demo42(1.5, 4);
  const Grid grid = Grid::covering(1.0, 5.0, 4);
  const auto g = thm42_window(c, p, 4, grid);
  // ||g||_p^p = sum |c_k|^p 2^k 2^-k = w_1 = 1
  CHECK(lp_norm_pow(g, 1.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(wiener_norm(g) == doctest::Approx(std::abs(c.coefficient(1)) * std::pow(2.0, 1 / 1.5) +
                                          std::abs(c.coefficient(2)) * std::pow(2.0, 2 / 1.5) +
                                          std::abs(c.coefficient(3)) * std::pow(2.0, 3 / 1.5) +
                                          std::abs(c.coefficient(4)) * std::pow(2.0, 4 / 1.5)));
  CHECK(error_of([&] { (void)thm42_window(c, p, 4, Grid::covering(1.0, 5.0, 3)); }) == ErrorCode::GridTooCoarse);
  const auto lat = thm42_lattice(3);
  REQUIRE(lat.size() == 3);
  CHECK(lat[2].t == 0.125);
  CHECK(lat[2].s == 8.0);
}

TEST_CASE("thm42 interval families for k = 3, J = 5") {
  const auto pieces = thm42_intervals(3, 5, 8);  // ticks of 2^-8
  CHECK(pieces.size() == 8);
  std::vector<int> covered(256, 0);
  for (const auto& pc : pieces) {
    for (auto t = pc.lo; t < pc.hi; ++t) ++covered[static_cast<std::size_t>(t)];
  }
  int measure = 0;
  for (int v : covered) {
    CHECK(v <= 1);
    measure += v;
  }
  // [0, 1/4) from types 2 and 3 plus [1/4, 3/8) and [1/2, 5/8) from type 1
  CHECK(measure == 128);
  CHECK(covered[64] == 1);
  CHECK(covered[96] == 0);
  CHECK(covered[128] == 1);
  CHECK(covered[160] == 0);
  CHECK(error_of([] { (void)thm42_intervals(3, 5, 2); }) == ErrorCode::GridTooCoarse);
}

TEST_CASE("thm42 norms against pointwise evaluation") {
  const Exponent p(1.5);
  const int J = 5, K = 5;
  const auto c = demo42(1.5, K);
  const auto sys = thm42_system(c, p, K, J);
  const Grid& grid = sys.grid();
  CHECK(grid.step_log2() == J + 6);
  for (std::uint64_t trial = 0; trial < 4; ++trial) {
    auto eng = rng::trial_engine(4242, 1, trial);
    std::vector<Complex> a(J);
    CoefficientMap map;
    for (int j = 0; j < J; ++j) {
      a[j] = rng::complex_box(eng);
      map[sys.points()[j]] = a[j];
    }
    const auto phi = synthesize(sys, map);
    const double direct = oracle::integrate_pow([&](double x) { return phi42(a, c, 1.5, K, x); }, grid.origin(),
                                                grid.end(), grid.step(), 1.5);
    CHECK(lp_norm_pow(phi, 1.5) == doctest::Approx(direct).epsilon(1e-11));

    for (int k = 1; k <= K; ++k) {
      const auto d = thm42_decompose(phi, a, c, p, k, J);
      CHECK(d.disjoint);
      CHECK(d.covers_support);
      const double cell = oracle::integrate_pow([&](double x) { return phi42(a, c, 1.5, K, x); }, k, k + 1.0,
                                                grid.step(), 1.5);
      CHECK(d.cell_norm_pow == doctest::Approx(cell).epsilon(1e-11));
      CHECK(d.type_sum[0] + d.type_sum[1] + d.type_sum[2] == doctest::Approx(cell).epsilon(1e-12));
      CHECK(d.type_sum[0] == doctest::Approx(d.type1_closed_form).epsilon(1e-12));
    }
  }
}

TEST_CASE("thm42 predicted norm") {
  const auto c = WeightSequence::from_tail_weights({1.0, 0.5}, 2.0);
  const std::vector<Complex> a = {3.0, Complex(0, 4)};
  // (9 * 1 + 16 * 0.5)^(1/2) + 5
  CHECK(thm42_predicted_norm(a, c, Exponent(2.0)) == doctest::Approx(std::sqrt(17.0) + 5.0));
  // k = 1: |c_1|^2 (9 + 16)
  CHECK(thm42_cell_prediction(a, c, Exponent(2.0), 1) == doctest::Approx(0.5 * 25.0));
}

TEST_CASE("thm42 verification report") {
  const auto c = demo42(1.5, 6);
  const auto r = thm42_verify(c, Exponent(1.5), 6, 6, 30, 99);
  CHECK(r.trials.size() == 30);
  CHECK(r.intervals_disjoint);
  CHECK(r.intervals_cover);
  CHECK(r.max_decomposition_error < 1e-12);
  CHECK(r.max_type1_error < 1e-12);
  // a = e_1: ||g||_p = w_1^(1/p) = 1 against 1 + 1
  CHECK(r.degenerate_ratio == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(r.min_ratio > 0.0);
  CHECK(r.min_ratio <= r.max_ratio);
  const auto again = thm42_verify(c, Exponent(1.5), 6, 6, 30, 99);
  CHECK(again.max_ratio == r.max_ratio);
  CHECK(again.min_cell_ratio == r.min_cell_ratio);
}

TEST_CASE("thm42 growth profile") {
  const auto g = thm42_growth_profile(kThm42Alpha, 1.5, 64);
  CHECK(g.front() == 1.0);
  CHECK(g.back() == doctest::Approx(2.0613307468920388).epsilon(1e-13));
  for (std::size_t n = 1; n < g.size(); ++n) CHECK(g[n] > g[n - 1]);
}

TEST_CASE("thm52 window, prediction and report") {
  const int K = 4;
  const Exponent p(4.0);
  const auto c = thm52_truncated_weights(K, kThm52Beta, 4.0);
  double total = 0.0;
  for (int k = 0; k <= K; ++k) total += std::pow(std::abs(c.coefficient(k)), 4.0);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(c.coefficient(1)) / std::abs(c.coefficient(0)) == doctest::Approx(std::pow(2.0, -0.4)));

  const Grid grid = Grid::covering(0.0, K + 1.0, K + 6);
  const auto g = thm52_window(c, p, K, grid);
  CHECK(lp_norm_pow(g, 4.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(error_of([&] { (void)thm52_window(c, p, K, Grid::covering(0.0, K + 1.0, K)); }) ==
        ErrorCode::AliasedFrequency);

  // synthesis against pointwise evaluation, prediction against its defining sum
  const int n = 5;
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    auto eng = rng::trial_engine(5252, 1, trial);
    std::vector<Complex> a(n);
    for (auto& v : a) v = rng::complex_box(eng);
    const double direct = oracle::integrate_pow(
        [&](double x) {
          Complex v = 0.0;
          for (int j = 1; j <= n; ++j) v += a[j - 1] * oracle::eval(g, x - j);
          return v;
        },
        1.0, n + K + 1.0, grid.step(), 4.0);
    double predicted = 0.0;
    for (int l = 1; l <= n + K; ++l) {
      double inner = 0.0;
      for (int k = 0; k <= K; ++k) {
        const int j = l - k;
        if (j >= 1 && j <= n) inner += std::norm(a[j - 1]) * std::norm(c.coefficient(k));
      }
      predicted += inner * inner;
    }
    CHECK(thm52_predicted_pow(a, c, p) == doctest::Approx(predicted).epsilon(1e-13));
    std::vector<TimeFreqPoint> pts;
    CoefficientMap map;
    for (int j = 1; j <= n; ++j) {
      pts.push_back({static_cast<double>(j), 0.0});
      map[pts.back()] = a[j - 1];
    }
    const auto sys = GaborSystem::with_covering_grid(g, pts);
    CHECK(lp_norm_pow(synthesize(sys, map), 4.0) == doctest::Approx(direct).epsilon(1e-12));
  }

  const auto r = thm52_verify(c, p, K, 6, 20, 3, 64, 8);
  CHECK(r.degenerate_ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.separation == K + 1);
  // disjoint translates: 8^(1/4) ||g||_4
  CHECK(r.separated_norm == doctest::Approx(std::pow(8.0, 0.25)).epsilon(1e-12));
  CHECK(r.separated_norm < r.separated_bound);
  CHECK(r.growth_crossing == 6);
  CHECK(r.trials.size() == 20);
}

TEST_CASE("thm52 growth profile") {
  const auto g = thm52_growth_profile(kThm52Beta, 4.0, 8);
  // n = 1: |c_0|^4 = 1 / zeta(1.6)
  CHECK(g[0] == doctest::Approx(1.0 / 2.2857656656801299).epsilon(1e-13));
  CHECK(g[4] <= 2.0);
  CHECK(g[5] == doctest::Approx(2.0113046820045347).epsilon(1e-12));
  CHECK(error_of([] { (void)thm52_growth_profile(0.2, 4.0, 4); }) == ErrorCode::InvalidArgument);
}
