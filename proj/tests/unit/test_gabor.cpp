#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "gaborlab/gabor.hpp"
#include "gaborlab/random.hpp"
#include "support/oracles.hpp"
#include "support/testing.hpp"

using namespace gaborlab;
using testing::error_of;

namespace {

struct RandomSystem {
  GaborSystem sys;
  CoefficientMap a;
};

RandomSystem random_system(std::uint64_t trial, std::size_t n) {
  auto eng = rng::trial_engine(31337, 1, trial);
  const auto g = oracle::random_step(eng, 0.0, 1, 3);
  std::vector<TimeFreqPoint> pts;
  CoefficientMap a;
  while (pts.size() < n) {
    const TimeFreqPoint pt{rng::uniform_int(eng, 0, 24) / 8.0, rng::uniform_int(eng, -31, 31) / 8.0};
    if (std::find(pts.begin(), pts.end(), pt) != pts.end()) continue;
    pts.push_back(pt);
    a[pt] = rng::complex_box(eng);
  }
  return {GaborSystem::with_covering_grid(g, pts), a};
}

}  // namespace

TEST_CASE("atoms are time-frequency shifts of the window") {
  const auto rs = random_system(0, 5);
  for (const auto& pt : rs.sys.points()) {
    const auto at = atom(rs.sys, pt);
    for (std::size_t i = 0; i < at.size(); ++i) {
      const double x = at.grid().midpoint(i);
      const Complex expect = std::polar(1.0, 2.0 * oracle::kPi * pt.s * x) * oracle::eval(rs.sys.window(), x - pt.t);
      CHECK(std::abs(at[i] - expect) < 1e-13);
    }
  }
  CHECK(error_of([&] { (void)atom(rs.sys, {100.0, 0.0}); }) == ErrorCode::UnknownPoint);
  CHECK(rs.sys.grid().origin() == 0.0);
}

TEST_CASE("system validation") {
  const Grid g = Grid::covering(0.0, 1.0, 2);
  const auto w = indicator(g, 0.0, 1.0);
  CHECK(error_of([&] { (void)GaborSystem(w, {{0.5, 0.0}}, g); }) == ErrorCode::SupportOutOfRange);
  CHECK(error_of([&] { (void)GaborSystem(w, {{0.1, 0.0}}, Grid::covering(0.0, 2.0, 2)); }) == ErrorCode::NonAlignedShift);
  CHECK(error_of([&] { (void)GaborSystem(w, {{0.0, 2.5}}, g); }) == ErrorCode::AliasedFrequency);
  CHECK(error_of([&] { (void)GaborSystem(w, {}, Grid::covering(0.0, 1.0, 3)); }) == ErrorCode::GridMismatch);
}

TEST_CASE("synthesis is the weighted atom sum") {
  const auto rs = random_system(1, 6);
  const auto f = synthesize(rs.sys, rs.a);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double x = f.grid().midpoint(i);
    Complex v = 0.0;
    for (const auto& [pt, c] : rs.a) v += c * std::polar(1.0, 2.0 * oracle::kPi * pt.s * x) * oracle::eval(rs.sys.window(), x - pt.t);
    CHECK(std::abs(f[i] - v) < 1e-12);
  }
}

TEST_CASE("property: exhaustive sign-flip extremes match brute force") {
  for (std::uint64_t trial = 0; trial < 12; ++trial) {
    const auto rs = random_system(100 + trial, 2 + trial % 6);
    const double p = 1.5 + 0.5 * static_cast<double>(trial % 5);
    const auto range = sign_flip_ratio(rs.sys, rs.a, Exponent(p), 1, 0);
    CHECK(range.exhaustive);
    CHECK(range.patterns == (std::size_t{1} << (rs.a.size() - 1)));

    const auto terms = weighted_atoms(rs.sys, rs.a);
    const Grid& grid = rs.sys.grid();
    const double base = std::pow(oracle::integrate_pow([&](double x) {
                                   Complex v = 0.0;
                                   for (const auto& t : terms) v += oracle::eval(t, x);
                                   return v;
                                 }, grid.origin(), grid.end(), grid.step(), p), 1.0 / p);
    double lo = INFINITY, hi = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << terms.size()); ++mask) {
      const double r = std::pow(oracle::integrate_pow([&](double x) {
                                  Complex v = 0.0;
                                  for (std::size_t k = 0; k < terms.size(); ++k) v += ((mask >> k) & 1U ? -1.0 : 1.0) * oracle::eval(terms[k], x);
                                  return v;
                                }, grid.origin(), grid.end(), grid.step(), p), 1.0 / p) / base;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    CHECK(range.max_ratio == doctest::Approx(hi).epsilon(1e-11));
    CHECK(range.min_ratio == doctest::Approx(lo).epsilon(1e-11));
  }
}

TEST_CASE("disjoint atoms are 1-unconditional and match their square function") {
  const Grid g = Grid::covering(0.0, 1.0, 2);
  const auto w = indicator(g, 0.0, 0.5, 2.0) + indicator(g, 0.5, 1.0, Complex(0, -1));
  std::vector<TimeFreqPoint> pts;
  CoefficientMap a;
  for (int j = 0; j < 5; ++j) {
    pts.push_back({static_cast<double>(j), 0.25 * j});
    a[pts.back()] = Complex(1.0 + j, -0.5 * j);
  }
  const auto sys = GaborSystem::with_covering_grid(w, pts);
  for (double p : {1.5, 3.0}) {
    const auto range = sign_flip_ratio(sys, a, Exponent(p), 1, 0);
    CHECK(range.max_ratio == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(range.min_ratio == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(square_function_equivalent(sys, a, Exponent(p)) ==
          doctest::Approx(lp_norm(synthesize(sys, a), p)).epsilon(1e-13));
  }
}

TEST_CASE("sampled sign flips are seeded") {
  const auto rs = random_system(7, 14);
  const auto r1 = sign_flip_ratio(rs.sys, rs.a, Exponent(3.0), 50, 42);
  const auto r2 = sign_flip_ratio(rs.sys, rs.a, Exponent(3.0), 50, 42);
  CHECK_FALSE(r1.exhaustive);
  CHECK(r1.patterns == 50);
  CHECK(r1.max_ratio == r2.max_ratio);
  CHECK(r1.min_ratio == r2.min_ratio);
  CHECK(error_of([&] { (void)sign_flip_ratio(rs.sys, rs.a, Exponent(3.0), 0, 42); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("gabor json round trip") {
  const auto rs = random_system(8, 4);
  CHECK(points_from_json(points_to_json(rs.sys.points())) == rs.sys.points());
  CHECK(coefficients_from_json(coefficients_to_json(rs.a)) == rs.a);
}
