#include <doctest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "gaborlab/grid.hpp"
#include "gaborlab/random.hpp"
#include "support/oracles.hpp"
#include "support/testing.hpp"

using namespace gaborlab;
using testing::error_of;

TEST_CASE("grid geometry") {
  const Grid g(-1.0, 3, 16);
  CHECK(g.step() == 0.125);
  CHECK(g.end() == 1.0);
  CHECK(g.span() == 2.0);
  CHECK(g.midpoint(0) == -0.9375);
  CHECK(g.offset_of(0.5) == 12);
  CHECK(g.offset_of(-1.25) == -2);
  CHECK(error_of([&] { (void)g.offset_of(0.3); }) == ErrorCode::NonAlignedGrid);

  const Grid c = Grid::covering(2.0, 3.5, 2);
  CHECK(c.count() == 6);
  CHECK(c.origin() == 2.0);
  CHECK(error_of([] { (void)Grid::covering(0.0, 0.3, 2); }) == ErrorCode::NonAlignedGrid);
  CHECK(error_of([] { (void)Grid(0.0, -1, 4); }) == ErrorCode::InvalidArgument);
  CHECK(error_of([] { (void)Grid(0.0, 2, 0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("exponent") {
  CHECK(Exponent(4.0).conjugate() == doctest::Approx(4.0 / 3.0));
  CHECK(Exponent(1.5).conjugate() == doctest::Approx(3.0));
  CHECK(error_of([] { (void)Exponent(1.0); }) == ErrorCode::InvalidArgument);
  CHECK(error_of([] { (void)Exponent(INFINITY); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("norms of indicators are exact") {
  const Grid g = Grid::covering(0.0, 4.0, 3);
  const auto f = indicator(g, 0.5, 2.25, Complex(0.0, 3.0));
  // |f| = 3 on a set of measure 1.75
  CHECK(lp_norm_pow(f, 4.0) == doctest::Approx(81.0 * 1.75).epsilon(1e-15));
  CHECK(lp_norm(f, 2.0) == doctest::Approx(3.0 * std::sqrt(1.75)).epsilon(1e-15));
  CHECK(sup_norm(f) == 3.0);
  CHECK(error_of([&] { (void)indicator(g, 0.5, 5.0); }) == ErrorCode::SupportOutOfRange);
  CHECK(error_of([&] { (void)lp_norm(f, 0.5); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("translate moves the origin, not the values") {
  auto eng = rng::trial_engine(11, 1, 0);
  const auto f = oracle::random_step(eng, 0.0, 2, 3);
  const auto t = translate(f, 1.375);
  CHECK(t.grid().origin() == 1.375);
  for (double x = -0.5; x < 4.0; x += 0.0625) CHECK(oracle::eval(t, x) == oracle::eval(f, x - 1.375));
  CHECK(error_of([&] { (void)translate(f, 0.1); }) == ErrorCode::NonAlignedShift);
}

TEST_CASE("modulate uses the cell midpoint phase") {
  const Grid g = Grid::covering(0.0, 1.0, 2);
  const auto one = indicator(g, 0.0, 1.0);
  const auto m = modulate(one, 0.5);
  for (std::size_t i = 0; i < g.count(); ++i) {
    const Complex expect = std::polar(1.0, 2.0 * oracle::kPi * 0.5 * g.midpoint(i));
    CHECK(std::abs(m[i] - expect) < 1e-15);
  }
  // step 1/4: Nyquist bound is 2
  CHECK(error_of([&] { (void)modulate(one, 2.0); }) == ErrorCode::AliasedFrequency);
  CHECK(error_of([&] { (void)modulate(one, 1.99); }) == std::nullopt);
}

TEST_CASE("time_freq_shift equals modulate after translate") {
  auto eng = rng::trial_engine(12, 1, 0);
  const auto g = oracle::random_step(eng, 0.0, 2, 4);
  const auto a = time_freq_shift(g, 0.75, -3.25);
  const auto b = modulate(translate(g, 0.75), -3.25);
  CHECK(max_abs_difference(a, b) == 0.0);
}

TEST_CASE("arithmetic requires matching grids; embed widens") {
  const Grid g1 = Grid::covering(0.0, 1.0, 2);
  const Grid g2 = Grid::covering(0.0, 2.0, 2);
  const auto a = indicator(g1, 0.0, 1.0);
  const auto b = indicator(g2, 1.0, 2.0);
  CHECK(error_of([&] { (void)(a + b); }) == ErrorCode::GridMismatch);
  const auto wide = embed(a, g2) + b;
  CHECK(lp_norm_pow(wide, 3.0) == doctest::Approx(2.0));
  CHECK(error_of([&] { (void)embed(b, g1); }) == ErrorCode::SupportOutOfRange);
  const Grid u = union_grid(g1, Grid::covering(-1.0, 0.5, 2));
  CHECK(u.origin() == -1.0);
  CHECK(u.end() == 1.0);
  CHECK(max_abs_difference(a, embed(a, g2)) == 0.0);
}

TEST_CASE("lp_ell2_norm and multiply") {
  const Grid g = Grid::covering(0.0, 2.0, 1);
  const std::vector<SampledFunction> fs = {indicator(g, 0.0, 2.0, 3.0), indicator(g, 0.0, 1.0, Complex(0, 4))};
  // sqrt(25) on [0,1), 3 on [1,2)
  CHECK(lp_ell2_norm(fs, 2.0) == doctest::Approx(std::sqrt(25.0 + 9.0)));
  CHECK(lp_norm(multiply(fs[0], fs[1]), 1.0) == doctest::Approx(12.0));
}

TEST_CASE("wiener norm sums unit-cell suprema") {
  const Grid g = Grid::covering(-1.0, 2.0, 2);
  auto f = indicator(g, -1.0, -0.75, 2.0) + indicator(g, 0.5, 0.75, -5.0) + indicator(g, 1.25, 2.0, 0.5);
  CHECK(wiener_norm(f) == doctest::Approx(7.5));
  const Grid off(0.5, 1, 4);
  CHECK(error_of([&] { (void)wiener_norm(SampledFunction(off)); }) == ErrorCode::NonAlignedGrid);
}

TEST_CASE("json round trip") {
  auto eng = rng::trial_engine(13, 1, 0);
  const auto f = oracle::random_step(eng, -2.0, 3, 2);
  nlohmann::json j = f;
  const auto back = sampled_function_from_json(j);
  CHECK(back.grid() == f.grid());
  CHECK(max_abs_difference(back, f) == 0.0);
}

TEST_CASE("property: norms are invariant under translation and modulation") {
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    auto eng = rng::trial_engine(2024, 7, trial);
    const int m = rng::uniform_int(eng, 0, 5);
    const auto f = oracle::random_step(eng, rng::uniform_int(eng, -3, 3), rng::uniform_int(eng, 1, 4), m);
    const double p = rng::uniform(eng, 1.0, 6.0);
    const double t = rng::uniform_int(eng, -200, 200) * f.grid().step();
    const double nyq = std::ldexp(1.0, m - 1);
    const double s = rng::uniform(eng, -nyq, nyq) * 0.999;
    const double base = lp_norm(f, p);
    CHECK(std::abs(lp_norm(translate(f, t), p) - base) <= 1e-12 * base);
    CHECK(std::abs(lp_norm(modulate(f, s), p) - base) <= 1e-12 * base);
    // triangle inequality and homogeneity
    const auto g = modulate(f, s);
    CHECK(lp_norm(f + g, p) <= lp_norm(f, p) + lp_norm(g, p) + 1e-12);
    CHECK(lp_norm(Complex(0, -2.5) * f, p) == doctest::Approx(2.5 * base).epsilon(1e-13));
  }
}

TEST_CASE("property: lp_norm agrees with pointwise quadrature") {
  for (std::uint64_t trial = 0; trial < 40; ++trial) {
    auto eng = rng::trial_engine(77, 3, trial);
    const auto f = oracle::random_step(eng, -1.0, 3, 3);
    const double p = rng::uniform(eng, 1.0, 5.0);
    const double direct = oracle::integrate_pow([&](double x) { return oracle::eval(f, x); }, -1.0, 2.0, 1.0 / 64, p);
    CHECK(lp_norm_pow(f, p) == doctest::Approx(direct).epsilon(1e-12));
  }
}
