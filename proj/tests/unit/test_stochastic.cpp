#include <doctest.h>

#include <cmath>

#include "gaborlab/random.hpp"
#include "gaborlab/stochastic.hpp"
#include "support/oracles.hpp"
#include "support/testing.hpp"

using namespace gaborlab;
using testing::error_of;

TEST_CASE("khintchine closed forms") {
  // E|e1 + e2|^4 = 8, over |(1,1)|_2 = sqrt 2
  CHECK(khintchine_ratio({1.0, 1.0}, 4.0) == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-15));
  CHECK(khintchine_ratio({3.0, Complex(0, -4), 1.0}, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(khintchine_ratio({2.5}, 1.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(error_of([] { (void)khintchine_ratio({0.0, 0.0}, 3.0); }) == ErrorCode::ZeroFunction);
  CHECK(error_of([] { (void)khintchine_ratio(std::vector<Complex>(21, 1.0), 3.0); }) == ErrorCode::TooManyFunctions);
}

TEST_CASE("property: khintchine ratio against brute force and A_p = 1") {
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    auto eng = rng::trial_engine(1000, 1, trial);
    const int n = rng::uniform_int(eng, 1, 12);
    std::vector<Complex> a(static_cast<std::size_t>(n));
    for (auto& v : a) v = rng::complex_box(eng);
    for (double p : {1.5, 2.0, 3.0, 4.0}) {
      const double r = khintchine_ratio(a, p);
      CHECK(r == doctest::Approx(oracle::khintchine_brute(a, p)).epsilon(1e-12));
      if (p >= 2.0) CHECK(r >= 1.0 - 1e-12);
      if (p <= 2.0) CHECK(r <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("rademacher averages against brute force") {
  for (std::uint64_t trial = 0; trial < 8; ++trial) {
    auto eng = rng::trial_engine(1001, 1, trial);
    const auto fs = random_atom_family(eng, 2 + trial % 5);
    const Grid& g = fs.front().grid();
    for (double p : {1.5, 3.0}) {
      const double brute = oracle::rademacher_pow_brute(fs, p, g.origin(), g.end(), g.step());
      CHECK(std::pow(rademacher_pnorm_exact(fs, p), p) == doctest::Approx(brute).epsilon(1e-12));
    }
  }
}

TEST_CASE("first moment against brute force") {
  auto eng = rng::trial_engine(1002, 1, 0);
  const auto fs = random_atom_family(eng, 5);
  const Grid& g = fs.front().grid();
  const double p = 3.0;
  double mean = 0.0;
  for (std::uint64_t mask = 0; mask < 32; ++mask) {
    SampledFunction s(g);
    for (std::size_t j = 0; j < 5; ++j) s = s + Complex((mask >> j) & 1U ? -1.0 : 1.0) * fs[j];
    mean += lp_norm(s, p) / 32.0;
  }
  CHECK(rademacher_mean_norm_exact(fs, p) == doctest::Approx(mean).epsilon(1e-13));
}

TEST_CASE("exact enumeration limits and grid checks") {
  auto eng = rng::trial_engine(1003, 1, 0);
  const auto fs = random_atom_family(eng, 13);
  CHECK(error_of([&] { (void)rademacher_pnorm_exact(fs, 3.0); }) == ErrorCode::TooManyFunctions);
  const std::vector<SampledFunction> mixed = {indicator(Grid::covering(0, 1, 2), 0, 1),
                                              indicator(Grid::covering(0, 2, 2), 0, 1)};
  CHECK(error_of([&] { (void)rademacher_pnorm_exact(mixed, 3.0); }) == ErrorCode::GridMismatch);
}

TEST_CASE("monte carlo estimate brackets the exact value") {
  auto eng = rng::trial_engine(1004, 1, 0);
  const auto fs = random_atom_family(eng, 8);
  const double exact = std::pow(rademacher_pnorm_exact(fs, 3.0), 3.0);
  const auto mc = rademacher_pnorm_mc(fs, 3.0, 4000, 17);
  CHECK(mc.trials == 4000);
  CHECK(mc.stderr_ > 0.0);
  CHECK(std::abs(mc.estimate - exact) <= 4.0 * mc.stderr_);
  const auto again = rademacher_pnorm_mc(fs, 3.0, 4000, 17);
  CHECK(again.estimate == mc.estimate);
}

TEST_CASE("type and cotype ratios for disjoint equal-norm functions") {
  // disjoint supports: E||sum eps f_j||_p = (sum ||f_j||^p)^(1/p) for every pattern
  const Grid g = Grid::covering(0.0, 4.0, 1);
  std::vector<SampledFunction> fs;
  for (int j = 0; j < 4; ++j) fs.push_back(indicator(g, j, j + 1.0, Complex(0.0, 1.0)));
  CHECK(type2_ratio(fs, 4.0) == doctest::Approx(std::pow(4.0, -0.25)).epsilon(1e-14));
  CHECK(cotype2_ratio(fs, 1.5) == doctest::Approx(std::pow(4.0, 0.5 - 1.0 / 1.5)).epsilon(1e-14));
  CHECK(error_of([&] { (void)type2_ratio(fs, 1.5); }) == ErrorCode::InvalidArgument);
  CHECK(error_of([&] { (void)cotype2_ratio(fs, 3.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("property: type 2 and cotype 2 ratios are finite and positive") {
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    auto eng = rng::trial_engine(1005, 1, trial);
    const auto fs = random_atom_family(eng, 1 + trial % 8);
    CHECK(type2_ratio(fs, 4.0) > 0.0);
    CHECK(cotype2_ratio(fs, 1.5) > 0.0);
    // a single function has ratio 1
    if (fs.size() == 1) CHECK(type2_ratio(fs, 3.0) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("lacunarity") {
  CHECK(lacunarity({1, 3, 9, 27}) == 3.0);
  CHECK(lacunarity({2, 3, 6}) == 1.5);
  CHECK(error_of([] { (void)lacunarity({3, 3}); }) == ErrorCode::NotLacunary);
  CHECK(error_of([] { (void)lacunarity({0, 3}); }) == ErrorCode::NotLacunary);
  CHECK(error_of([] { (void)lacunarity({}); }) == ErrorCode::NotLacunary);
}

TEST_CASE("lacunary L^4 norms count additive quadruples") {
  // int |e_1 + e_2|^4 = #{s_a + s_b = s_c + s_d} = 6
  CHECK(lacunary_pnorm({1.0, 1.0}, {1, 2}, 4.0) == doctest::Approx(std::pow(6.0, 0.25)).epsilon(1e-13));
  CHECK(lacunary_pnorm({1.0, 1.0, 1.0}, {1, 2, 4}, 4.0) == doctest::Approx(std::pow(15.0, 0.25)).epsilon(1e-13));
  CHECK(lacunary_pnorm({1.0, 2.0, -1.0, 0.5}, {1, 3, 9, 27}, 4.0) ==
        doctest::Approx(std::pow(60.0625, 0.25)).epsilon(1e-13));
  CHECK(lacunary_pnorm({3.0, Complex(0, 4)}, {5, 7}, 2.0) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(lacunary_default_resolution({1, 2, 4, 256}) == 15);
  CHECK(error_of([] { (void)lacunary_pnorm({1.0}, {8}, 4.0, 4); }) == ErrorCode::AliasedFrequency);
  CHECK(error_of([] { (void)lacunary_pnorm({1.0, 1.0}, {8}, 4.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("atom families share a grid") {
  auto eng = rng::trial_engine(1006, 1, 0);
  const auto fs = random_atom_family(eng, 6);
  CHECK(fs.size() == 6);
  for (const auto& f : fs) {
    CHECK(f.grid() == fs.front().grid());
    CHECK_FALSE(f.is_zero());
  }
  CHECK(fs.front().grid().step() == 0.0625);
}
