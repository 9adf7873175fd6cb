#include <doctest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "gaborlab/frame.hpp"
#include "gaborlab/random.hpp"
#include "support/testing.hpp"

using namespace gaborlab;
using testing::error_of;

namespace {

const std::vector<double> kFreqs = {0.25, 0.5, 0.75, 0.0};

ConstructedFrame small_frame(std::vector<std::int64_t> sizes, int m = 2) {
  BlockPlan plan(Exponent(4.0), std::move(sizes));
  auto sel = select_translates(geometric_spread(plan.total_points() + 4, 5, kFreqs), plan);
  return ConstructedFrame(std::move(plan), std::move(sel), m);
}

CellFunction haar_cell(const HaarIndex& idx, double p, int m) {
  return CellFunction::from_sampled(haar_function(idx, Exponent(p), Grid::covering(0.0, 1.0, m)));
}

}  // namespace

TEST_CASE("block condition at p = 4") {
  // 1/N < 1/36 exactly when N >= 37
  CHECK(error_of([] { (void)BlockPlan(Exponent(4.0), {36}); }) == ErrorCode::InfeasiblePlan);
  const BlockPlan one(Exponent(4.0), {37});
  CHECK(one.k_p() == 3.0);
  CHECK(one.threshold() == doctest::Approx(1.0 / 36.0));
  CHECK(error_bound(one) == doctest::Approx(0.4931969619160719).epsilon(1e-14));

  CHECK(error_of([] { (void)BlockPlan(Exponent(4.0), {63, 126, 252}); }) == ErrorCode::InfeasiblePlan);
  const BlockPlan smallest = plan_blocks(Exponent(4.0), 3, 2.0);
  CHECK(smallest.sizes() == std::vector<std::int64_t>{64, 128, 256});

  const BlockPlan demo(Exponent(4.0), {72, 144, 288});
  CHECK(demo.block_sum() == doctest::Approx(7.0 / 288.0).epsilon(1e-15));
  CHECK(error_bound(demo) == doctest::Approx(0.46770717334674267).epsilon(1e-14));
  CHECK(error_bound(demo) < 0.47);
  CHECK(demo.total_points() == 504);
  CHECK(demo.block_start(2) == 216);
  CHECK(demo.block_of(215) == 1);
  CHECK(demo.block_of(216) == 2);
}

TEST_CASE("plan validation") {
  CHECK(error_of([] { (void)BlockPlan(Exponent(2.0), {1000}); }) == ErrorCode::InfeasiblePlan);
  CHECK(error_of([] { (void)plan_blocks(Exponent(1.5), 3, 2.0); }) == ErrorCode::InfeasiblePlan);
  CHECK(error_of([] { (void)plan_blocks(Exponent(4.0), 3, 1.5); }) == ErrorCode::InvalidArgument);
  CHECK(error_of([] { (void)BlockPlan(Exponent(4.0), {}); }) == ErrorCode::InfeasiblePlan);
  CHECK(error_of([] { (void)BlockPlan(Exponent(4.0), {0, 100}); }) == ErrorCode::InfeasiblePlan);
  // p = 3: N^(-1/2) < 4^(-3/2) = 1/8 -> N > 64
  CHECK(plan_blocks(Exponent(3.0), 1, 2.0).sizes().front() == 65);
}

TEST_CASE("neumann iteration limit") {
  CHECK(neumann_iteration_limit(0.46770717334674267, 1e-8) == 26);
  CHECK(neumann_iteration_limit(0.5, 0.25) == 3);
  CHECK(error_of([] { (void)neumann_iteration_limit(1.0, 1e-8); }) == ErrorCode::InvalidArgument);
  CHECK(error_of([] { (void)neumann_iteration_limit(0.3, 0.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("block atoms and resolution") {
  const auto atoms = block_haar_atoms(3);
  REQUIRE(atoms.size() == 3);
  CHECK(atoms[0] == HaarIndex(0, -1, 0));
  CHECK(atoms[1] == HaarIndex(0, 0, 0));
  CHECK(atoms[2] == HaarIndex(0, 1, 0));
  CHECK(required_resolution(3) == 2);
  CHECK(required_resolution(1) == 0);
  CHECK(required_resolution(5) == 3);
  // frequency 0.75 needs a Nyquist bound of 1
  CHECK(required_resolution(1, {FramePoint{BigInt(0), 0.75}, FramePoint{BigInt(4), 0.25}}) == 1);
  CHECK(required_resolution(3, {FramePoint{BigInt(0), -3.5}}) == 3);
}

TEST_CASE("geometric spread alternates sign") {
  const auto pts = geometric_spread(5, 5, kFreqs);
  CHECK(pts[0].t == 5);
  CHECK(pts[1].t == -25);
  CHECK(pts[4].t == 3125);
  CHECK(pts[3].s == 0.0);
  CHECK(pts[4].s == 0.25);
  CHECK(error_of([] { (void)geometric_spread(3, 1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("disjointness certificate") {
  const BlockPlan plan(Exponent(4.0), {37});
  auto sel = select_translates(geometric_spread(40, 5, kFreqs), plan);
  CHECK(sel.certificate.passed);
  CHECK(sel.certificate.sets_checked == 37 * 36);
  CHECK(sel.certificate.shared_cells == 0);

  // integer translates 1..37 collide: t_j - t_i repeats
  std::vector<FramePoint> dense;
  for (int i = 1; i <= 37; ++i) dense.push_back({BigInt(i), 0.0});
  const auto bad = certify_disjointness(dense, plan);
  CHECK_FALSE(bad.passed);
  CHECK(bad.shared_cells > 0);

  CHECK(error_of([&] { (void)select_translates(geometric_spread(20, 5, kFreqs), plan); }) ==
        ErrorCode::InsufficientSpread);
}

TEST_CASE("window equals the sum of shifted Haar pieces") {
  const auto frame = small_frame({74, 148});
  const auto& plan = frame.plan();
  const auto& sel = frame.selection();
  CellFunction expect(2);
  for (std::size_t i = 0; i < plan.total_points(); ++i) {
    const std::size_t k = sel.block[i];
    const auto h = haar_cell(frame.haar_atoms()[k], 4.0, 2);
    const double w = 1.0 / std::sqrt(static_cast<double>(plan.sizes()[k]));
    expect = expect + w * translate(modulate(h, -sel.points[i].s), -sel.points[i].t);
  }
  CHECK(max_abs_difference(frame.window(), expect) < 1e-14);
  // disjoint summands: ||g||_p^p = sum_k N_k N_k^(-p/2)
  CHECK(lp_norm_pow(frame.window(), 4.0) == doctest::Approx(plan.block_sum()).epsilon(1e-13));
}

TEST_CASE("frame operator agrees with atom-by-atom synthesis") {
  const auto frame = small_frame({74, 148});
  for (std::uint64_t trial = 0; trial < 3; ++trial) {
    auto eng = rng::trial_engine(606, 1, trial);
    const auto f = frame.random_span_element(eng);
    const auto c = frame.analyze(f);
    CellFunction direct(2);
    for (std::size_t j = 0; j < c.size(); ++j) {
      const auto& pt = frame.selection().points[j];
      direct = direct + c[j] * modulate(translate(frame.window(), pt.t), pt.s);
    }
    const auto sf = frame_operator(frame, f);
    const double scale = lp_norm(f, 4.0);
    CHECK(max_abs_difference(sf, direct) <= 1e-13 * scale);
    CHECK(max_abs_difference(sf - f, error_term(frame, f)) <= 1e-13 * scale);
    CHECK(max_abs_difference(main_term(frame, f), f) <= 1e-14 * scale);
  }
}

TEST_CASE("property: contraction, projection and reconstruction") {
  const auto frame = small_frame({37});
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    auto eng = rng::trial_engine(607, 1, trial);
    const auto f = frame.random_span_element(eng);
    CHECK(max_abs_difference(frame.project(f), f) < 1e-15);
    const double base = lp_norm(f, 4.0);
    CHECK(lp_norm(frame_operator(frame, f) - f, 4.0) <= frame.q() * base + 1e-12);
    const auto rec = reconstruct(frame, f, 1e-10);
    CHECK(rec.relative_error <= 1e-10);
    CHECK(rec.iterations <= neumann_iteration_limit(frame.q(), 1e-10));
  }
  // functions off V reproduce themselves under S~
  auto eng = rng::trial_engine(607, 2, 0);
  std::vector<Complex> v(4);
  for (auto& x : v) x = rng::complex_box(eng);
  CellFunctionBuilder b(2);
  b.add(BigInt(123456789), v);
  const auto far = std::move(b).finish();
  CHECK(max_abs_difference(frame.project(far), CellFunction(2)) == 0.0);
  CHECK(max_abs_difference(extended_frame_operator(frame, far), far) == 0.0);
}

TEST_CASE("frame construction guards") {
  BlockPlan plan(Exponent(4.0), {74, 148});
  auto sel = select_translates(geometric_spread(240, 5, kFreqs), plan);
  CHECK(error_of([&] { (void)ConstructedFrame(plan, sel, 0); }) == ErrorCode::GridTooSmall);
  // resolution 1 resolves both atoms and every frequency below 1
  CHECK(error_of([&] { (void)ConstructedFrame(plan, sel, 1); }) == std::nullopt);
  auto sel3 = select_translates(geometric_spread(240, 5, {1.5}), plan);
  CHECK(error_of([&] { (void)ConstructedFrame(plan, sel3, 1); }) == ErrorCode::AliasedFrequency);
}

TEST_CASE("frame bundle round trip") {
  const auto frame = small_frame({37});
  const auto back = frame_from_json(frame_to_json(frame));
  CHECK(back.q() == frame.q());
  CHECK(max_abs_difference(back.window(), frame.window()) == 0.0);
  CHECK(back.selection().points.size() == frame.selection().points.size());
  CHECK(back.selection().points.back().t == frame.selection().points.back().t);
  const auto pts = frame_points_from_json(frame_points_to_json(frame.selection().points));
  CHECK(pts[36].t == frame.selection().points[36].t);
  CHECK(error_of([] { (void)frame_from_json(nlohmann::json::object()); }) == ErrorCode::InvalidArgument);
}
