#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qlzsm/sweep.hpp"

using namespace qlzsm;
using namespace qlzsm::units;

namespace {

SweepGrid small_grid() {
  SweepGrid g;
  g.amplitudes = {0.0, mhz_to_angular(30.0), mhz_to_angular(55.6)};
  g.offsets = {-mhz_to_angular(0.5), 0.0};
  return g;
}

}  // namespace

TEST_SUITE("sweep") {

TEST_CASE("grid validation") {
  SweepGrid g = small_grid();
  CHECK_NOTHROW(g.validate());
  g.amplitudes = {};
  CHECK_THROWS_AS(g.validate(), ValidationError);
  g = small_grid();
  g.offsets = {0.0, 0.0};
  CHECK_THROWS_AS(g.validate(), ValidationError);
  g = small_grid();
  g.amplitudes[0] = g.amplitudes[2];
  CHECK_THROWS_AS(g.validate(), ValidationError);
}

TEST_CASE("zero-amplitude column never populates f") {
  const auto result = run_sweep(small_grid(), 1e-8, 1);
  CHECK(result.failures.empty());
  for (int i = 0; i < 2; ++i) {
    CHECK(result.p_f()(i, 0) == 0.0);
    CHECK(result.p_final[0](i, 0) > 1.0 - 1e-7);
  }
  // populations are physical and complete in every cell
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 3; ++j) {
      double sum = 0.0;
      for (int l = 0; l < result.levels(); ++l) {
        const double p = result.p_final[l](i, j);
        CHECK(p >= -1e-9);
        CHECK(p <= 1.0 + 1e-9);
        sum += p;
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
}

TEST_CASE("a sweep cell is bitwise the standalone propagation") {
  SweepGrid g;
  g.amplitudes = {mhz_to_angular(50.0)};
  g.offsets = {mhz_to_angular(0.3)};
  const auto result = run_sweep(g, 1e-8, 1);

  DriveSpec d = g.base_drive;
  d.omega_max = g.amplitudes[0];
  d.offset = g.offsets[0];
  const auto traj =
      evolve_schrodinger(g.base_system, d,
                         PureState::basis_state(g.base_system.n_levels, 0),
                         EvolveOptions{2, 1e-8, false});
  for (int l = 0; l < result.levels(); ++l) {
    CHECK(result.p_final[l](0, 0) == traj.populations(1, l));
  }
}

TEST_CASE("thread count never changes the bytes") {
  const SweepGrid g = small_grid();
  const auto serial = run_sweep(g, 1e-8, 1);
  for (int threads : {2, 5}) {
    const auto parallel = run_sweep(g, 1e-8, threads);
    for (int l = 0; l < serial.levels(); ++l) {
      CHECK((serial.p_final[l].array() == parallel.p_final[l].array()).all());
    }
    CHECK(parallel.failures.empty());
  }
}

TEST_CASE("engines select the propagation model") {
  SweepGrid g;
  g.amplitudes = {mhz_to_angular(55.6)};
  g.offsets = {0.0};

  g.engine = Engine::kLindblad;
  const auto lind = run_sweep(g, 1e-8, 0);
  CHECK(lind.p_f()(0, 0) > 0.97);
  CHECK(lind.p_f()(0, 0) < 0.99);

  g.engine = Engine::kEffective;
  const auto eff = run_sweep(g, 1e-8, 0);
  CHECK(eff.levels() == 2);
  CHECK(eff.p_f()(0, 0) > 0.99);
}

TEST_CASE("amplitude sensitivity collapses on the plateau") {
  // Transfer rises fastest around 24..32 MHz; on the plateau only
  // sub-permille finite-window ripples remain. Differences are spaced
  // 4 MHz apart so the ripples do not alias into the slope estimate.
  SweepGrid g;
  for (double f = 20.0; f <= 62.0; f += 4.0) {
    g.amplitudes.push_back(mhz_to_angular(f));
  }
  g.offsets = {0.0};
  const auto result = run_sweep(g, 1e-9, 0);
  const auto& pf = result.p_f();
  double slope_rise = 0.0, ripple_slope = 0.0;
  int j50 = 0;
  for (int j = 0; j + 1 < pf.cols(); ++j) {
    const double slope = std::abs(pf(0, j + 1) - pf(0, j)) /
                         (g.amplitudes[j + 1] - g.amplitudes[j]);
    if (g.amplitudes[j] >= mhz_to_angular(49.0)) {
      ripple_slope = std::max(ripple_slope, slope);
    } else {
      slope_rise = std::max(slope_rise, slope);
    }
    if (g.amplitudes[j] <= mhz_to_angular(50.5)) j50 = j;
  }
  // the plateau trend is two and a half orders below the rising edge
  const double trend = std::abs(pf(0, pf.cols() - 1) - pf(0, j50)) /
                       (g.amplitudes[pf.cols() - 1] - g.amplitudes[j50]);
  CHECK(trend / slope_rise < 1e-2);
  // local finite-window ripples stay well below the rise too
  CHECK(ripple_slope / slope_rise < 5e-2);
}

TEST_CASE("contour extraction basics") {
  SUBCASE("uniform field has no contour") {
    const std::vector<double> xs{0.0, 1.0}, ys{0.0, 1.0};
    Eigen::MatrixXd f = Eigen::MatrixXd::Constant(2, 2, 0.7);
    CHECK(contour_polylines(xs, ys, f, 0.5).empty());
  }

  SUBCASE("linear-in-x field gives one vertical line at the threshold") {
    const std::vector<double> xs{0.0, 1.0}, ys{0.0, 0.5, 1.0};
    Eigen::MatrixXd f(3, 2);
    f << 0, 1, 0, 1, 0, 1;
    const auto lines = contour_polylines(xs, ys, f, 0.5);
    REQUIRE(lines.size() == 1);
    REQUIRE(lines[0].size() == 3);  // two cells chained through y
    for (const auto& p : lines[0]) CHECK(p.x == 0.5);
    const double y_span = std::abs(lines[0].front().y - lines[0].back().y);
    CHECK(y_span == 1.0);
  }

  SUBCASE("a bump yields one closed loop around its peak") {
    std::vector<double> xs, ys;
    for (int i = 0; i < 21; ++i) xs.push_back(-1.0 + 0.1 * i);
    ys = xs;
    Eigen::MatrixXd f(21, 21);
    for (int i = 0; i < 21; ++i) {
      for (int j = 0; j < 21; ++j) {
        f(i, j) = std::exp(-(xs[j] * xs[j] + ys[i] * ys[i]) / 0.18);
      }
    }
    const auto lines = contour_polylines(xs, ys, f, 0.5);
    REQUIRE(lines.size() == 1);
    const auto& loop = lines[0];
    CHECK(loop.front().x == loop.back().x);
    CHECK(loop.front().y == loop.back().y);
    // radius of the 0.5 level set of exp(-r^2/0.18)
    const double r_expected = std::sqrt(0.18 * std::numbers::ln2);
    for (const auto& p : loop) {
      CHECK(std::hypot(p.x, p.y) == doctest::Approx(r_expected).epsilon(0.05));
    }
  }

  SUBCASE("domain errors") {
    const std::vector<double> xs{0.0, 1.0}, ys{0.0, 1.0};
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(2, 2);
    CHECK_THROWS_AS(contour_polylines({0.0}, ys, f, 0.5), DomainError);

    SweepGrid g = small_grid();
    auto result = run_sweep(g, 1e-8, 1);
    CHECK_THROWS_AS(extract_contours(result, {1.5}), DomainError);
    CHECK_THROWS_AS(extract_contours(result, {0.0}), DomainError);
  }
}

TEST_CASE("trajectory batch matches standalone runs and keeps order") {
  SystemSpec s;
  DriveSpec d;
  const std::vector<std::pair<double, double>> pts{
      {d.omega_max, 0.0}, {0.0, mhz_to_angular(0.5)}};
  const auto batch = run_trajectory_batch(pts, s, d, Engine::kSchrodinger,
                                          EvolveOptions{41, 1e-9, false}, 2);
  CHECK(batch.failures.empty());
  REQUIRE(batch.trajectories.size() == 2);

  const auto solo = evolve_schrodinger(s, d, PureState::basis_state(4, 0),
                                       EvolveOptions{41, 1e-9, false});
  CHECK((batch.trajectories[0].populations.array() ==
         solo.populations.array())
            .all());

  // the zero-amplitude point stays flat
  const auto& flat = batch.trajectories[1];
  CHECK(flat.populations.col(0).minCoeff() > 1.0 - 1e-8);

  CHECK_THROWS_AS(run_trajectory_batch({}, s, d, Engine::kSchrodinger,
                                       EvolveOptions{}, 1),
                  ValidationError);
}

}  // TEST_SUITE
