#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "qlzsm/lzsm.hpp"
#include "qlzsm/propagate.hpp"

using namespace qlzsm;
using namespace qlzsm::units;

TEST_SUITE("lzsm") {

TEST_CASE("single-passage formula") {
  const double v = mhz_to_angular(62.5);
  CHECK(p_lzsm_single(0.0, v) == 1.0);
  CHECK_THROWS_AS(p_lzsm_single(1.0, 0.0), DomainError);

  // invert for the half-transfer amplitude
  const double omega_half =
      std::sqrt(2.0 * v * std::numbers::ln2 / std::numbers::pi);
  CHECK(p_lzsm_single(omega_half, v) == doctest::Approx(0.5).epsilon(1e-12));

  double prev = 1.0;
  for (double f = 1.0; f < 40.0; f += 2.0) {
    const double p = p_lzsm_single(mhz_to_angular(f), v);
    CHECK(p < prev);
    prev = p;
  }
  // sign of the velocity is irrelevant
  CHECK(p_lzsm_single(3.0, v) == p_lzsm_single(3.0, -v));
}

TEST_CASE("two-photon formula and the quoted operating point") {
  const double v = mhz_to_angular(62.5);
  const double delta = mhz_to_angular(170.0);

  const auto off = p_lzsm_two_photon(0.0, v, delta);
  CHECK(off.p_nonadiabatic == 1.0);
  CHECK(off.p_f == 0.0);

  const auto p9 = p_lzsm_two_photon(mhz_to_angular(55.6), v, delta,
                                    Omega2phConvention::kEq9Text);
  CHECK(angular_to_mhz(p9.omega_2ph) == doctest::Approx(9.0922).epsilon(1e-4));
  CHECK(p9.p_f == doctest::Approx(0.998537).epsilon(1e-4));

  const auto p8 = p_lzsm_two_photon(mhz_to_angular(55.6), v, delta,
                                    Omega2phConvention::kEq8Coupling);
  CHECK(p8.omega_2ph ==
        doctest::Approx(std::numbers::sqrt2 * p9.omega_2ph).epsilon(1e-14));
  CHECK(p8.p_f > 0.9999);

  CHECK(p8.p_f == 1.0 - p8.p_nonadiabatic);  // by construction
  CHECK_THROWS_AS(p_lzsm_two_photon(1.0, 0.0, delta), DomainError);
  CHECK_THROWS_AS(p_lzsm_two_photon(1.0, v, 0.0), DomainError);
}

TEST_CASE("velocity doubling halves the exponent at equal gap") {
  const double v = mhz_to_angular(62.5);
  const double delta = mhz_to_angular(170.0);
  const auto two = p_lzsm_two_photon(mhz_to_angular(40.0), v, delta);
  // feed the single-passage formula the same gap and speed
  const double single = p_lzsm_single(two.omega_2ph, v);
  CHECK(std::log(two.p_nonadiabatic) / std::log(single) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("theory slopes") {
  const double v = mhz_to_angular(62.5);
  const double delta = mhz_to_angular(170.0);
  CHECK(theory_slope(v, delta, Omega2phConvention::kEq9Text) ==
        doctest::Approx(-std::numbers::pi / (16.0 * delta * delta * v))
            .epsilon(1e-14));
  CHECK(theory_slope(v, delta, Omega2phConvention::kEq8Coupling) ==
        2.0 * theory_slope(v, delta, Omega2phConvention::kEq9Text));
}

TEST_CASE("fitting exact formula output recovers the formula") {
  const double v = mhz_to_angular(100.0);
  const double delta = mhz_to_angular(170.0);
  std::vector<ScalingPoint> pts;
  for (double f = 20.0; f <= 50.0; f += 5.0) {
    const auto pred = p_lzsm_two_photon(mhz_to_angular(f), v, delta,
                                        Omega2phConvention::kEq9Text);
    pts.push_back({mhz_to_angular(f), pred.p_nonadiabatic});
  }
  const auto fit = fit_scaling(pts, v, delta);
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.slope ==
        doctest::Approx(fit.theory_slope_eq9).epsilon(1e-9));
  CHECK(std::abs(fit.intercept) < 1e-9);
  CHECK(fit.rejected.empty());
}

TEST_CASE("degenerate fits") {
  const double v = mhz_to_angular(62.5);
  const double delta = mhz_to_angular(170.0);

  SUBCASE("constant populations give zero slope") {
    std::vector<ScalingPoint> pts{{1.0, 0.5}, {2.0, 0.5}, {3.0, 0.5}};
    const auto fit = fit_scaling(pts, v, delta);
    CHECK(fit.slope == 0.0);
    CHECK(fit.r_squared == 1.0);
  }

  SUBCASE("nonpositive populations are rejected with a report") {
    std::vector<ScalingPoint> pts{
        {1.0, 0.5}, {2.0, 0.25}, {3.0, 0.125}, {4.0, 0.0}};
    const auto fit = fit_scaling(pts, v, delta);
    CHECK(fit.points.size() == 3);
    REQUIRE(fit.rejected.size() == 1);
    CHECK(fit.rejected[0].omega == 4.0);
  }

  SUBCASE("too few usable points") {
    std::vector<ScalingPoint> pts{{1.0, 0.5}, {2.0, 0.0}, {3.0, 0.0}};
    CHECK_THROWS_AS(fit_scaling(pts, v, delta), ValidationError);
  }

  SUBCASE("identical amplitudes") {
    std::vector<ScalingPoint> pts{{1.0, 0.5}, {1.0, 0.4}, {1.0, 0.3}};
    CHECK_THROWS_AS(fit_scaling(pts, v, delta), ValidationError);
  }
}

TEST_CASE("full-dynamics slope selects the dipole-weighted convention") {
  // The oracle for the convention choice: propagate the ladder, fit
  // ln p_g against Omega^4, compare with both candidate slopes.
  SystemSpec s;
  DriveSpec d;
  d.mod_depth = -mhz_to_angular(20.0);
  const double v = d.chirp_rate();

  std::vector<ScalingPoint> pts;
  for (double f = 27.0; f <= 45.0; f += 3.0) {
    DriveSpec run = d;
    run.omega_max = mhz_to_angular(f);
    const auto traj = evolve_schrodinger(s, run, PureState::basis_state(4, 0),
                                         EvolveOptions{2, 1e-10, false});
    pts.push_back({run.omega_max, traj.populations(1, 0)});
  }
  const auto fit = fit_scaling(pts, v, s.anharmonicity());
  CHECK(fit.r_squared > 0.98);
  CHECK(fit.slope < 0.0);
  CHECK(fit.slope / fit.theory_slope_eq8 == doctest::Approx(1.0).epsilon(0.3));
  CHECK(std::abs(fit.slope / fit.theory_slope_eq9 - 1.0) > 0.3);
  CHECK(kDefaultConvention == Omega2phConvention::kEq8Coupling);
}

}  // TEST_SUITE
