#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qlzsm/majorana.hpp"

using namespace qlzsm;

namespace {

bool pair_matches(const StarPair& p, const Star& a, const Star& b,
                  double tol = 1e-12) {
  auto close = [tol](const Star& x, const Star& y) {
    return std::abs(x.theta - y.theta) < tol &&
           (std::abs(x.phi - y.phi) < tol || x.theta < tol ||
            std::numbers::pi - x.theta < tol);
  };
  return (close(p.star1, a) && close(p.star2, b)) ||
         (close(p.star1, b) && close(p.star2, a));
}

PureState random_qutrit(std::mt19937& rng) {
  std::normal_distribution<double> gauss;
  StateVector v(3);
  for (int i = 0; i < 3; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  return PureState::normalized(v);
}

}  // namespace

TEST_SUITE("majorana") {

TEST_CASE("basis states") {
  // |g>: double root at the north pole
  const auto g = majorana_stars(PureState::basis_state(3, 0));
  CHECK(pair_matches(g, Star{0, 0}, Star{0, 0}));
  // |e>: one root at zero, one at infinity
  const auto e = majorana_stars(PureState::basis_state(3, 1));
  CHECK(pair_matches(e, Star{0, 0}, Star{std::numbers::pi, 0}));
  // |f>: doubly degree-deficient, both stars at the south pole
  const auto f = majorana_stars(PureState::basis_state(3, 2));
  CHECK(pair_matches(f, Star{std::numbers::pi, 0}, Star{std::numbers::pi, 0}));
}

TEST_CASE("equal g-f superposition sits on the equator") {
  StateVector v(3);
  v << 1.0 / std::numbers::sqrt2, 0.0, 1.0 / std::numbers::sqrt2;
  const auto stars = majorana_stars(PureState(v));
  // roots +-i
  CHECK(pair_matches(stars, Star{std::numbers::pi / 2, std::numbers::pi / 2},
                     Star{std::numbers::pi / 2, -std::numbers::pi / 2},
                     1e-9));
}

TEST_CASE("global phase invariance") {
  std::mt19937 rng(20240811);
  std::uniform_real_distribution<double> angle(-std::numbers::pi,
                                               std::numbers::pi);
  for (int trial = 0; trial < 200; ++trial) {
    const auto psi = random_qutrit(rng);
    const Complex phase = std::polar(1.0, angle(rng));
    const auto rotated = PureState(StateVector(psi.amplitudes() * phase));
    const auto a = majorana_stars(psi);
    const auto b = majorana_stars(rotated);
    // near-coincident stars amplify roundoff through the square-root
    // sensitivity of double roots; the tight bound needs separation
    const double tol =
        star_distance(a.star1, a.star2) > 1e-3 ? 1e-9 : 1e-6;
    CHECK(pair_matches(b, a.star1, a.star2, tol));
  }
}

TEST_CASE("vieta reconstruction of amplitude ratios") {
  std::mt19937 rng(7);
  int tested = 0;
  while (tested < 200) {
    const auto psi = random_qutrit(rng);
    const auto& a = psi.amplitudes();
    if (std::abs(a(0)) < 0.1) continue;
    ++tested;
    const auto stars = majorana_stars(psi);
    auto root = [](const Star& s) {
      return std::polar(std::tan(0.5 * s.theta), s.phi);
    };
    const Complex r1 = root(stars.star1), r2 = root(stars.star2);
    const Complex sum_expected = std::numbers::sqrt2 * a(1) / a(0);
    const Complex prod_expected = a(2) / a(0);
    CHECK(std::abs(r1 + r2 - sum_expected) <=
          1e-9 * (1.0 + std::abs(sum_expected)));
    CHECK(std::abs(r1 * r2 - prod_expected) <=
          1e-9 * (1.0 + std::abs(prod_expected)));
  }
}

TEST_CASE("trajectory stars: constant state stays put") {
  SystemSpec s;
  s.n_levels = 3;
  DriveSpec d;
  d.omega_max = 0.0;
  EvolveOptions opts{41, 1e-10, true};
  const auto traj = evolve_schrodinger(s, d, PureState::basis_state(3, 0),
                                       opts);
  const auto stars = stars_trajectory(traj);
  for (const auto& p : stars) {
    CHECK(p.star1.theta < 1e-9);
    CHECK(p.star2.theta < 1e-9);
  }
}

TEST_CASE("transfer drives both stars pole to pole") {
  SystemSpec s;
  s.n_levels = 3;
  DriveSpec d;
  EvolveOptions opts{401, 1e-10, true};
  const auto traj = evolve_schrodinger(s, d, PureState::basis_state(3, 0),
                                       opts);
  const auto stars = stars_trajectory(traj);
  REQUIRE(stars.size() == 401);

  CHECK(stars.front().star1.theta < 0.01);
  CHECK(stars.front().star2.theta < 0.01);
  CHECK(stars.back().star1.theta > 2.5);
  CHECK(stars.back().star2.theta > 2.5);

  // continuity: the min-displacement pairing never jumps
  for (std::size_t k = 1; k < stars.size(); ++k) {
    CHECK(star_distance(stars[k - 1].star1, stars[k].star1) < 0.3);
    CHECK(star_distance(stars[k - 1].star2, stars[k].star2) < 0.3);
  }
}

TEST_CASE("representation errors") {
  SystemSpec s;
  s.n_levels = 3;
  DriveSpec d;
  const auto plain = evolve_schrodinger(s, d, PureState::basis_state(3, 0));
  CHECK_THROWS_AS(stars_trajectory(plain), ValidationError);

  EvolveOptions opts{11, 1e-8, true};
  const auto rho_traj = evolve_lindblad(s, d, DensityMatrix::ground(3), opts);
  CHECK_THROWS_AS(stars_trajectory(rho_traj), UnsupportedRepresentationError);

  CHECK_THROWS_AS(majorana_stars(PureState::basis_state(4, 0)),
                  ValidationError);
}

}  // TEST_SUITE
