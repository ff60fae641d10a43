#pragma once

#include <vector>

#include "qlzsm/propagate.hpp"
#include "qlzsm/state.hpp"

namespace qlzsm {

// One point on the unit sphere.
struct Star {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [-pi, pi); 0 by convention at the poles
};

// Unordered pair of stars representing a qutrit pure state.
struct StarPair {
  Star star1;
  Star star2;
};

// Roots of (alpha/sqrt2) xi^2 - beta xi + gamma/sqrt2 mapped through
// xi = tan(theta/2) e^{i phi}; a vanishing leading coefficient contributes a
// root at infinity (theta = pi).
StarPair majorana_stars(const PureState& psi);

// Per-sample star pairs of a pure-state qutrit trajectory. Pairing between
// consecutive samples minimizes the summed great-circle displacement, so the
// two stars can be followed as continuous tracks.
std::vector<StarPair> stars_trajectory(const Trajectory& traj);

// Great-circle distance between two stars, radians.
double star_distance(const Star& a, const Star& b);

}  // namespace qlzsm
