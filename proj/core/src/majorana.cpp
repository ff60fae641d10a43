#include "qlzsm/majorana.hpp"

#include <cmath>
#include <numbers>

namespace qlzsm {

namespace {

constexpr double kDeficiencyCut = 1e-12;

Star star_from_root(const Complex& xi) {
  const double mag = std::abs(xi);
  if (mag < 1e-15) return Star{0.0, 0.0};
  double phi = std::arg(xi);
  if (phi == std::numbers::pi) phi = -std::numbers::pi;  // range [-pi, pi)
  return Star{2.0 * std::atan(mag), phi};
}

Star star_at_infinity() { return Star{std::numbers::pi, 0.0}; }

Eigen::Vector3d unit_vector(const Star& s) {
  return {std::sin(s.theta) * std::cos(s.phi),
          std::sin(s.theta) * std::sin(s.phi), std::cos(s.theta)};
}

}  // namespace

double star_distance(const Star& a, const Star& b) {
  // atan2 form stays accurate for nearly coincident and nearly antipodal
  // pairs, where acos of the dot product loses half the digits.
  const Eigen::Vector3d u = unit_vector(a);
  const Eigen::Vector3d v = unit_vector(b);
  return std::atan2(u.cross(v).norm(), u.dot(v));
}

StarPair majorana_stars(const PureState& psi) {
  if (psi.dim() != 3) {
    throw ValidationError("majorana_stars is defined for qutrit states");
  }
  const auto& amps = psi.amplitudes();
  const Complex a = amps(0) / std::numbers::sqrt2;
  const Complex b = -amps(1);
  const Complex c = amps(2) / std::numbers::sqrt2;

  if (std::abs(a) <= kDeficiencyCut) {
    // Degree-deficient polynomial: each missing degree is a root at infinity.
    if (std::abs(b) <= kDeficiencyCut) {
      return StarPair{star_at_infinity(), star_at_infinity()};
    }
    return StarPair{star_from_root(-c / b), star_at_infinity()};
  }

  // Stable quadratic: pick the sqrt branch that avoids cancellation in b + s.
  const Complex disc = b * b - 4.0 * a * c;
  Complex s = std::sqrt(disc);
  if (std::real(std::conj(b) * s) < 0.0) s = -s;
  const Complex q = -0.5 * (b + s);

  Complex r1, r2;
  if (std::abs(q) > 0.0) {
    r1 = q / a;
    r2 = c / q;
  } else {
    r1 = r2 = Complex(0.0, 0.0);  // b = 0 and c = 0
  }
  return StarPair{star_from_root(r1), star_from_root(r2)};
}

std::vector<StarPair> stars_trajectory(const Trajectory& traj) {
  if (!traj.density_states.empty()) {
    throw UnsupportedRepresentationError(
        "Majorana stars require pure states; trajectory carries density "
        "matrices");
  }
  if (traj.pure_states.empty()) {
    throw ValidationError("trajectory carries no states; propagate with "
                          "keep_states enabled");
  }

  std::vector<StarPair> out;
  out.reserve(traj.pure_states.size());
  for (const auto& psi : traj.pure_states) {
    StarPair pair = majorana_stars(psi);
    if (!out.empty()) {
      const StarPair& prev = out.back();
      const double keep = star_distance(prev.star1, pair.star1) +
                          star_distance(prev.star2, pair.star2);
      const double swap = star_distance(prev.star1, pair.star2) +
                          star_distance(prev.star2, pair.star1);
      if (swap < keep) std::swap(pair.star1, pair.star2);
    }
    out.push_back(pair);
  }
  return out;
}

}  // namespace qlzsm
