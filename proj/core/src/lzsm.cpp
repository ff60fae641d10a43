#include "qlzsm/lzsm.hpp"

#include <cmath>
#include <numbers>

namespace qlzsm {

namespace {

void check_velocity(double v) {
  if (v == 0.0) {
    throw DomainError("LZSM velocity must be nonzero");
  }
}

void check_anharmonicity(double delta) {
  if (!(delta > 0.0)) {
    throw DomainError("anharmonicity must be positive");
  }
}

}  // namespace

const char* convention_name(Omega2phConvention c) {
  return c == Omega2phConvention::kEq8Coupling ? "eq8" : "eq9";
}

double p_lzsm_single(double omega, double v) {
  check_velocity(v);
  return std::exp(-std::numbers::pi * omega * omega / (2.0 * std::abs(v)));
}

double omega_two_photon(double omega, double delta_anharm,
                        Omega2phConvention convention) {
  check_anharmonicity(delta_anharm);
  const double base = omega * omega / (2.0 * delta_anharm);
  return convention == Omega2phConvention::kEq8Coupling
             ? std::numbers::sqrt2 * base
             : base;
}

LzsmPrediction p_lzsm_two_photon(double omega, double v, double delta_anharm,
                                 Omega2phConvention convention) {
  check_velocity(v);
  const double o2 = omega_two_photon(omega, delta_anharm, convention);
  const double p =
      std::exp(-std::numbers::pi * o2 * o2 / (4.0 * std::abs(v)));
  return LzsmPrediction{p, 1.0 - p, o2, v, convention};
}

double theory_slope(double v, double delta_anharm,
                    Omega2phConvention convention) {
  check_velocity(v);
  check_anharmonicity(delta_anharm);
  const double c2 =
      convention == Omega2phConvention::kEq8Coupling ? 2.0 : 1.0;
  return -std::numbers::pi * c2 /
         (16.0 * delta_anharm * delta_anharm * std::abs(v));
}

ScalingFit fit_scaling(std::span<const ScalingPoint> points, double v,
                       double delta_anharm) {
  ScalingFit fit;
  fit.theory_slope_eq8 =
      theory_slope(v, delta_anharm, Omega2phConvention::kEq8Coupling);
  fit.theory_slope_eq9 =
      theory_slope(v, delta_anharm, Omega2phConvention::kEq9Text);

  for (const auto& p : points) {
    if (p.p_g > 0.0) {
      const double x = p.omega * p.omega * p.omega * p.omega;
      fit.points.emplace_back(x, std::log(p.p_g));
    } else {
      fit.rejected.push_back(p);
    }
  }
  const auto n = fit.points.size();
  if (n < 3) {
    throw ValidationError("fit_scaling needs at least three points with "
                          "positive ground population");
  }

  double xbar = 0.0, ybar = 0.0;
  for (const auto& [x, y] : fit.points) {
    xbar += x;
    ybar += y;
  }
  xbar /= static_cast<double>(n);
  ybar /= static_cast<double>(n);

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : fit.points) {
    sxx += (x - xbar) * (x - xbar);
    sxy += (x - xbar) * (y - ybar);
    syy += (y - ybar) * (y - ybar);
  }
  if (sxx == 0.0) {
    throw ValidationError("fit_scaling: all amplitudes identical");
  }
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;

  double ss_res = 0.0;
  for (const auto& [x, y] : fit.points) {
    const double r = y - (fit.intercept + fit.slope * x);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

}  // namespace qlzsm
