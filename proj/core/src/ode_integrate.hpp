#pragma once

// Thin wrapper around boost::odeint's dense-output Dormand-Prince 5(4)
// stepper for complex Eigen states. Internal to the library.

#include <boost/numeric/odeint.hpp>
#include <boost/numeric/odeint/external/eigen/eigen.hpp>

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qlzsm/errors.hpp"

namespace boost::numeric::odeint {

// The stock Eigen adapter reports the max norm in the matrix scalar type,
// which for complex states cannot feed the error controller. Override with
// the elementwise modulus.
template <typename S, int R, int C, int O, int MR, int MC>
struct vector_space_norm_inf<Eigen::Matrix<std::complex<S>, R, C, O, MR, MC>> {
  using result_type = S;
  result_type operator()(
      const Eigen::Matrix<std::complex<S>, R, C, O, MR, MC>& m) const {
    return m.cwiseAbs().maxCoeff();
  }
};

// The adapter also lacks a copy rule for two-dimensional states (std::copy
// over begin/end only exists for Eigen vectors).
template <typename S, int R1, int C1, int O1, int MR1, int MC1, int R2,
          int C2, int O2, int MR2, int MC2>
struct copy_impl<Eigen::Matrix<S, R1, C1, O1, MR1, MC1>,
                 Eigen::Matrix<S, R2, C2, O2, MR2, MC2>> {
  static void copy(const Eigen::Matrix<S, R1, C1, O1, MR1, MC1>& from,
                   Eigen::Matrix<S, R2, C2, O2, MR2, MC2>& to) {
    to = from;
  }
};

}  // namespace boost::numeric::odeint

namespace qlzsm::detail {

// The controller is run tighter than the requested tolerance so that the
// accumulated global error stays well inside the contracts expressed in
// multiples of tol: norm drift < 10 tol, round-trip < 100 tol, and runs at
// tol and tol/2 differing by less than tol.
inline constexpr double kControllerSafety = 2e-3;

// Integrates state through the given strictly monotonic times, invoking
// observe(state, time) at each one (including the first). Throws
// IntegrationError carrying the last observed time if the stepper stalls.
template <class State, class Rhs, class Obs>
void integrate_at_times(Rhs rhs, State& state, const std::vector<double>& times,
                        double tol, Obs observe) {
  namespace ode = boost::numeric::odeint;
  using Stepper = ode::runge_kutta_dopri5<State, double, State, double,
                                          ode::vector_space_algebra>;

  if (times.size() < 2) {
    throw ValidationError("integration needs at least two sample times");
  }
  if (tol < 1e-12) {
    // The controller target would sit at or below double roundoff; the
    // stepper cannot honor such a tolerance.
    throw IntegrationError("requested tolerance " + std::to_string(tol) +
                               " is below the double-precision floor (1e-12)",
                           times.front());
  }
  const double eps = tol * kControllerSafety;
  auto stepper = ode::make_dense_output(eps, eps, Stepper());

  double last_good = times.front();
  const double span = times.back() - times.front();
  const double dt0 = span / 1000.0;

  try {
    ode::integrate_times(stepper, rhs, state, times.begin(), times.end(), dt0,
                         [&](const State& x, double t) {
                           observe(x, t);
                           last_good = t;
                         });
  } catch (const ode::odeint_error& e) {
    throw IntegrationError(
        std::string("adaptive stepper failed to make progress: ") + e.what(),
        last_good);
  } catch (const std::overflow_error& e) {
    throw IntegrationError(std::string("step-size underflow: ") + e.what(),
                           last_good);
  }
}

}  // namespace qlzsm::detail
