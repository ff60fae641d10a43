#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "qlzsm/errors.hpp"
#include "qlzsm/units.hpp"

namespace qlzsm {

using Complex = std::complex<double>;

// Dynamic-size but stack-allocated containers: every system here has at most
// four levels, so we cap the compile-time storage and never touch the heap in
// the integrator hot path.
using StateVector =
    Eigen::Matrix<Complex, Eigen::Dynamic, 1, Eigen::ColMajor, 4, 1>;
using LevelMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                  Eigen::ColMajor, 4, 4>;

// A weakly anharmonic ladder (transmon-like): levels g, e, f and optionally h.
// Adjacent-level drive couplings scale with the dipole ratios; the
// anharmonicity is half the difference of the first two transition
// frequencies.
//
// The squared ratios are the stored quantities: second-order expressions sum
// integer multiples of them, and keeping the ladder defaults as exact 2 and 3
// makes the documented zero-offset cancellation exact in floating point.
struct SystemSpec {
  double omega_ge = units::ghz_to_angular(7.24);  // rad/us
  double omega_ef = units::ghz_to_angular(6.90);  // rad/us
  double dipole_sq_ef = 2.0;  // (Omega_ef / Omega_ge)^2
  double dipole_sq_fh = 3.0;  // (Omega_fh / Omega_ge)^2
  int n_levels = 4;
  double gamma_eg = 0.033;     // plain rate, 1/us
  double temperature = 0.073;  // kelvin

  double dipole_ratio_ef() const { return std::sqrt(dipole_sq_ef); }
  double dipole_ratio_fh() const { return std::sqrt(dipole_sq_fh); }

  // Delta = omega_ge - omega_gf/2 = omega_gf/2 - omega_ef > 0.
  double anharmonicity() const { return 0.5 * (omega_ge - omega_ef); }
  double omega_gf() const { return omega_ge + omega_ef; }
  // Harmonic-ladder rule: each transition sits 2*Delta below the previous one.
  double omega_fh() const { return omega_ef - 2.0 * anharmonicity(); }

  void validate() const;
};

// Chirped pulse: frequency swept linearly across half the g-f transition with
// a flat-top super-Gaussian amplitude envelope.
struct DriveSpec {
  double duration = 0.4;                              // T, us
  double mod_depth = -units::mhz_to_angular(12.5);    // D, rad/us, signed
  double offset = 0.0;                                // delta, rad/us
  double omega_max = units::mhz_to_angular(55.6);     // peak Rabi, rad/us
  int envelope_order = 4;                             // n, even, >= 2
  double envelope_cutoff = -4.605170185988091;        // K_c = ln(0.01) < 0

  // v = -2 D / T: the rate at which the g-f diabatic splitting is swept.
  double chirp_rate() const { return -2.0 * mod_depth / duration; }

  void validate() const;
};

// H(t)/hbar sampled at one time, in the rotating frame of the chirped drive.
struct HamiltonianSample {
  LevelMatrix matrix;  // units of angular frequency
  double time = 0.0;   // us
};

// Two-level reduction on the {g, f} subspace:
// H/hbar = c_z sigma_z + c_x sigma_x with sigma_z = |f><f| - |g><g|.
struct EffectiveHamiltonianSample {
  double sigma_z_coeff = 0.0;  // rad/us
  double sigma_x_coeff = 0.0;  // rad/us
  double time = 0.0;           // us

  Eigen::Matrix2cd matrix() const {
    Eigen::Matrix2cd m;
    m << Complex(-sigma_z_coeff, 0.0), Complex(sigma_x_coeff, 0.0),
        Complex(sigma_x_coeff, 0.0), Complex(sigma_z_coeff, 0.0);
    return m;
  }
};

// Super-Gaussian envelope, peak-referenced: omega_max * exp(K_c (2t/T)^n).
// Throws DomainError for t outside [-T/2, T/2].
double envelope(double t, const DriveSpec& drive);

// Instantaneous drive frequency omega_gf/2 - v t/2 + delta.
double drive_frequency(double t, const DriveSpec& drive,
                       const SystemSpec& system);

// Frame detuning delta_gf(t) = -v t + delta. The chirp enters with
// coefficient v (not v/2) because the rotating frame tracks the
// instantaneous phase derivative of the drive.
double frame_detuning(double t, const DriveSpec& drive);

// Drive-frequency offset from omega_gf/2: eps_gf(t) = -v t/2 + delta.
// This is the quantity the Stark-shift expression depends on.
double drive_offset(double t, const DriveSpec& drive);

struct Detunings {
  double ge = 0.0;  // Delta_ge = Delta - delta_gf(t)
  double ef = 0.0;  // Delta_ef = -Delta - delta_gf(t)
};
Detunings detunings(double t, const DriveSpec& drive, const SystemSpec& system);

// Rotating-frame ladder Hamiltonian. For 3 levels:
//   diag(-Delta_ge, 0, Delta_ef), couplings Omega/2 on (g,e) and
//   r_ef Omega/2 on (e,f), no direct (g,f) element.
// For 4 levels additionally r_fh Omega/2 on (f,h) and the h diagonal
// Delta_ef + (omega_fh - omega_d - d(omega_d)/dt * t).
HamiltonianSample hamiltonian(double t, const DriveSpec& drive,
                              const SystemSpec& system);

// Drive-induced shift of the g-f transition frequency:
//   Omega^2/4(Delta-eps) - Omega_ef^2/4(Delta+eps) + Omega_fh^2/4(3Delta+eps).
// Evaluated in a form whose eps = 0 cancellation is exact in floating point
// for the default dipole ratios (the three 1/Delta terms combine to
// (1 - r_ef^2 + r_fh^2/3)/Delta before any rounding can split them).
// Throws SingularityError at the poles.
double stark_shift(double omega, double eps_gf, const SystemSpec& system);

// Coefficients of the effective two-level Hamiltonian:
//   c_z = -v t + delta,  c_x = -Omega_ge(t) Omega_ef(t) / (4 Delta).
EffectiveHamiltonianSample effective_hamiltonian(double t,
                                                 const DriveSpec& drive,
                                                 const SystemSpec& system);

namespace detail {

// Window-unchecked smooth extensions of the drive and Hamiltonian. The
// adaptive stepper may evaluate the right-hand side slightly past the pulse
// edges before its dense output interpolates back inside; these must not
// throw there.
double envelope_raw(double t, const DriveSpec& drive);
void hamiltonian_raw(double t, const DriveSpec& drive,
                     const SystemSpec& system, LevelMatrix& out);
void effective_matrix_raw(double t, const DriveSpec& drive,
                          const SystemSpec& system, Eigen::Matrix2cd& out);

}  // namespace detail

}  // namespace qlzsm
