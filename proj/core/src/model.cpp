#include "qlzsm/model.hpp"

#include <cmath>
#include <string>

namespace qlzsm {

namespace {

void check_window(double t, const DriveSpec& drive) {
  const double half = 0.5 * drive.duration;
  // Allow a hair of slack so that t = +-T/2 computed in floating point
  // never trips the check.
  const double eps = 1e-12 * drive.duration;
  if (t < -half - eps || t > half + eps) {
    throw DomainError("time " + std::to_string(t) +
                      " us outside pulse window [-T/2, T/2], T = " +
                      std::to_string(drive.duration) + " us");
  }
}

}  // namespace

void SystemSpec::validate() const {
  if (!(omega_ge > 0.0) || !(omega_ef > 0.0)) {
    throw ValidationError("system: transition frequencies must be positive");
  }
  if (!(omega_ge > omega_ef)) {
    throw ValidationError(
        "system: omega_ge must exceed omega_ef (positive anharmonicity)");
  }
  if (!(dipole_sq_ef > 0.0) || !(dipole_sq_fh > 0.0)) {
    throw ValidationError("system: dipole ratios must be positive");
  }
  if (n_levels != 3 && n_levels != 4) {
    throw ValidationError("system: n_levels must be 3 or 4");
  }
  if (gamma_eg < 0.0) {
    throw ValidationError("system: gamma_eg must be >= 0");
  }
  if (temperature < 0.0) {
    throw ValidationError("system: temperature must be >= 0");
  }
}

void DriveSpec::validate() const {
  if (!(duration > 0.0)) {
    throw ValidationError("drive: duration must be positive");
  }
  if (envelope_order < 2 || envelope_order % 2 != 0) {
    throw ValidationError("drive: envelope_order must be even and >= 2");
  }
  if (!(envelope_cutoff < 0.0)) {
    throw ValidationError("drive: envelope_cutoff must be negative");
  }
  if (omega_max < 0.0) {
    throw ValidationError("drive: omega_max must be >= 0");
  }
}

namespace detail {

double envelope_raw(double t, const DriveSpec& drive) {
  const double u = 2.0 * t / drive.duration;
  // n is even, so u^n >= 0 and the envelope peaks at t = 0.
  double un = 1.0;
  for (int k = 0; k < drive.envelope_order; ++k) un *= u;
  return drive.omega_max * std::exp(drive.envelope_cutoff * un);
}

void hamiltonian_raw(double t, const DriveSpec& drive,
                     const SystemSpec& system, LevelMatrix& m) {
  const int n = system.n_levels;
  const double dgf = frame_detuning(t, drive);
  const double delta = system.anharmonicity();
  const double omega = envelope_raw(t, drive);

  m.resize(n, n);
  m.setZero();
  m(0, 0) = -(delta - dgf);
  m(2, 2) = -delta - dgf;
  m(0, 1) = m(1, 0) = 0.5 * omega;
  m(1, 2) = m(2, 1) = 0.5 * system.dipole_ratio_ef() * omega;
  // Selection rule: no direct g-f coupling.
  if (n == 4) {
    // h rotates with three drive photons; its diagonal picks up
    // omega_fh - omega_d - (d omega_d/dt) t = -3 Delta - delta_gf(t)
    // on top of Delta_ef.
    m(3, 3) = -4.0 * delta - 2.0 * dgf;
    m(2, 3) = m(3, 2) = 0.5 * system.dipole_ratio_fh() * omega;
  }
}

void effective_matrix_raw(double t, const DriveSpec& drive,
                          const SystemSpec& system, Eigen::Matrix2cd& m) {
  const double cz = frame_detuning(t, drive);
  const double omega = envelope_raw(t, drive);
  const double cx = -system.dipole_ratio_ef() * omega * omega /
                    (4.0 * system.anharmonicity());
  m(0, 0) = -cz;
  m(0, 1) = cx;
  m(1, 0) = cx;
  m(1, 1) = cz;
}

}  // namespace detail

double envelope(double t, const DriveSpec& drive) {
  check_window(t, drive);
  return detail::envelope_raw(t, drive);
}

double drive_frequency(double t, const DriveSpec& drive,
                       const SystemSpec& system) {
  check_window(t, drive);
  return 0.5 * system.omega_gf() - 0.5 * drive.chirp_rate() * t + drive.offset;
}

double frame_detuning(double t, const DriveSpec& drive) {
  return -drive.chirp_rate() * t + drive.offset;
}

double drive_offset(double t, const DriveSpec& drive) {
  return -0.5 * drive.chirp_rate() * t + drive.offset;
}

Detunings detunings(double t, const DriveSpec& drive,
                    const SystemSpec& system) {
  const double dgf = frame_detuning(t, drive);
  const double delta = system.anharmonicity();
  return Detunings{delta - dgf, -delta - dgf};
}

HamiltonianSample hamiltonian(double t, const DriveSpec& drive,
                              const SystemSpec& system) {
  check_window(t, drive);
  system.validate();
  HamiltonianSample sample;
  sample.time = t;
  detail::hamiltonian_raw(t, drive, system, sample.matrix);
  return sample;
}

double stark_shift(double omega, double eps_gf, const SystemSpec& system) {
  const double delta = system.anharmonicity();
  const double d1 = delta - eps_gf;        // virtual e, lower path
  const double d2 = delta + eps_gf;        // virtual e, upper path
  const double d3 = 3.0 * delta + eps_gf;  // virtual h
  const double tiny = 1e-12 * delta;
  if (std::abs(d1) < tiny || std::abs(d2) < tiny || std::abs(d3) < tiny) {
    throw SingularityError("stark_shift: drive offset hits a pole of the "
                           "three-term expression");
  }

  const double a = system.dipole_sq_ef;
  const double b = system.dipole_sq_fh;

  // Split each term into its eps = 0 value plus the eps-proportional rest:
  //   1/(D-e) = 1/D + e/(D(D-e)),  -a/(D+e) = -a/D + a e/(D(D+e)),
  //   b/(3D+e) = b/(3D) - b e/(3D(3D+e)).
  // The constant part (1 - a + b/3)/D vanishes identically for the default
  // ratios and stays free of the cancellation noise the naive three-fraction
  // form suffers from at small eps.
  const double constant = (1.0 - a) + b / 3.0;
  const double rest = 1.0 / (delta * d1) + a / (delta * d2) -
                      b / (3.0 * delta * d3);
  return 0.25 * omega * omega * (constant / delta + eps_gf * rest);
}

EffectiveHamiltonianSample effective_hamiltonian(double t,
                                                 const DriveSpec& drive,
                                                 const SystemSpec& system) {
  const double omega = envelope(t, drive);  // also checks the window
  const double omega_ef = system.dipole_ratio_ef() * omega;
  return EffectiveHamiltonianSample{
      frame_detuning(t, drive),
      -omega * omega_ef / (4.0 * system.anharmonicity()), t};
}

}  // namespace qlzsm
