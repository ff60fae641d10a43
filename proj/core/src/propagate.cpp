#include "qlzsm/propagate.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "ode_integrate.hpp"

namespace qlzsm {

namespace {

constexpr Complex kImag{0.0, 1.0};

std::vector<double> sample_times(const DriveSpec& drive, int n_samples) {
  if (n_samples < 2) {
    throw ValidationError("n_samples must be >= 2");
  }
  std::vector<double> ts(n_samples);
  const double half = 0.5 * drive.duration;
  for (int i = 0; i < n_samples; ++i) {
    ts[i] = -half + drive.duration * static_cast<double>(i) /
                        static_cast<double>(n_samples - 1);
  }
  ts.back() = half;
  return ts;
}

std::vector<std::string> ladder_names(int n_levels) {
  std::vector<std::string> names{"g", "e", "f", "h"};
  names.resize(n_levels);
  return names;
}

void check_tol(double tol) {
  if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");
}

DriveSample drive_sample_at(double t, const DriveSpec& drive,
                            const SystemSpec& system) {
  return DriveSample{0.5 * system.omega_gf() - 0.5 * drive.chirp_rate() * t +
                         drive.offset,
                     detail::envelope_raw(t, drive)};
}

}  // namespace

void DissipatorSet::validate() const {
  for (const auto& d : ops) {
    if (d.rate < 0.0) throw ValidationError("dissipator rate must be >= 0");
    if (std::abs(d.from - d.to) != 1) {
      throw ValidationError("dissipators must couple adjacent levels");
    }
  }
}

double thermal_occupation(double omega, double temperature) {
  if (!(omega > 0.0)) {
    throw ValidationError("thermal_occupation: frequency must be positive");
  }
  if (temperature < 0.0) {
    throw ValidationError("thermal_occupation: temperature must be >= 0");
  }
  if (temperature == 0.0) return 0.0;
  return 1.0 / std::expm1(units::kHbarOverKb * omega / temperature);
}

DissipatorSet collapse_operators(const SystemSpec& system) {
  system.validate();
  DissipatorSet set;
  const int n = system.n_levels;
  const double transition_freqs[3] = {system.omega_ge, system.omega_ef,
                                      system.omega_fh()};
  for (int upper = 1; upper < n; ++upper) {
    const double gamma = static_cast<double>(upper) * system.gamma_eg;
    if (gamma == 0.0) continue;
    const double nbar =
        thermal_occupation(transition_freqs[upper - 1], system.temperature);

    LevelMatrix lower(n, n);
    lower.setZero();
    lower(upper - 1, upper) = 1.0;
    set.ops.push_back(Dissipator{lower, gamma * (nbar + 1.0), upper, upper - 1});
    if (nbar > 0.0) {
      LevelMatrix raise(n, n);
      raise.setZero();
      raise(upper, upper - 1) = 1.0;
      set.ops.push_back(Dissipator{raise, gamma * nbar, upper - 1, upper});
    }
  }
  return set;
}

Trajectory evolve_schrodinger(const SystemSpec& system, const DriveSpec& drive,
                              const PureState& psi0,
                              const EvolveOptions& opts) {
  system.validate();
  drive.validate();
  check_tol(opts.tol);
  if (psi0.dim() != system.n_levels) {
    throw ValidationError("initial state dimension does not match n_levels");
  }

  const auto ts = sample_times(drive, opts.n_samples);
  const int n = system.n_levels;

  Trajectory traj;
  traj.times = ts;
  traj.level_names = ladder_names(n);
  traj.populations.resize(opts.n_samples, n);
  traj.drive.resize(opts.n_samples);
  traj.norm_errors.resize(opts.n_samples);
  if (opts.keep_states) traj.pure_states.reserve(opts.n_samples);

  StateVector psi = psi0.amplitudes();
  LevelMatrix h(n, n);
  auto rhs = [&](const StateVector& y, StateVector& dydt, double t) {
    detail::hamiltonian_raw(t, drive, system, h);
    dydt = -kImag * (h * y);
  };

  int idx = 0;
  detail::integrate_at_times(rhs, psi, ts, opts.tol,
                             [&](const StateVector& y, double t) {
                               traj.populations.row(idx) =
                                   y.cwiseAbs2().real().transpose();
                               traj.norm_errors[idx] = std::abs(y.norm() - 1.0);
                               traj.drive[idx] = drive_sample_at(t, drive, system);
                               if (opts.keep_states) {
                                 traj.pure_states.push_back(
                                     PureState::normalized(y));
                               }
                               ++idx;
                             });

  traj.final_norm_error = traj.norm_errors.back();
  if (traj.final_norm_error > 10.0 * opts.tol) {
    traj.warnings.push_back("norm drift " +
                            std::to_string(traj.final_norm_error) +
                            " exceeds 10x the requested tolerance");
  }
  return traj;
}

Trajectory evolve_lindblad(const SystemSpec& system, const DriveSpec& drive,
                           const DensityMatrix& rho0,
                           const EvolveOptions& opts) {
  system.validate();
  drive.validate();
  check_tol(opts.tol);
  if (rho0.dim() != system.n_levels) {
    throw ValidationError("initial state dimension does not match n_levels");
  }

  const auto ts = sample_times(drive, opts.n_samples);
  const int n = system.n_levels;
  const DissipatorSet diss = collapse_operators(system);

  // Precompute sqrt(rate) * L and the corresponding L^dag L.
  std::vector<LevelMatrix> jump, jump_dag, jdagj;
  for (const auto& d : diss.ops) {
    LevelMatrix L = std::sqrt(d.rate) * d.op;
    jump.push_back(L);
    jump_dag.push_back(L.adjoint());
    jdagj.push_back(L.adjoint() * L);
  }

  Trajectory traj;
  traj.times = ts;
  traj.level_names = ladder_names(n);
  traj.populations.resize(opts.n_samples, n);
  traj.drive.resize(opts.n_samples);
  traj.norm_errors.resize(opts.n_samples);
  if (opts.keep_states) traj.density_states.reserve(opts.n_samples);

  LevelMatrix rho = rho0.matrix();
  LevelMatrix h(n, n);
  auto rhs = [&](const LevelMatrix& r, LevelMatrix& drdt, double t) {
    detail::hamiltonian_raw(t, drive, system, h);
    drdt = -kImag * (h * r - r * h);
    for (std::size_t k = 0; k < jump.size(); ++k) {
      drdt.noalias() += jump[k] * r * jump_dag[k];
      drdt.noalias() -= 0.5 * (jdagj[k] * r + r * jdagj[k]);
    }
  };

  double worst_negativity = 0.0;
  int idx = 0;
  detail::integrate_at_times(
      rhs, rho, ts, opts.tol, [&](const LevelMatrix& r, double t) {
        // Hermiticity is enforced on the recorded sample.
        LevelMatrix sym = 0.5 * (r + r.adjoint());
        traj.populations.row(idx) = sym.diagonal().real().transpose();
        traj.norm_errors[idx] = std::abs(sym.trace().real() - 1.0);
        traj.drive[idx] = drive_sample_at(t, drive, system);
        Eigen::SelfAdjointEigenSolver<LevelMatrix> es(sym);
        worst_negativity = std::min(worst_negativity,
                                    es.eigenvalues().minCoeff());
        if (opts.keep_states) {
          // Integrator noise can leave eigenvalues a hair negative; stored
          // samples are projected back onto the physical set.
          Eigen::VectorXd evals = es.eigenvalues().cwiseMax(0.0);
          evals /= evals.sum();
          const auto diag = evals.cast<Complex>().asDiagonal();
          LevelMatrix unit =
              es.eigenvectors() * diag * es.eigenvectors().adjoint();
          traj.density_states.push_back(DensityMatrix(std::move(unit)));
        }
        ++idx;
      });

  traj.final_norm_error = traj.norm_errors.back();
  if (worst_negativity < -1e-6) {
    traj.warnings.push_back("density matrix eigenvalue reached " +
                            std::to_string(worst_negativity));
  }
  if (traj.final_norm_error > 10.0 * opts.tol) {
    traj.warnings.push_back("trace drift " +
                            std::to_string(traj.final_norm_error) +
                            " exceeds 10x the requested tolerance");
  }
  return traj;
}

Trajectory evolve_effective(const SystemSpec& system, const DriveSpec& drive,
                            const EvolveOptions& opts) {
  return evolve_effective(system, drive, PureState::basis_state(2, 0), opts);
}

Trajectory evolve_effective(const SystemSpec& system, const DriveSpec& drive,
                            const PureState& psi0, const EvolveOptions& opts) {
  system.validate();
  drive.validate();
  check_tol(opts.tol);
  if (psi0.dim() != 2) {
    throw ValidationError("effective propagation takes a two-level state");
  }

  const auto ts = sample_times(drive, opts.n_samples);

  Trajectory traj;
  traj.times = ts;
  traj.level_names = {"g", "f"};
  traj.populations.resize(opts.n_samples, 2);
  traj.drive.resize(opts.n_samples);
  traj.norm_errors.resize(opts.n_samples);
  if (opts.keep_states) traj.pure_states.reserve(opts.n_samples);

  StateVector psi = psi0.amplitudes();
  Eigen::Matrix2cd h;
  auto rhs = [&](const StateVector& y, StateVector& dydt, double t) {
    detail::effective_matrix_raw(t, drive, system, h);
    dydt = -kImag * (h * y);
  };

  int idx = 0;
  detail::integrate_at_times(rhs, psi, ts, opts.tol,
                             [&](const StateVector& y, double t) {
                               traj.populations.row(idx) =
                                   y.cwiseAbs2().real().transpose();
                               traj.norm_errors[idx] = std::abs(y.norm() - 1.0);
                               traj.drive[idx] = drive_sample_at(t, drive, system);
                               if (opts.keep_states) {
                                 traj.pure_states.push_back(
                                     PureState::normalized(y));
                               }
                               ++idx;
                             });

  traj.final_norm_error = traj.norm_errors.back();
  return traj;
}

PureState evolve_between(const SystemSpec& system, const DriveSpec& drive,
                         const PureState& psi0, double t0, double t1,
                         double tol) {
  system.validate();
  drive.validate();
  check_tol(tol);
  if (psi0.dim() != system.n_levels) {
    throw ValidationError("initial state dimension does not match n_levels");
  }
  if (t0 == t1) return psi0;

  StateVector psi = psi0.amplitudes();
  LevelMatrix h(system.n_levels, system.n_levels);
  auto rhs = [&](const StateVector& y, StateVector& dydt, double t) {
    detail::hamiltonian_raw(t, drive, system, h);
    dydt = -kImag * (h * y);
  };
  detail::integrate_at_times(rhs, psi, std::vector<double>{t0, t1}, tol,
                             [](const StateVector&, double) {});
  return PureState::normalized(psi);
}

}  // namespace qlzsm
