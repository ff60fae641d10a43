#pragma once

#include <string>
#include <vector>

#include "qlzsm/model.hpp"
#include "qlzsm/state.hpp"

namespace qlzsm {

struct DriveSample {
  double omega_d = 0.0;  // instantaneous drive frequency, rad/us
  double omega = 0.0;    // instantaneous Rabi amplitude, rad/us
};

// Time-ordered samples of a propagated system.
struct Trajectory {
  std::vector<double> times;                   // us, strictly increasing
  Eigen::MatrixXd populations;                 // n_samples x n_levels
  std::vector<std::string> level_names;        // {"g","e","f"[,"h"]} or {"g","f"}
  std::vector<PureState> pure_states;          // empty unless requested
  std::vector<DensityMatrix> density_states;   // empty unless requested
  std::vector<DriveSample> drive;              // per sample
  std::vector<std::string> warnings;           // numerical-quality notes
  double final_norm_error = 0.0;               // | ||psi|| - 1 | or | tr rho - 1 |
  std::vector<double> norm_errors;             // per sample

  int n_samples() const { return static_cast<int>(times.size()); }
  int n_levels() const { return static_cast<int>(populations.cols()); }
  bool has_pure_states() const { return !pure_states.empty(); }
};

// One jump operator with its rate. Operators couple adjacent levels only.
struct Dissipator {
  LevelMatrix op;     // |to><from|
  double rate = 0.0;  // 1/us
  int from = 0;
  int to = 0;
};

struct DissipatorSet {
  std::vector<Dissipator> ops;
  void validate() const;
};

// Bose-Einstein occupation of a mode at the given angular frequency.
double thermal_occupation(double omega, double temperature);

// Relaxation ladder with rates (1, 2, 3) * gamma_eg on (e->g, f->e, h->f),
// truncated to n_levels. Each lowering operator at rate (nbar+1)*Gamma is
// paired with a raising partner at nbar*Gamma, with nbar evaluated at the
// corresponding transition frequency (detailed balance per transition).
DissipatorSet collapse_operators(const SystemSpec& system);

struct EvolveOptions {
  int n_samples = 401;
  double tol = 1e-10;
  bool keep_states = false;
};

// Unitary propagation of i dpsi/dt = H(t) psi over [-T/2, T/2] with an
// adaptive embedded Runge-Kutta pair and dense output at the sample times.
Trajectory evolve_schrodinger(const SystemSpec& system, const DriveSpec& drive,
                              const PureState& psi0,
                              const EvolveOptions& opts = {});

// Lindblad propagation of the density matrix with the collapse_operators()
// dissipators. Recorded samples are re-symmetrized; positivity violations
// beyond 1e-6 are attached as warnings.
Trajectory evolve_lindblad(const SystemSpec& system, const DriveSpec& drive,
                           const DensityMatrix& rho0,
                           const EvolveOptions& opts = {});

// Propagation under the effective two-level {g, f} Hamiltonian.
Trajectory evolve_effective(const SystemSpec& system, const DriveSpec& drive,
                            const EvolveOptions& opts = {});
Trajectory evolve_effective(const SystemSpec& system, const DriveSpec& drive,
                            const PureState& psi0,
                            const EvolveOptions& opts = {});

// Single-segment unitary propagation from t0 to t1 (either direction);
// used for reversibility checks and endpoint-only evaluations.
PureState evolve_between(const SystemSpec& system, const DriveSpec& drive,
                         const PureState& psi0, double t0, double t1,
                         double tol);

}  // namespace qlzsm
