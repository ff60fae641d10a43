#include "qlzsm/spectra.hpp"

#include <algorithm>
#include <cmath>

namespace qlzsm {

namespace {

// Rotate the global phase so the largest-magnitude component is real
// positive; for the real-symmetric Hamiltonians here this amounts to a sign
// convention, but the rule is stated for general complex vectors.
void fix_phase(StateVector& v) {
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  const Complex z = v(imax);
  const double mag = std::abs(z);
  if (mag > 0.0) v *= std::conj(z) / mag;
}

}  // namespace

std::vector<EigenBranch> instantaneous_spectrum(const SystemSpec& system,
                                                const DriveSpec& drive,
                                                int n_samples) {
  system.validate();
  drive.validate();
  if (n_samples < 2) {
    throw ValidationError("instantaneous_spectrum needs n_samples >= 2");
  }

  const int n = system.n_levels;
  const double half = 0.5 * drive.duration;

  std::vector<EigenBranch> branches(n);
  for (int b = 0; b < n; ++b) {
    branches[b].label = b;
    branches[b].times.resize(n_samples);
    branches[b].energies.resize(n_samples);
    branches[b].compositions.resize(n_samples, n);
    branches[b].vectors.resize(n_samples);
  }

  // branch_of[j] = which branch currently owns eigen index j
  std::vector<int> branch_of(n);
  for (int j = 0; j < n; ++j) branch_of[j] = j;

  LevelMatrix h(n, n);
  Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, 0, 4, 4> prev_vecs(n,
                                                                           n);
  for (int k = 0; k < n_samples; ++k) {
    const double t =
        -half + drive.duration * static_cast<double>(k) /
                    static_cast<double>(n_samples - 1);
    detail::hamiltonian_raw(t, drive, system, h);

    Eigen::SelfAdjointEigenSolver<LevelMatrix> es(h);
    auto evals = es.eigenvalues();
    auto evecs = es.eigenvectors();

    bool degenerate = false;
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    for (int j = 0; j + 1 < n; ++j) {
      if (evals(j + 1) - evals(j) < 1e-12 * scale) degenerate = true;
    }

    std::vector<int> assign(n);  // eigen index -> branch
    if (k == 0 || degenerate) {
      // Energy order; on degeneracy this is also the documented fallback.
      for (int j = 0; j < n; ++j) assign[j] = branch_of[j] = j;
      if (k > 0 && degenerate) {
        for (int b = 0; b < n; ++b) branches[b].degenerate_samples.push_back(k);
      }
    } else {
      // Greedy maximum-overlap matching against the previous sample.
      Eigen::MatrixXd overlap(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          overlap(i, j) = std::abs(prev_vecs.col(i).dot(evecs.col(j)));
        }
      }
      std::vector<bool> used_prev(n, false), used_now(n, false);
      for (int pick = 0; pick < n; ++pick) {
        int bi = -1, bj = -1;
        double best = -1.0;
        for (int i = 0; i < n; ++i) {
          if (used_prev[i]) continue;
          for (int j = 0; j < n; ++j) {
            if (used_now[j]) continue;
            if (overlap(i, j) > best) {
              best = overlap(i, j);
              bi = i;
              bj = j;
            }
          }
        }
        used_prev[bi] = true;
        used_now[bj] = true;
        assign[bj] = branch_of[bi];
      }
      std::vector<int> new_branch_of(n);
      for (int j = 0; j < n; ++j) new_branch_of[j] = assign[j];
      branch_of = new_branch_of;
    }

    for (int j = 0; j < n; ++j) {
      StateVector v = evecs.col(j);
      fix_phase(v);
      EigenBranch& br = branches[assign[j]];
      br.times[k] = t;
      br.energies[k] = evals(j);
      br.compositions.row(k) = v.cwiseAbs2().real().transpose();
      br.vectors[k] = v;
    }
    prev_vecs = evecs;
    // Keep prev_vecs aligned with eigen indices; matching above maps through
    // branch_of, so no reordering is needed here.
  }

  return branches;
}

std::vector<BranchEndpointCharacter> branch_endpoint_characters(
    const std::vector<EigenBranch>& spectrum) {
  std::vector<BranchEndpointCharacter> out;
  out.reserve(spectrum.size());
  for (const auto& br : spectrum) {
    if (br.compositions.rows() < 2) {
      throw ValidationError("branch has fewer than two samples");
    }
    Eigen::Index i0 = 0, i1 = 0;
    br.compositions.row(0).maxCoeff(&i0);
    br.compositions.row(br.compositions.rows() - 1).maxCoeff(&i1);
    out.push_back(BranchEndpointCharacter{br.label, static_cast<int>(i0),
                                          static_cast<int>(i1)});
  }
  return out;
}

Eigen::Vector3d composition_rgb(const Eigen::VectorXd& c) {
  if (c.size() < 3) {
    throw ValidationError("composition needs at least three components");
  }
  // g -> blue, e -> red, f -> yellow.
  const double g = c(0), e = c(1), f = c(2);
  return Eigen::Vector3d(e + f, f, g);
}

}  // namespace qlzsm
