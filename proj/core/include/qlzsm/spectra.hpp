#pragma once

#include <vector>

#include "qlzsm/model.hpp"

namespace qlzsm {

// One adiabatically tracked eigenvalue branch of the instantaneous spectrum.
struct EigenBranch {
  std::vector<double> times;            // us
  std::vector<double> energies;        // rad/us
  Eigen::MatrixXd compositions;        // n_samples x n_levels, rows sum to 1
  std::vector<StateVector> vectors;    // phase-fixed eigenvectors per sample
  int label = 0;
  std::vector<int> degenerate_samples;  // samples where tracking fell back
                                        // to energy order
};

// Diagonalizes H(t) on an even time grid over the pulse window and connects
// eigenpairs between consecutive samples by greedy maximum-overlap matching.
// The global phase of each eigenvector is fixed by making its
// largest-magnitude component real positive.
std::vector<EigenBranch> instantaneous_spectrum(const SystemSpec& system,
                                                const DriveSpec& drive,
                                                int n_samples);

struct BranchEndpointCharacter {
  int branch = 0;
  int initial_level = 0;  // argmax composition at t = -T/2
  int final_level = 0;    // argmax composition at t = +T/2
};

std::vector<BranchEndpointCharacter> branch_endpoint_characters(
    const std::vector<EigenBranch>& spectrum);

// Plot-data color: |g|^2 blue + |e|^2 red + |f|^2 yellow, returned as (r,g,b).
// A fourth component, when present, contributes no color.
Eigen::Vector3d composition_rgb(const Eigen::VectorXd& composition);

}  // namespace qlzsm
