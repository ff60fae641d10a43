#pragma once

#include <Eigen/Dense>

#include "qlzsm/model.hpp"

namespace qlzsm {

// Normalized complex state vector of a 2..4 level system.
class PureState {
 public:
  // Checks normalization to 1e-9; use normalized() to build from an
  // unnormalized vector.
  explicit PureState(StateVector amplitudes);

  static PureState normalized(const StateVector& amplitudes);
  static PureState basis_state(int n_levels, int index);

  const StateVector& amplitudes() const { return amps_; }
  int dim() const { return static_cast<int>(amps_.size()); }
  Eigen::VectorXd populations() const;

 private:
  StateVector amps_;
};

// Hermitian, unit-trace, positive-semidefinite matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(LevelMatrix matrix);

  static DensityMatrix pure(const PureState& psi);
  static DensityMatrix ground(int n_levels);

  const LevelMatrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  Eigen::VectorXd populations() const;

 private:
  LevelMatrix m_;
};

}  // namespace qlzsm
