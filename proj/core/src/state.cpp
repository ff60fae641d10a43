#include "qlzsm/state.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace qlzsm {

PureState::PureState(StateVector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() < 2 || amps_.size() > 4) {
    throw ValidationError("pure state must have 2 to 4 amplitudes");
  }
  const double norm = amps_.norm();
  if (std::abs(norm * norm - 1.0) > 1e-9) {
    throw ValidationError("pure state not normalized: sum |a_i|^2 = " +
                          std::to_string(norm * norm));
  }
}

PureState PureState::normalized(const StateVector& amplitudes) {
  const double norm = amplitudes.norm();
  if (norm == 0.0) {
    throw ValidationError("cannot normalize the zero vector");
  }
  return PureState(StateVector(amplitudes / norm));
}

PureState PureState::basis_state(int n_levels, int index) {
  if (n_levels < 2 || n_levels > 4 || index < 0 || index >= n_levels) {
    throw ValidationError("basis_state: bad level count or index");
  }
  StateVector v(n_levels);
  v.setZero();
  v(index) = 1.0;
  return PureState(std::move(v));
}

Eigen::VectorXd PureState::populations() const {
  return amps_.cwiseAbs2().real();
}

DensityMatrix::DensityMatrix(LevelMatrix matrix) : m_(std::move(matrix)) {
  const auto n = m_.rows();
  if (n != m_.cols() || n < 2 || n > 4) {
    throw ValidationError("density matrix must be square, 2x2 to 4x4");
  }
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw ValidationError("density matrix not Hermitian");
  }
  if (std::abs(m_.trace().real() - 1.0) > 1e-9 ||
      std::abs(m_.trace().imag()) > 1e-9) {
    throw ValidationError("density matrix trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<LevelMatrix> es(m_,
                                                Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9) {
    throw ValidationError("density matrix has a negative eigenvalue: " +
                          std::to_string(es.eigenvalues().minCoeff()));
  }
}

DensityMatrix DensityMatrix::pure(const PureState& psi) {
  const auto& a = psi.amplitudes();
  return DensityMatrix(LevelMatrix(a * a.adjoint()));
}

DensityMatrix DensityMatrix::ground(int n_levels) {
  return pure(PureState::basis_state(n_levels, 0));
}

Eigen::VectorXd DensityMatrix::populations() const {
  return m_.diagonal().real();
}

}  // namespace qlzsm
