#include <doctest.h>

#include "qlzsm/state.hpp"

using namespace qlzsm;

TEST_SUITE("state") {

TEST_CASE("pure state normalization checks") {
  StateVector v(3);
  v << 1.0, 0.0, 0.0;
  CHECK_NOTHROW(PureState{v});

  v << 0.9, 0.0, 0.0;
  CHECK_THROWS_AS(PureState{v}, ValidationError);
  CHECK_NOTHROW(PureState::normalized(v));

  v.setZero();
  CHECK_THROWS_AS(PureState::normalized(v), ValidationError);

  const auto g = PureState::basis_state(3, 0);
  CHECK(g.populations()(0) == 1.0);
  CHECK(g.dim() == 3);
  CHECK_THROWS_AS(PureState::basis_state(3, 3), ValidationError);
  CHECK_THROWS_AS(PureState::basis_state(7, 0), ValidationError);
}

TEST_CASE("density matrix invariants") {
  CHECK_NOTHROW(DensityMatrix::ground(3));
  CHECK_NOTHROW(DensityMatrix::ground(4));

  LevelMatrix m(3, 3);
  m.setZero();
  m(0, 0) = 0.5;
  m(1, 1) = 0.5;
  CHECK_NOTHROW(DensityMatrix{m});

  // trace off
  m(1, 1) = 0.6;
  CHECK_THROWS_AS(DensityMatrix{m}, ValidationError);

  // not Hermitian
  m(1, 1) = 0.5;
  m(0, 1) = Complex(0.1, 0.0);
  CHECK_THROWS_AS(DensityMatrix{m}, ValidationError);

  // Hermitian, unit trace, but indefinite
  m(0, 1) = Complex(0.9, 0.0);
  m(1, 0) = Complex(0.9, 0.0);
  CHECK_THROWS_AS(DensityMatrix{m}, ValidationError);

  const auto rho = DensityMatrix::pure(PureState::basis_state(3, 2));
  CHECK(rho.populations()(2) == 1.0);
}

}  // TEST_SUITE
