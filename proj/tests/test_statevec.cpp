// Copyright 2026 The iontrace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include "iontrace/statevec.hpp"
#include "oracles.hpp"

using namespace iontrace;

TEST_CASE("expm of the zero generator is the identity") {
  OperatorMatrix z = OperatorMatrix::Zero(6, 6);
  OperatorMatrix e = expm_antihermitian(z);
  CHECK((e - OperatorMatrix::Identity(6, 6)).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("expm of a quarter-turn generator swaps the basis with a sign") {
  // g = (pi/2)(|1><0| - |0><1|): |0> -> |1>, |1> -> -|0>.
  OperatorMatrix g = OperatorMatrix::Zero(2, 2);
  g(1, 0) = M_PI / 2.0;
  g(0, 1) = -M_PI / 2.0;
  OperatorMatrix e = expm_antihermitian(g);
  CHECK(std::abs(e(1, 0) - Complex(1, 0)) < 1e-12);
  CHECK(std::abs(e(0, 1) - Complex(-1, 0)) < 1e-12);
  CHECK(std::abs(e(0, 0)) < 1e-12);
  CHECK(std::abs(e(1, 1)) < 1e-12);
}

TEST_CASE("expm matches the series oracle on random generators") {
  std::mt19937_64 rng(0xABCDu);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXcd g = oracles::random_antihermitian(8, rng);
    OperatorMatrix e = expm_antihermitian(g);
    CHECK((e - oracles::expm_series(g)).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(unitarity_deviation(e) < 1e-10);
  }
}

TEST_CASE("expm rejects non-anti-Hermitian input") {
  OperatorMatrix g = OperatorMatrix::Identity(3, 3);
  CHECK_THROWS_AS(expm_antihermitian(g), ContractError);
}

TEST_CASE("apply_unitary basics") {
  FockDims dims;
  IonState s = IonState::ground(dims);

  SUBCASE("identity leaves the state alone") {
    IonState before = s;
    apply_unitary(s, OperatorMatrix::Identity(dims.dim(), dims.dim()));
    CHECK((s.amplitudes() - before.amplitudes()).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("an internal flip permutes the basis") {
    Eigen::Matrix4cd flip = Eigen::Matrix4cd::Identity();
    flip(0, 0) = flip(1, 1) = 0.0;
    flip(0, 1) = flip(1, 0) = 1.0;
    apply_unitary(s, embed_internal(flip, dims));
    CHECK(std::abs(s.amp(1, 0, 0) - Complex(1, 0)) < 1e-15);
  }

  SUBCASE("random unitary preserves the norm") {
    std::mt19937_64 rng(7);
    Eigen::MatrixXcd u = oracles::random_unitary(dims.dim(), rng);
    std::normal_distribution<double> normal;
    for (int i = 0; i < dims.dim(); ++i)
      s.amplitudes()[i] = Complex(normal(rng), normal(rng));
    s.renormalize();
    apply_unitary(s, u);
    CHECK(std::abs(s.norm() - 1.0) < 1e-12);
  }

  SUBCASE("dimension mismatch throws") {
    CHECK_THROWS_AS(apply_unitary(s, OperatorMatrix::Identity(3, 3)), ContractError);
  }
}

TEST_CASE("fluorescence detection: dark and bright assignments") {
  FockDims dims;
  RngStream rng = substream(1, 2, 3);

  SUBCASE("|0_C 0 0> is always dark") {
    for (int i = 0; i < 50; ++i) {
      IonState s = IonState::ground(dims);
      CHECK(measure_internal_bright(s, rng) == BrightOutcome::dark);
    }
  }

  SUBCASE("|1_C 1_X 0_Y> is always bright") {
    for (int i = 0; i < 50; ++i) {
      IonState s = IonState::basis(1, 1, 0, dims);
      CHECK(measure_internal_bright(s, rng) == BrightOutcome::bright);
    }
  }

  SUBCASE("the shelving levels count as bright") {
    IonState s = IonState::basis(kLevelZMinus, 0, 0, dims);
    CHECK(measure_internal_bright(s, rng) == BrightOutcome::bright);
  }

  SUBCASE("an equal superposition is dark half the time") {
    int dark = 0;
    const int shots = 20000;
    for (int i = 0; i < shots; ++i) {
      IonState s(dims);
      s.amplitudes()[dims.index(0, 0, 0)] = 1.0 / std::sqrt(2.0);
      s.amplitudes()[dims.index(1, 0, 0)] = 1.0 / std::sqrt(2.0);
      RngStream shot = substream(9, 9, static_cast<std::uint64_t>(i));
      if (measure_internal_bright(s, shot) == BrightOutcome::dark) {
        ++dark;
        CHECK(std::abs(s.amp(0, 0, 0) - Complex(1, 0)) < 1e-12);  // collapsed
      }
    }
    double frac = static_cast<double>(dark) / shots;
    CHECK(std::abs(frac - 0.5) < 4.0 / std::sqrt(static_cast<double>(shots)));
  }
}

TEST_CASE("comparison up to a global phase") {
  std::mt19937_64 rng(21);
  Eigen::MatrixXcd u = oracles::random_unitary(6, rng);

  CHECK(compare_up_to_global_phase(u, u) < 1e-15);
  CHECK(compare_up_to_global_phase(u, OperatorMatrix(-u)) < 1e-15);
  CHECK(compare_up_to_global_phase(u, OperatorMatrix(Complex(0, 1) * u)) < 1e-15);

  // A relative phase is not a global phase.
  Eigen::VectorXcd d = Eigen::VectorXcd::Ones(6);
  d[1] = -1.0;
  OperatorMatrix twisted = u * d.asDiagonal();
  CHECK(compare_up_to_global_phase(twisted, u) > 0.1);

  OperatorMatrix zero = OperatorMatrix::Zero(6, 6);
  CHECK_THROWS_AS(compare_up_to_global_phase(u, zero), ContractError);
}

TEST_CASE("density operator validation") {
  std::mt19937_64 rng(4);
  DensityOperator rho = DensityOperator::zero(8);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(8);
  psi[0] = psi[3] = 1.0 / std::sqrt(2.0);
  rho.accumulate_pure(psi, 0.5);
  Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(8);
  phi[5] = 1.0;
  rho.accumulate_pure(phi, 0.5);
  CHECK_NOTHROW(rho.validate());

  Eigen::MatrixXcd u = oracles::random_unitary(8, rng);
  rho.evolve(u);
  CHECK_NOTHROW(rho.validate());

  SUBCASE("trace must be one") {
    rho.entries *= 2.0;
    CHECK_THROWS_AS(rho.validate(), ContractError);
  }
  SUBCASE("must be Hermitian") {
    rho.entries(0, 1) += Complex(0, 0.5);
    CHECK_THROWS_AS(rho.validate(), ContractError);
  }
  SUBCASE("must be positive") {
    rho.entries -= 0.2 * Eigen::MatrixXcd::Identity(8, 8);
    rho.entries(0, 0) += 8 * 0.2;  // keep trace 1
    CHECK_THROWS_AS(rho.validate(), ContractError);
  }
}

TEST_CASE("leakage sentinel accounting") {
  FockDims dims;
  IonState s(dims);
  s.amplitudes()[dims.index(0, 3, 0)] = 1.0;
  CHECK(s.population_fock_at_least(3) == doctest::Approx(1.0));
  CHECK(s.population_fock_at_least(2) == doctest::Approx(1.0));
  CHECK(IonState::ground(dims).population_fock_at_least(3) == 0.0);
}
