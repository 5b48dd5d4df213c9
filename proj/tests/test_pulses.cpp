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

#include "iontrace/pulses.hpp"
#include "oracles.hpp"

using namespace iontrace;

namespace {
const FockDims kDims;

IonState applied(const Pulse& p, int c, int x, int y) {
  IonState s = IonState::basis(c, x, y, kDims);
  apply_unitary(s, pulse_unitary(p, kDims));
  return s;
}
}  // namespace

TEST_CASE("zero-angle carrier generator vanishes") {
  OperatorMatrix g = pulse_generator({PulseKind::carrier, 0.0, 0.3}, kDims);
  CHECK(g.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sideband generator annihilates |1_C, 0_X>") {
  OperatorMatrix g = pulse_generator({PulseKind::sideband_x, 1.1, 0.4}, kDims);
  CHECK(g.col(kDims.index(1, 0, 0)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sideband blocks are sqrt(n+1)-scaled two-level rotations") {
  double chi = 0.7, phi = 0.3;
  OperatorMatrix u = pulse_unitary({PulseKind::sideband_x, chi, phi}, kDims);
  for (int n = 0; n <= 2; ++n) {
    int lo = kDims.index(0, n, 0), hi = kDims.index(1, n + 1, 0);
    Eigen::Matrix2cd block;
    block << u(lo, lo), u(lo, hi), u(hi, lo), u(hi, hi);
    Eigen::Matrix2cd want = oracles::coupling_block(chi * std::sqrt(n + 1.0), phi);
    CHECK((block - want).cwiseAbs().maxCoeff() < 1e-10);
  }
  // Same scaling on mode Y.
  OperatorMatrix uy = pulse_unitary({PulseKind::sideband_y, chi, phi}, kDims);
  int lo = kDims.index(0, 0, 1), hi = kDims.index(1, 0, 2);
  Eigen::Matrix2cd block;
  block << uy(lo, lo), uy(lo, hi), uy(hi, lo), uy(hi, hi);
  CHECK((block - oracles::coupling_block(chi * std::sqrt(2.0), phi)).cwiseAbs().maxCoeff() <
        1e-10);
}

TEST_CASE("published pulse actions on the ground state") {
  // A carrier pi pulse at phase -pi/2 flips with coefficient exactly +1.
  IonState s = applied({PulseKind::carrier, M_PI, -M_PI / 2.0}, 0, 0, 0);
  CHECK(std::abs(s.amp(1, 0, 0) - Complex(1, 0)) < 1e-12);

  s = applied({PulseKind::sideband_x, M_PI, 0.0}, 0, 0, 0);
  CHECK(std::abs(std::abs(s.amp(1, 1, 0)) - 1.0) < 1e-12);
  CHECK(std::abs(s.amp(1, 1, 0) - Complex(1, 0)) < 1e-12);

  s = applied({PulseKind::sideband_x, M_PI / 2.0, 0.0}, 0, 0, 0);
  CHECK(std::abs(s.amp(0, 0, 0) - Complex(1 / std::sqrt(2.0), 0)) < 1e-12);
  CHECK(std::abs(s.amp(1, 1, 0) - Complex(1 / std::sqrt(2.0), 0)) < 1e-12);

  s = applied({PulseKind::sideband_y, M_PI / 2.0, -M_PI / 2.0}, 0, 0, 0);
  CHECK(std::abs(s.amp(0, 0, 0) - Complex(1 / std::sqrt(2.0), 0)) < 1e-12);
  CHECK(std::abs(s.amp(1, 0, 1) - Complex(0, 1 / std::sqrt(2.0))) < 1e-12);
}

TEST_CASE("pulse unitarity across kinds and angles") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> angle(-2.0 * M_PI, 2.0 * M_PI);
  for (PulseKind kind : {PulseKind::carrier, PulseKind::zeeman_plus, PulseKind::zeeman_minus,
                         PulseKind::sideband_x, PulseKind::sideband_y}) {
    for (int t = 0; t < 8; ++t) {
      OperatorMatrix u = pulse_unitary({kind, angle(rng), angle(rng)}, kDims);
      CHECK(unitarity_deviation(u) < 1e-10);
    }
  }
}

TEST_CASE("composition identity: angles add at fixed kind and phase") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  for (PulseKind kind : {PulseKind::carrier, PulseKind::zeeman_minus, PulseKind::sideband_x,
                         PulseKind::sideband_y}) {
    double a = angle(rng), b = angle(rng), phi = angle(rng);
    OperatorMatrix lhs =
        pulse_unitary({kind, a, phi}, kDims) * pulse_unitary({kind, b, phi}, kDims);
    OperatorMatrix rhs = pulse_unitary({kind, a + b, phi}, kDims);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("inverse identity for microwave pulses") {
  for (PulseKind kind :
       {PulseKind::carrier, PulseKind::zeeman_plus, PulseKind::zeeman_minus}) {
    double chi = 1.234, phi = -0.7;
    OperatorMatrix u = pulse_unitary({kind, chi, phi}, kDims);
    OperatorMatrix neg = pulse_unitary({kind, -chi, phi}, kDims);
    OperatorMatrix flipped = pulse_unitary({kind, chi, phi + M_PI}, kDims);
    CHECK((u.adjoint() - neg).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((u.adjoint() - flipped).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("microwave pulses leave both motional modes alone") {
  Eigen::MatrixXcd a = motional_annihilation(kDims.n_x);
  Eigen::MatrixXcd number = a.adjoint() * a;
  OperatorMatrix nx = embed_internal_fock_x(Eigen::Matrix4cd::Identity(), number, kDims);
  OperatorMatrix ny = embed_internal_fock_y(Eigen::Matrix4cd::Identity(), number, kDims);
  for (PulseKind kind :
       {PulseKind::carrier, PulseKind::zeeman_plus, PulseKind::zeeman_minus}) {
    OperatorMatrix u = pulse_unitary({kind, 0.9, 0.2}, kDims);
    CHECK((u * nx - nx * u).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((u * ny - ny * u).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("sideband pulses leave the shelving levels invariant") {
  for (PulseKind kind : {PulseKind::sideband_x, PulseKind::sideband_y}) {
    OperatorMatrix u = pulse_unitary({kind, 2.1, 0.8}, kDims);
    for (int lvl : {kLevelZPlus, kLevelZMinus}) {
      for (int x = 0; x < 2; ++x) {
        int idx = kDims.index(lvl, x, 0);
        CHECK(std::abs(u(idx, idx) - Complex(1, 0)) < 1e-12);
      }
    }
  }
}

TEST_CASE("canonical phase display") {
  CHECK(canonical_phase(0.0) == 0.0);
  CHECK(canonical_phase(3.0 * M_PI) == doctest::Approx(M_PI));
  CHECK(canonical_phase(-M_PI) == doctest::Approx(M_PI));
  CHECK(canonical_phase(-0.25) == doctest::Approx(-0.25));
}
