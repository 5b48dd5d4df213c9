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

#ifndef IONTRACE_QUBIT_HPP
#define IONTRACE_QUBIT_HPP

#include <complex>
#include <Eigen/Dense>

#include "iontrace/errors.hpp"

namespace iontrace {

/// Pauli matrix sigma_k, k in {1,2,3}.
inline Eigen::Matrix2cd pauli_matrix(int k) {
  Eigen::Matrix2cd m;
  switch (k) {
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw ParameterError("pauli axis must be 1, 2 or 3");
  }
  return m;
}

/// Involutory rotation axis parameterized by spherical angles:
/// [[-cos theta, sin theta e^{i phi}], [sin theta e^{-i phi}, cos theta]].
inline Eigen::Matrix2cd rotation_axis(double theta, double phi) {
  std::complex<double> off = std::sin(theta) * std::exp(std::complex<double>(0, phi));
  Eigen::Matrix2cd m;
  m << -std::cos(theta), off, std::conj(off), std::cos(theta);
  return m;
}

/// exp(-i chi/2 A) for an involution A (A^2 = I): cos(chi/2) I - i sin(chi/2) A.
inline Eigen::Matrix2cd involution_rotation(double chi, const Eigen::Matrix2cd& axis) {
  return std::cos(chi / 2.0) * Eigen::Matrix2cd::Identity() -
         std::complex<double>(0, std::sin(chi / 2.0)) * axis;
}

inline Eigen::Matrix2cd pauli_rotation_matrix(int axis, double chi) {
  return involution_rotation(chi, pauli_matrix(axis));
}

inline Eigen::Matrix2cd euler_rotation_matrix(double chi, double theta, double phi) {
  return involution_rotation(chi, rotation_axis(theta, phi));
}

}  // namespace iontrace

#endif  // IONTRACE_QUBIT_HPP
