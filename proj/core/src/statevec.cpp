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

#include "iontrace/statevec.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

namespace iontrace {

double IonState::population_internal(int c) const {
  double p = 0.0;
  for (int x = 0; x < dims_.n_x; ++x)
    for (int y = 0; y < dims_.n_y; ++y) p += std::norm(amps_[dims_.index(c, x, y)]);
  return p;
}

double IonState::population_fock_at_least(int level) const {
  double p = 0.0;
  for (int c = 0; c < kInternalLevels; ++c)
    for (int x = 0; x < dims_.n_x; ++x)
      for (int y = 0; y < dims_.n_y; ++y)
        if (x >= level || y >= level) p += std::norm(amps_[dims_.index(c, x, y)]);
  return p;
}

double IonState::population_computational() const {
  double p = 0.0;
  for (int c = 0; c < 2; ++c)
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) p += std::norm(amps_[dims_.index(c, x, y)]);
  return p;
}

OperatorMatrix expm_antihermitian(const OperatorMatrix& g) {
  if (g.rows() != g.cols()) throw ContractError("expm: matrix must be square");
  double anti_dev = (g + g.adjoint()).cwiseAbs().maxCoeff();
  if (anti_dev > 1e-10)
    throw ContractError("expm: input is not anti-Hermitian (dev " +
                        std::to_string(anti_dev) + ")");
  // g = -iH with H Hermitian; exp(g) = V exp(-i diag) V^dag.
  OperatorMatrix h = Complex(0.0, 1.0) * g;
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> es(h);
  if (es.info() != Eigen::Success) throw ContractError("expm: eigensolver failed");
  Eigen::VectorXcd phases = (Complex(0.0, -1.0) * es.eigenvalues().array())
                                .exp()
                                .matrix()
                                .cast<Complex>();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

void apply_unitary(IonState& state, const OperatorMatrix& u) {
  if (u.rows() != state.amplitudes().size() || u.cols() != state.amplitudes().size())
    throw ContractError("apply_unitary: dimension mismatch");
  state.amplitudes() = u * state.amplitudes();
}

double unitarity_deviation(const OperatorMatrix& u) {
  OperatorMatrix d = u.adjoint() * u;
  d.diagonal().array() -= 1.0;
  return d.cwiseAbs().maxCoeff();
}

namespace {
double compare_flat(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  Eigen::Index k;
  double big = b.cwiseAbs().maxCoeff(&k);
  if (big == 0.0) throw ContractError("compare_up_to_global_phase: reference is zero");
  Complex phase = a[k] / b[k];
  double mag = std::abs(phase);
  phase = (mag == 0.0) ? Complex(1.0, 0.0) : phase / mag;
  return (a - phase * b).cwiseAbs().maxCoeff();
}
}  // namespace

double compare_up_to_global_phase(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ContractError("compare_up_to_global_phase: dimension mismatch");
  return compare_flat(a.reshaped(), b.reshaped());
}

double compare_up_to_global_phase(const StateVector& a, const StateVector& b) {
  if (a.size() != b.size())
    throw ContractError("compare_up_to_global_phase: dimension mismatch");
  return compare_flat(a, b);
}

BrightOutcome measure_internal_bright(IonState& state, RngStream& rng) {
  double p_dark = state.population_internal(kLevel0);
  bool dark = rng.next_double() < p_dark;
  const FockDims& d = state.dims();
  for (int c = 0; c < kInternalLevels; ++c) {
    bool keep = dark ? (c == kLevel0) : (c != kLevel0);
    if (keep) continue;
    for (int x = 0; x < d.n_x; ++x)
      for (int y = 0; y < d.n_y; ++y) state.amplitudes()[d.index(c, x, y)] = 0.0;
  }
  state.renormalize();
  return dark ? BrightOutcome::dark : BrightOutcome::bright;
}

Eigen::MatrixXcd motional_annihilation(int n) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

Eigen::Matrix4cd internal_projector(int row, int col) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(row, col) = 1.0;
  return m;
}

OperatorMatrix embed_internal(const Eigen::Matrix4cd& op, FockDims dims) {
  Eigen::MatrixXcd motion = Eigen::MatrixXcd::Identity(dims.n_x * dims.n_y, dims.n_x * dims.n_y);
  return Eigen::kroneckerProduct(op, motion);
}

OperatorMatrix embed_internal_fock_x(const Eigen::Matrix4cd& internal_op,
                                     const Eigen::MatrixXcd& x_op, FockDims dims) {
  Eigen::MatrixXcd iy = Eigen::MatrixXcd::Identity(dims.n_y, dims.n_y);
  return Eigen::kroneckerProduct(internal_op, Eigen::kroneckerProduct(x_op, iy).eval());
}

OperatorMatrix embed_internal_fock_y(const Eigen::Matrix4cd& internal_op,
                                     const Eigen::MatrixXcd& y_op, FockDims dims) {
  Eigen::MatrixXcd ix = Eigen::MatrixXcd::Identity(dims.n_x, dims.n_x);
  return Eigen::kroneckerProduct(internal_op, Eigen::kroneckerProduct(ix, y_op).eval());
}

void DensityOperator::validate(double tol) const {
  if (std::abs(entries.trace().real() - 1.0) > tol || std::abs(entries.trace().imag()) > tol)
    throw ContractError("density operator: trace != 1");
  if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw ContractError("density operator: not Hermitian");
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> es(entries);
  if (es.eigenvalues().minCoeff() < -tol)
    throw ContractError("density operator: negative eigenvalue");
}

}  // namespace iontrace
