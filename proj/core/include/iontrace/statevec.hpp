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

#ifndef IONTRACE_STATEVEC_HPP
#define IONTRACE_STATEVEC_HPP

#include <complex>
#include <Eigen/Dense>

#include "iontrace/errors.hpp"
#include "iontrace/rng.hpp"

namespace iontrace {

using Complex = std::complex<double>;
using OperatorMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

// Internal levels of the ion, in this fixed order. |0> and |1> are the qubit;
// |+Z> and |-Z> are the ancillary shelving levels.
inline constexpr int kLevel0 = 0;
inline constexpr int kLevel1 = 1;
inline constexpr int kLevelZPlus = 2;
inline constexpr int kLevelZMinus = 3;
inline constexpr int kInternalLevels = 4;

/// Fock truncation depths of the two motional modes. The default of 4 keeps
/// one buffer level above the n=2 excursion the composite pulses use, so any
/// leakage is visible instead of silently projected away.
struct FockDims {
  int n_x = 4;
  int n_y = 4;

  int dim() const { return kInternalLevels * n_x * n_y; }
  int index(int c, int x, int y) const { return c * (n_x * n_y) + x * n_y + y; }
  bool operator==(const FockDims&) const = default;
};

/// Pure state of (4-level internal) x Fock_X x Fock_Y, flat index
/// c*(N_X*N_Y) + x*N_Y + y.
class IonState {
 public:
  explicit IonState(FockDims dims = {})
      : dims_(dims), amps_(StateVector::Zero(dims.dim())) {}

  static IonState ground(FockDims dims = {}) { return basis(0, 0, 0, dims); }

  static IonState basis(int c, int x, int y, FockDims dims = {}) {
    IonState s(dims);
    s.amps_[dims.index(c, x, y)] = 1.0;
    return s;
  }

  const FockDims& dims() const { return dims_; }
  const StateVector& amplitudes() const { return amps_; }
  StateVector& amplitudes() { return amps_; }

  Complex amp(int c, int x, int y) const { return amps_[dims_.index(c, x, y)]; }

  double norm() const { return amps_.norm(); }

  void renormalize() {
    double n = amps_.norm();
    if (n == 0.0) throw ContractError("cannot renormalize a zero state");
    amps_ /= n;
  }

  /// Total population in internal level c.
  double population_internal(int c) const;

  /// Total population with Fock index >= level in either mode (the leakage
  /// sentinel; should stay below 1e-9 for level 3 across all library gates).
  double population_fock_at_least(int level) const;

  /// Total population on the 8 computational basis states (c,x,y in {0,1}).
  double population_computational() const;

 private:
  FockDims dims_;
  StateVector amps_;
};

/// exp(g) for anti-Hermitian g, exact to rounding via eigendecomposition of
/// the Hermitian matrix i*g. Throws ContractError if g is not anti-Hermitian
/// within 1e-10.
OperatorMatrix expm_antihermitian(const OperatorMatrix& g);

/// amplitudes <- u * amplitudes. Throws on dimension mismatch.
void apply_unitary(IonState& state, const OperatorMatrix& u);

/// ||U^dag U - I||_max, for unitarity checks.
double unitarity_deviation(const OperatorMatrix& u);

/// min over theta of ||a - e^{i theta} b||_max; theta is extracted from the
/// largest-magnitude entry of b. Throws ContractError if b is identically 0.
double compare_up_to_global_phase(const OperatorMatrix& a, const OperatorMatrix& b);
double compare_up_to_global_phase(const StateVector& a, const StateVector& b);

enum class BrightOutcome { dark, bright };

/// Fluorescence detection: |0_C> is dark, every F=1 level (|1_C>, |+Z>, |-Z>)
/// is bright. Samples from the rng stream, collapses and renormalizes.
BrightOutcome measure_internal_bright(IonState& state, RngStream& rng);

/// Annihilation operator on an n-level truncated mode.
Eigen::MatrixXcd motional_annihilation(int n);

/// |row><col| on the 4 internal levels.
Eigen::Matrix4cd internal_projector(int row, int col);

/// Embeddings into the full space for the given dims.
OperatorMatrix embed_internal(const Eigen::Matrix4cd& op, FockDims dims);
OperatorMatrix embed_internal_fock_x(const Eigen::Matrix4cd& internal_op,
                                     const Eigen::MatrixXcd& x_op, FockDims dims);
OperatorMatrix embed_internal_fock_y(const Eigen::Matrix4cd& internal_op,
                                     const Eigen::MatrixXcd& y_op, FockDims dims);

/// Hermitian trace-one operator; used only by the exact-expectation oracle.
struct DensityOperator {
  OperatorMatrix entries;

  static DensityOperator zero(int dim) {
    return DensityOperator{OperatorMatrix::Zero(dim, dim)};
  }

  void accumulate_pure(const StateVector& psi, double weight) {
    entries.noalias() += weight * psi * psi.adjoint();
  }

  void evolve(const OperatorMatrix& u) { entries = u * entries * u.adjoint(); }

  double expectation(const OperatorMatrix& observable) const {
    return (observable * entries).trace().real();
  }

  /// Trace 1, Hermitian, eigenvalues >= -1e-9. Throws ContractError otherwise.
  void validate(double tol = 1e-9) const;
};

}  // namespace iontrace

#endif  // IONTRACE_STATEVEC_HPP
