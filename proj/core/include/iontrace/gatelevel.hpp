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

#ifndef IONTRACE_GATELEVEL_HPP
#define IONTRACE_GATELEVEL_HPP

#include <cstdint>
#include <utility>

#include "iontrace/protocol.hpp"

namespace iontrace::gatelevel {

inline constexpr int kMaxQubits = 6;  // desk-scale cap: vectors stay <= 2^13

/// Pure state of 1 control qubit (x) n-qubit X register (x) n-qubit Y
/// register; flat index c*4^n + l*2^n + m.
struct RegisterState {
  int n = 1;
  Eigen::VectorXcd amps;

  static RegisterState ground(int n);
  int dim() const { return 2 << (2 * n); }
};

/// Monolithic register swap conditioned on the control (dense matrix form).
Eigen::MatrixXcd cswap_monolithic(int n);

/// The same operator as the product of n per-pair controlled swaps.
Eigen::MatrixXcd cswap_pairwise(int n);

/// In-place controlled register swap on a state (permutation, no matrix).
void apply_cswap(RegisterState& s);

/// In-place application of u to the X register (u (x) I elsewhere).
void apply_on_x_register(RegisterState& s, const Eigen::MatrixXcd& u);

/// Branch preparation: H on the control, bit-setting NOTs, then the
/// controlled swap; yields (|0,l,m> + |1,m,l>)/sqrt2 exactly.
RegisterState branch_state(int n, std::uint32_t l, std::uint32_t m);

/// Exact sigma_1 expectation on the control of a register state.
double control_x_expectation(const RegisterState& s);

/// Sampled modular estimate of |tr(u)/2^n|^2: K uniformly drawn register
/// pairs, shots_per_pair detections each.
EstimateResult modular_estimate(const Eigen::MatrixXcd& u, long long pairs,
                                long long shots_per_pair, std::uint64_t seed);

/// Exact modular expectation (all 4^n branch pairs enumerated). At n=1 this
/// must match the pulse-level exact expectation.
double exact_expectation(const Eigen::MatrixXcd& u);

/// +-1 diagonal phase insertions around the two controlled swaps. The same
/// diagonal must flank both swaps; the relay insertion acts on control (x) X
/// and is padded with identity on Y.
struct InsertedPhases {
  Eigen::VectorXd swap_flank;  // size 2^{2n+1}, entries +-1
  Eigen::VectorXd relay;       // size 2^{n+1}, entries +-1

  static InsertedPhases identity(int n);
  void validate(int n) const;
};

/// Exact sigma_1 expectation of the phase-decorated circuit
/// F Z1 Z2 U_X Z2 Z1 F applied to the correlated mixture; equals
/// |tr(u)/2^n|^2 for every valid insertion.
double phase_invariance_expectation(const Eigen::MatrixXcd& u, const InsertedPhases& phases);

/// Exact one-clean-qubit evaluation with a controlled-U: returns
/// (Re, Im) of tr(u)/2^n.
std::pair<double, double> standard_dqc1(const Eigen::MatrixXcd& u);

}  // namespace iontrace::gatelevel

#endif  // IONTRACE_GATELEVEL_HPP
