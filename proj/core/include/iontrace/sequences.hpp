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

#ifndef IONTRACE_SEQUENCES_HPP
#define IONTRACE_SEQUENCES_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "iontrace/pulses.hpp"

namespace iontrace {

/// Analytic action of a gate restricted to a named set of basis states.
struct SubspaceTarget {
  std::vector<int> basis;  // flat state indices, in target row/column order
  OperatorMatrix matrix;
};

/// A named, ordered pulse sequence. Pulses are listed chronologically; the
/// precomposed matrix is last * ... * first.
struct CompositeGate {
  std::string name;
  std::vector<Pulse> pulses;
  std::optional<SubspaceTarget> target;
  std::string phase_convention;  // residual phase bookkeeping, if any

  OperatorMatrix matrix(FockDims dims = {}) const;

  /// Up-to-global-phase deviation of the precomposed matrix (restricted to
  /// target.basis) from target.matrix. Requires a target.
  double target_deviation(FockDims dims = {}) const;
};

/// Derived angles of the sideband-composite swap: the middle pulse phase
/// offset alpha and the common phase gamma. Rejects chi outside [0, pi],
/// where the arccos arguments would be out of domain or unused by the
/// published sequences.
struct SwapParams {
  double alpha;
  double gamma;

  static SwapParams modified_swap(double chi, double phi);
};

// --- analytic targets ---------------------------------------------------

/// The 4x4 target of the modified swap on basis
/// |0_C 0_X>, |1_C 0_X>, |0_C 1_X>, |1_C 1_X> (mode Y untouched).
Eigen::Matrix4cd modified_swap_target(double chi, double phi);

/// The 8x8 target of the phase-tagged Fredkin gate on the computational
/// basis |0_C0_X0_Y> ... |1_C1_X1_Y>: diagonal ones except the central block
/// <101|F|110> = -e^{i phi}, <110|F|101> = e^{-i phi}.
Eigen::Matrix<Complex, 8, 8> fredkin_target(double phi);

/// Plain controlled swap of the two motional qubits (8x8, same basis).
Eigen::Matrix<Complex, 8, 8> cswap_matrix();

/// Sign bookkeeping. fredkin_target(0) = cswap * fredkin_phase_diag, and the
/// pulse preprocessing prepares states that differ from ideal CSWAP-prepared
/// ones by the same diagonal; the two defects cancel in the protocol. The
/// -1 sits on |1_C 1_X 0_Y>.
Eigen::Matrix<Complex, 8, 8> fredkin_phase_diag();

/// Sign defect of the modified-swap outsourcing sandwich, on the
/// modified-swap basis (the -1 sits on |0_C 1_X>).
Eigen::Matrix4cd swap_relay_phase_diag();

/// Flat indices of the 8 computational basis states in |cxy> binary order.
std::array<int, 8> computational_basis_indices(FockDims dims = {});

/// Flat indices of the modified-swap basis at fixed Y Fock level.
std::array<int, 4> modified_swap_basis_indices(FockDims dims, int y, bool mode_x);

// --- composite gate builders (Tables of pulse sequences) -----------------

/// Three-carrier synthesis of an arbitrary qubit rotation
/// exp(-i chi/2 sigma_{theta,phi}) on the internal qubit, up to global phase.
CompositeGate synth_u(double chi, double theta, double phi);

/// Modified swap between the internal qubit and motional qubit X (or Y):
/// a chi-rotation between |0_C 0_X> and |1_C 1_X> leaving |1_C 0_X> and
/// |0_C 1_X> fixed. Population transiently visits |1_C 2_X> and returns.
CompositeGate s_x(double chi, double phi);
CompositeGate s_y(double chi, double phi);

/// The 11-pulse phase-tagged Fredkin gate (shelves |0_C> in the Zeeman
/// levels, swaps the motional qubits on the |1_C> branch).
CompositeGate f_gate(double phi);

/// Preparation circuit for branch (l, m) of the mixed preprocessing state.
CompositeGate preprocess_circuit(int l, int m);

/// The state preprocess_circuit(l, m) prepares from ground (up to the global
/// phase recorded in the gate's phase_convention).
StateVector preprocess_target(int l, int m, FockDims dims = {});

/// Simultaneous pi transfer on |0_C 0_X> <-> |1_C 1_X> and
/// |0_C 1_X> <-> |1_C 2_X> (and the Y analogue).
CompositeGate p_x(double phi);
CompositeGate p_y(double phi);

/// Maps |1_C1_X1_Y> to the dark level |0_C> and every other computational
/// basis state to a bright (F=1) level. Input must not populate Fock > 1.
CompositeGate measure_111_mapper();

// --- truth-table preparation / readout rows -------------------------------

struct Basis3 {
  int c, x, y;
  bool operator==(const Basis3&) const = default;
  int code() const { return c * 4 + x * 2 + y; }
};

/// Key of one preparation/readout table row: a single basis state, or
/// (|a> + |b>)/sqrt2, or (|a> + i|b>)/sqrt2.
struct RowKey {
  enum class Kind { single, plus, plus_i } kind;
  Basis3 a;
  Basis3 b{};  // ignored for single
};

int prep_row_count();     // published preparation rows (|000> -> key state)
int readout_row_count();  // published readout rows (key state -> |111>)

/// Row by table position (0-based). Throws ParameterError on bad index.
CompositeGate r_i(int index);
CompositeGate r_o(int index);

RowKey r_i_key(int index);
RowKey r_o_key(int index);

/// Row lookup by key. The identity rows (|000> prep, |111> readout) exist
/// implicitly as empty sequences. Throws ParameterError if no row matches.
CompositeGate r_i_for(const RowKey& key);
CompositeGate r_o_for(const RowKey& key);

/// The state a RowKey denotes.
StateVector row_state(const RowKey& key, FockDims dims = {});

/// Every gate the sequence library defines, for invariant sweeps: the
/// preparation branches, swap composites, Fredkin, transfer/readout rows and
/// the measurement mapper.
std::vector<CompositeGate> standard_library();

}  // namespace iontrace

#endif  // IONTRACE_SEQUENCES_HPP
