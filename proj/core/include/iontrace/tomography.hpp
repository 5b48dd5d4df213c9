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

#ifndef IONTRACE_TOMOGRAPHY_HPP
#define IONTRACE_TOMOGRAPHY_HPP

#include <array>
#include <json.hpp>

#include "iontrace/protocol.hpp"

namespace iontrace {

/// One relative-phase measurement between two major truth-table elements
/// <l|F|m> and <k|F|q> (all entries of unit modulus in theory).
struct PhasePairSpec {
  Basis3 l, m;  // reference element
  Basis3 k, q;  // measured element
};

/// The eight phase measurements characterizing the gate, in a fixed order.
/// The reference element <000|F|000> is defined to have phase 0.
const std::array<PhasePairSpec, 8>& major_phase_pairs();

struct TruthTable {
  // amplitudes(out, in) = measured |<out|F|in>| over the computational basis.
  Eigen::Matrix<double, 8, 8> amplitudes;
  std::array<double, 8> phases{};  // one per major_phase_pairs() entry, radians
  long long shots_per_cell = 0;
  std::uint64_t seed = 0;
  double lambda_f = 1.0;
};

struct FidelityReport {
  double classical_fidelity = 0.0;
  std::array<double, 8> per_input_correct{};
  std::array<double, 8> half_width_95{};
  long long shots_per_cell = 0;
};

/// Truth-table measurement of the phase-tagged Fredkin gate: prepares inputs
/// with the preparation rows, routes outputs to |111> with the readout rows,
/// and reads the |111> population through the dark-level mapper. Noise is a
/// depolarizing survival probability applied around the Fredkin application
/// only (trajectory realization: the state is replaced by a uniformly drawn
/// computational basis state).
class Tomograph {
 public:
  explicit Tomograph(FockDims dims = {});

  /// Dark fraction of `shots` runs of: ground -> prepare input -> Fredkin ->
  /// route output -> mapper -> detection. input/output are computational
  /// basis codes 0..7 (c*4 + x*2 + y).
  double population(int input, int output, long long shots, const NoiseConfig& f_noise,
                    std::uint64_t seed) const;

  /// Relative phase arg(<k|F|q> / <l|F|m>) via the two superposition
  /// preparations and four output projections, combined with a two-argument
  /// arctangent and circularly averaged. Throws ParameterError unless both
  /// elements are major.
  double phase_pair(const PhasePairSpec& pair, long long shots, std::uint64_t seed) const;

  /// The two single-preparation estimates phase_pair averages; exposed so the
  /// consistency of the two preparations can be checked.
  std::pair<double, double> phase_pair_estimates(const PhasePairSpec& pair, long long shots,
                                                 std::uint64_t seed) const;

  TruthTable full_truth_table(long long shots_per_cell, const NoiseConfig& f_noise,
                              std::uint64_t seed) const;

  FidelityReport classical_fidelity(const TruthTable& table) const;

  nlohmann::json report(const TruthTable& table, const FidelityReport& fidelity) const;

  /// Test hook: replace the Fredkin matrix (e.g. with a synthetically
  /// phase-rotated copy) while keeping the rest of the pipeline.
  void set_fredkin_matrix(OperatorMatrix f);

 private:
  struct CellResult {
    double dark_fraction;
  };
  double measure_population(const RowKey& input_key, const RowKey& output_key,
                            long long shots, const NoiseConfig& f_noise, std::uint64_t seed,
                            std::uint64_t stream) const;

  FockDims dims_;
  OperatorMatrix fredkin_;
  OperatorMatrix mapper_;
};

}  // namespace iontrace

#endif  // IONTRACE_TOMOGRAPHY_HPP
