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

#include "iontrace/tomography.hpp"

#include <cmath>

namespace iontrace {

namespace {

Basis3 from_code(int code) { return Basis3{(code >> 2) & 1, (code >> 1) & 1, code & 1}; }

std::string code_name(const Basis3& b) {
  return std::to_string(b.c) + std::to_string(b.x) + std::to_string(b.y);
}

// Major elements of the ideal gate: unit-modulus entries (out, in).
bool is_major(const Basis3& out, const Basis3& in) {
  int o = out.code(), i = in.code();
  if (o == i) return o != 5 && o != 6;
  return (o == 5 && i == 6) || (o == 6 && i == 5);
}

// Ideal output code for each input under the gate (signs ignored).
int ideal_output(int input) {
  if (input == 5) return 6;
  if (input == 6) return 5;
  return input;
}

}  // namespace

const std::array<PhasePairSpec, 8>& major_phase_pairs() {
  static const std::array<PhasePairSpec, 8> pairs = {{
      {from_code(0), from_code(0), from_code(4), from_code(4)},
      {from_code(0), from_code(0), from_code(5), from_code(6)},
      {from_code(0), from_code(0), from_code(6), from_code(5)},
      {from_code(1), from_code(1), from_code(5), from_code(6)},
      {from_code(1), from_code(1), from_code(7), from_code(7)},
      {from_code(2), from_code(2), from_code(6), from_code(5)},
      {from_code(2), from_code(2), from_code(7), from_code(7)},
      {from_code(3), from_code(3), from_code(7), from_code(7)},
  }};
  return pairs;
}

Tomograph::Tomograph(FockDims dims) : dims_(dims) {
  fredkin_ = f_gate(0.0).matrix(dims_);
  mapper_ = measure_111_mapper().matrix(dims_);
}

void Tomograph::set_fredkin_matrix(OperatorMatrix f) {
  if (f.rows() != dims_.dim() || f.cols() != dims_.dim())
    throw ParameterError("replacement gate has the wrong dimension");
  fredkin_ = std::move(f);
}

double Tomograph::measure_population(const RowKey& input_key, const RowKey& output_key,
                                     long long shots, const NoiseConfig& f_noise,
                                     std::uint64_t seed, std::uint64_t stream) const {
  if (shots <= 0) throw ParameterError("shot count must be positive");
  OperatorMatrix prep = r_i_for(input_key).matrix(dims_);
  OperatorMatrix route = r_o_for(output_key).matrix(dims_);

  auto dark_probability = [&](const StateVector& before_mapper) {
    IonState s(dims_);
    s.amplitudes() = before_mapper;
    if (s.population_fock_at_least(2) > 1e-9)
      throw ContractError("dark-level mapper input populates Fock levels above 1");
    apply_unitary(s, mapper_);
    return s.population_internal(kLevel0);
  };

  // The pipeline is deterministic per trajectory branch; precompute the dark
  // probability of the surviving branch and of each depolarized branch.
  IonState prepared = IonState::ground(dims_);
  apply_unitary(prepared, prep);
  double p_survived = dark_probability(route * (fredkin_ * prepared.amplitudes()));
  std::array<double, 8> p_depolarized{};
  if (f_noise.lambda < 1.0) {
    auto comp = computational_basis_indices(dims_);
    for (int b = 0; b < 8; ++b) {
      StateVector v = StateVector::Zero(dims_.dim());
      v[comp[b]] = 1.0;
      p_depolarized[b] = dark_probability(route * v);
    }
  }

  long long dark = 0;
  for (long long i = 0; i < shots; ++i) {
    RngStream rng = substream(seed, stream, static_cast<std::uint64_t>(i));
    double p;
    if (rng.next_double() < f_noise.lambda) {
      p = p_survived;
    } else {
      p = p_depolarized[rng.next_below(8)];
    }
    if (rng.next_double() < p) ++dark;
  }
  return static_cast<double>(dark) / static_cast<double>(shots);
}

double Tomograph::population(int input, int output, long long shots,
                             const NoiseConfig& f_noise, std::uint64_t seed) const {
  if (input < 0 || input > 7 || output < 0 || output > 7)
    throw ParameterError("basis codes must lie in 0..7");
  RowKey in{RowKey::Kind::single, from_code(input), {}};
  RowKey out{RowKey::Kind::single, from_code(output), {}};
  return measure_population(in, out, shots, f_noise, seed,
                            static_cast<std::uint64_t>(input * 8 + output));
}

std::pair<double, double> Tomograph::phase_pair_estimates(const PhasePairSpec& pair,
                                                          long long shots,
                                                          std::uint64_t seed) const {
  if (!is_major(pair.l, pair.m) || !is_major(pair.k, pair.q))
    throw ParameterError("phase measurement requires two major elements");
  if (pair.l.code() == pair.k.code() || pair.m.code() == pair.q.code())
    throw ParameterError("phase measurement requires distinct major elements");

  NoiseConfig noiseless;
  std::uint64_t base = 64 + (static_cast<std::uint64_t>(pair.k.code()) * 8 + pair.q.code()) * 64 +
                       static_cast<std::uint64_t>(pair.l.code()) * 8 + pair.m.code();
  std::pair<double, double> estimates;
  for (int prep = 0; prep < 2; ++prep) {
    RowKey psi{prep == 0 ? RowKey::Kind::plus : RowKey::Kind::plus_i, pair.m, pair.q};
    RowKey out_l{RowKey::Kind::single, pair.l, {}};
    RowKey out_k{RowKey::Kind::single, pair.k, {}};
    RowKey out_plus{RowKey::Kind::plus, pair.l, pair.k};
    RowKey out_plus_i{RowKey::Kind::plus_i, pair.l, pair.k};
    std::uint64_t s = base * 8 + static_cast<std::uint64_t>(prep) * 4;
    double p_l = measure_population(psi, out_l, shots, noiseless, seed, s + 0);
    double p_k = measure_population(psi, out_k, shots, noiseless, seed, s + 1);
    double p_sum = measure_population(psi, out_plus, shots, noiseless, seed, s + 2);
    double p_rot = measure_population(psi, out_plus_i, shots, noiseless, seed, s + 3);
    double re = 2.0 * p_sum - p_l - p_k;
    double im = 2.0 * p_rot - p_l - p_k;
    double theta = std::atan2(im, re);
    if (prep == 1) theta -= M_PI / 2.0;  // the i-preparation rotates the ratio
    (prep == 0 ? estimates.first : estimates.second) = theta;
  }
  return estimates;
}

double Tomograph::phase_pair(const PhasePairSpec& pair, long long shots,
                             std::uint64_t seed) const {
  auto [a, b] = phase_pair_estimates(pair, shots, seed);
  Complex mean = (std::exp(Complex(0.0, a)) + std::exp(Complex(0.0, b))) / 2.0;
  if (std::abs(mean) < 1e-12) throw ContractError("phase estimates are antipodal");
  return std::arg(mean);
}

TruthTable Tomograph::full_truth_table(long long shots_per_cell, const NoiseConfig& f_noise,
                                       std::uint64_t seed) const {
  if (shots_per_cell <= 0) throw ParameterError("shot count must be positive");
  TruthTable t;
  t.shots_per_cell = shots_per_cell;
  t.seed = seed;
  t.lambda_f = f_noise.lambda;
  for (int in = 0; in < 8; ++in)
    for (int out = 0; out < 8; ++out)
      t.amplitudes(out, in) = std::sqrt(population(in, out, shots_per_cell, f_noise, seed));
  const auto& pairs = major_phase_pairs();
  for (std::size_t i = 0; i < pairs.size(); ++i)
    t.phases[i] = phase_pair(pairs[i], shots_per_cell, seed);
  return t;
}

FidelityReport Tomograph::classical_fidelity(const TruthTable& table) const {
  FidelityReport r;
  r.shots_per_cell = table.shots_per_cell;
  double sum = 0.0;
  for (int in = 0; in < 8; ++in) {
    double p = table.amplitudes(ideal_output(in), in);
    p *= p;
    r.per_input_correct[in] = p;
    sum += p;
    r.half_width_95[in] =
        table.shots_per_cell > 0
            ? 1.96 * std::sqrt(std::max(0.0, p * (1.0 - p)) /
                               static_cast<double>(table.shots_per_cell))
            : 0.0;
  }
  r.classical_fidelity = sum / 8.0;
  return r;
}

nlohmann::json Tomograph::report(const TruthTable& table, const FidelityReport& fidelity) const {
  nlohmann::json j;
  nlohmann::json amps = nlohmann::json::array();
  for (int out = 0; out < 8; ++out) {
    nlohmann::json row = nlohmann::json::array();
    for (int in = 0; in < 8; ++in) row.push_back(table.amplitudes(out, in));
    amps.push_back(row);
  }
  j["amplitudes"] = amps;  // row-major: amplitudes[out][in]
  nlohmann::json phases = nlohmann::json::array();
  const auto& pairs = major_phase_pairs();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    nlohmann::json p;
    p["reference"] = {code_name(pairs[i].l), code_name(pairs[i].m)};
    p["element"] = {code_name(pairs[i].k), code_name(pairs[i].q)};
    p["phase"] = table.phases[i];
    phases.push_back(p);
  }
  j["phases"] = phases;
  j["phase_convention"] =
      "arg(<element_out|F|element_in> / <ref_out|F|ref_in>); <000|F|000> fixed to 0; "
      "two-argument arctangent, quadrant checked against synthetic rotations";
  j["classical_fidelity"] = fidelity.classical_fidelity;
  j["per_input_correct"] = fidelity.per_input_correct;
  j["half_width_95"] = fidelity.half_width_95;
  j["shots_per_cell"] = table.shots_per_cell;
  j["seed"] = table.seed;
  j["lambda_f"] = table.lambda_f;
  return j;
}

}  // namespace iontrace
