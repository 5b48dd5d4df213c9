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

#include "iontrace/protocol.hpp"

#include <cmath>
#include <cstdio>
#include <set>

namespace iontrace {

namespace {
constexpr double kPi = M_PI;
// Substream index used by the uniform-schedule branch draw. Kept independent
// of the unitary stream so the client schedule cannot depend on the server.
constexpr std::uint64_t kBranchStream = 0xb7a9c3e5f1d20847ULL;
}  // namespace

InterfaceSpec InterfaceSpec::control_qubit() {
  InterfaceSpec s;
  s.in_system = {"control", {kLevel0, kLevel1}};
  s.out_system = s.in_system;
  return s;
}

void InterfaceSpec::validate() const {
  if (in_system.levels.size() != out_system.levels.size())
    throw ContractError("interface in/out dimensions differ");
  std::set<int> in(in_system.levels.begin(), in_system.levels.end());
  std::set<int> out(out_system.levels.begin(), out_system.levels.end());
  if (in.size() != in_system.levels.size() || out.size() != out_system.levels.size())
    throw ContractError("interface basis labels must be distinct");
}

std::string_view schedule_name(Schedule s) {
  return s == Schedule::enumerated ? "enumerated" : "uniform";
}

void EstimateResult::apply_calibration(double lambda_hat) {
  if (!(lambda_hat > 0.0)) throw ParameterError("calibration factor must be positive");
  calibrated = raw_mean / lambda_hat;
}

void apply_on_interface(IonState& state, const Eigen::Matrix2cd& u,
                        const InterfaceSpec& iface) {
  iface.validate();
  if (iface.in_system.levels.size() != 2)
    throw ContractError("interface must expose exactly two levels");
  int l0 = iface.in_system.levels[0], l1 = iface.in_system.levels[1];
  const FockDims& d = state.dims();
  for (int x = 0; x < d.n_x; ++x) {
    for (int y = 0; y < d.n_y; ++y) {
      Complex a0 = state.amplitudes()[d.index(l0, x, y)];
      Complex a1 = state.amplitudes()[d.index(l1, x, y)];
      state.amplitudes()[d.index(l0, x, y)] = u(0, 0) * a0 + u(0, 1) * a1;
      state.amplitudes()[d.index(l1, x, y)] = u(1, 0) * a0 + u(1, 1) * a1;
    }
  }
}

ServerHandle identity_server() {
  return ServerHandle([](IonState&) {}, "identity");
}

ServerHandle matrix_server(const Eigen::Matrix2cd& u) {
  if ((u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-9)
    throw ParameterError("server matrix is not unitary");
  return ServerHandle([u](IonState& s) { apply_on_interface(s, u); }, "matrix");
}

ServerHandle pulse_server(double chi, double theta, double phi) {
  CompositeGate gate = synth_u(chi, theta, phi);
  auto m = std::make_shared<OperatorMatrix>(gate.matrix());
  return ServerHandle([m](IonState& s) { apply_unitary(s, *m); }, "pulse:" + gate.name);
}

ServerHandle server_for(const UnitarySpec& spec) {
  switch (spec.type) {
    case UnitarySpec::Type::identity:
      return identity_server();
    case UnitarySpec::Type::pauli_rotation: {
      // carrier synthesis of the three Pauli axes
      double theta = spec.axis == 3 ? kPi : kPi / 2.0;
      double phi = spec.axis == 2 ? -kPi / 2.0 : 0.0;
      return pulse_server(spec.chi, theta, phi);
    }
    case UnitarySpec::Type::euler:
      return pulse_server(spec.chi, spec.theta, spec.phi);
    case UnitarySpec::Type::matrix:
    case UnitarySpec::Type::gates:
      return matrix_server(spec.qubit_matrix());
  }
  throw ParameterError("unknown unitary spec type");
}

void InstructionTrace::record_branch(int l, int m) {
  text_ += "branch ";
  text_ += std::to_string(l);
  text_ += ' ';
  text_ += std::to_string(m);
  text_ += '\n';
}

void InstructionTrace::record_pulse(const Pulse& p) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "pulse %s %.17g %.17g\n",
                std::string(pulse_kind_name(p.kind)).c_str(), p.chi, p.phi);
  text_ += buf;
}

void InstructionTrace::record_pulses(const std::vector<Pulse>& ps) {
  for (const Pulse& p : ps) record_pulse(p);
}

void InstructionTrace::record_server_call() { text_ += "server\n"; }

void InstructionTrace::record_detection() { text_ += "detect\n"; }

long long required_shots(double epsilon, double lambda) {
  if (!(epsilon > 0.0)) throw ParameterError("accuracy must be positive");
  if (!(lambda > 0.0 && lambda <= 1.0))
    throw ParameterError("survival probability must lie in (0, 1]");
  return static_cast<long long>(std::ceil(1.0 / (lambda * lambda * epsilon * epsilon)));
}

Client::Client(FockDims dims) : dims_(dims), interface_(InterfaceSpec::control_qubit()) {
  for (int l = 0; l < 2; ++l) {
    for (int m = 0; m < 2; ++m) {
      CompositeGate g = preprocess_circuit(l, m);
      prep_matrix_[l * 2 + m] = g.matrix(dims_);
      prep_pulses_[l * 2 + m] = g.pulses;
    }
  }
  CompositeGate out = s_x(kPi, 0.0), back = s_x(kPi, kPi), f = f_gate(0.0);
  swap_out_ = out.matrix(dims_);
  swap_out_pulses_ = out.pulses;
  swap_back_ = back.matrix(dims_);
  swap_back_pulses_ = back.pulses;
  fredkin_ = f.matrix(dims_);
  fredkin_pulses_ = f.pulses;
  // Rotation mapping the sigma_1 eigenbasis onto dark/bright: |+> goes to the
  // dark level, |-> to the bright one. Sign convention frozen by the
  // exact-mode regression test.
  detect_pulse_ = Pulse{PulseKind::carrier, kPi / 2.0, kPi / 2.0};
  detect_basis_ = pulse_unitary(detect_pulse_, dims_);
}

int Client::run_shot(const ServerHandle& server, int l, int m, const NoiseConfig& noise,
                     RngStream& rng, InstructionTrace* trace) const {
  if ((l != 0 && l != 1) || (m != 0 && m != 1))
    throw ParameterError("branch bits must be 0 or 1");
  if (trace) {
    trace->record_branch(l, m);
    trace->record_pulses(prep_pulses_[l * 2 + m]);
    trace->record_pulses(swap_out_pulses_);
    trace->record_server_call();
    trace->record_pulses(swap_back_pulses_);
    trace->record_pulses(fredkin_pulses_);
    trace->record_pulse(detect_pulse_);
    trace->record_detection();
  }

  // Fixed draw order: one noise realization, one detection draw per shot.
  bool depolarized = rng.next_double() >= noise.lambda;

  IonState state = IonState::ground(dims_);
  apply_unitary(state, prep_matrix_[l * 2 + m]);
  apply_unitary(state, swap_out_);
  server.apply(state);
  if (std::abs(state.norm() - 1.0) > 1e-6)
    throw ContractError("server returned a non-normalized state (norm " +
                        std::to_string(state.norm()) + ")");
  apply_unitary(state, swap_back_);
  apply_unitary(state, fredkin_);
  apply_unitary(state, detect_basis_);

  if (depolarized) {
    // Trajectory realization of the depolarizing channel: the maximally mixed
    // state is unbiased in this basis, so the outcome is a fair coin.
    return rng.next_double() < 0.5 ? +1 : -1;
  }
  return measure_internal_bright(state, rng) == BrightOutcome::dark ? +1 : -1;
}

EstimateResult Client::estimate_trace(const ServerHandle& server, long long shots,
                                      const NoiseConfig& noise, std::uint64_t seed,
                                      Schedule schedule, std::uint64_t stream,
                                      InstructionTrace* trace) const {
  if (shots <= 0) throw ParameterError("shot count must be positive");
  if (schedule == Schedule::enumerated && (shots % 4 != 0 || shots < 4))
    throw ParameterError("enumerated schedule needs a shot count divisible by 4");

  long long per_branch = shots / 4;
  double sum = 0.0;
  for (long long i = 0; i < shots; ++i) {
    int l, m;
    if (schedule == Schedule::enumerated) {
      int branch = static_cast<int>(i / per_branch);
      l = branch / 2;
      m = branch % 2;
    } else {
      RngStream pick = substream(seed, kBranchStream, static_cast<std::uint64_t>(i));
      std::uint64_t branch = pick.next_below(4);
      l = static_cast<int>(branch / 2);
      m = static_cast<int>(branch % 2);
    }
    RngStream rng = substream(seed, stream, static_cast<std::uint64_t>(i));
    sum += run_shot(server, l, m, noise, rng, trace);
  }

  EstimateResult r;
  r.shots = shots;
  r.schedule = schedule;
  r.raw_mean = sum / static_cast<double>(shots);
  // Pooled standard error of the mean; for +-1 outcomes the sample variance
  // is n(1 - mean^2)/(n-1).
  r.stderr_of_mean =
      shots > 1 ? std::sqrt(std::max(0.0, 1.0 - r.raw_mean * r.raw_mean) /
                            static_cast<double>(shots - 1))
                : 0.0;
  return r;
}

Calibration Client::calibrate(long long shots, const NoiseConfig& noise, std::uint64_t seed,
                              const ServerHandle* server) const {
  ServerHandle def = identity_server();
  EstimateResult r = estimate_trace(server ? *server : def, shots, noise, seed,
                                    Schedule::enumerated, /*stream=*/0);
  Calibration c;
  c.lambda_hat = r.raw_mean;
  c.half_width_95 = 1.96 * r.stderr_of_mean;
  c.shots = shots;
  return c;
}

double Client::exact_expectation(const Eigen::Matrix2cd& u, const NoiseConfig& noise) const {
  const int dim = dims_.dim();
  DensityOperator rho = DensityOperator::zero(dim);
  for (int l = 0; l < 2; ++l) {
    for (int m = 0; m < 2; ++m) {
      IonState state = IonState::ground(dims_);
      apply_unitary(state, prep_matrix_[l * 2 + m]);
      apply_unitary(state, swap_out_);
      apply_on_interface(state, u, interface_);
      apply_unitary(state, swap_back_);
      apply_unitary(state, fredkin_);
      rho.accumulate_pure(state.amplitudes(), 0.25);
    }
  }
  rho.validate();

  // Depolarizing channel just before detection: mix with the maximally mixed
  // state of the three encoded qubits.
  OperatorMatrix mixed = OperatorMatrix::Zero(dim, dim);
  for (int idx : computational_basis_indices(dims_)) mixed(idx, idx) = 1.0 / 8.0;
  rho.entries = noise.lambda * rho.entries + (1.0 - noise.lambda) * mixed;
  rho.validate();

  rho.evolve(detect_basis_);
  OperatorMatrix sign = OperatorMatrix::Zero(dim, dim);
  for (int c = 0; c < kInternalLevels; ++c)
    for (int x = 0; x < dims_.n_x; ++x)
      for (int y = 0; y < dims_.n_y; ++y)
        sign(dims_.index(c, x, y), dims_.index(c, x, y)) = (c == kLevel0) ? 1.0 : -1.0;
  return rho.expectation(sign);
}

double Client::exact_expectation(const UnitarySpec& u, const NoiseConfig& noise) const {
  return exact_expectation(u.qubit_matrix(), noise);
}

}  // namespace iontrace
