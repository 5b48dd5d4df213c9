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

#ifndef IONTRACE_PROTOCOL_HPP
#define IONTRACE_PROTOCOL_HPP

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "iontrace/sequences.hpp"
#include "iontrace/unitary_spec.hpp"

namespace iontrace {

/// The publicly agreed systems and bases through which client and server
/// exchange quantum information. Here both directions use the internal qubit
/// levels {|0_C>, |1_C>} of the ion.
struct InterfaceSpec {
  struct System {
    std::string subsystem;
    std::vector<int> levels;
  };
  System in_system;
  System out_system;

  static InterfaceSpec control_qubit();

  /// in/out dimensions equal, level labels distinct.
  void validate() const;
};

/// Depolarizing survival probability of the client's device.
struct NoiseConfig {
  double lambda = 1.0;

  NoiseConfig() = default;
  explicit NoiseConfig(double survival) : lambda(survival) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
      throw ParameterError("survival probability must lie in [0, 1]");
  }
};

enum class Schedule { enumerated, uniform };
std::string_view schedule_name(Schedule s);

struct EstimateResult {
  double raw_mean = 0.0;                 // sample mean of the +-1 outcomes
  std::optional<double> calibrated;      // raw_mean / lambda_hat when attached
  double stderr_of_mean = 0.0;
  long long shots = 0;
  Schedule schedule = Schedule::enumerated;

  /// Attach a calibration factor; requires lambda_hat > 0.
  void apply_calibration(double lambda_hat);
};

struct Calibration {
  double lambda_hat = 1.0;
  double half_width_95 = 0.0;  // 1.96 * stderr
  long long shots = 0;
};

/// Black-box apply capability. The client sees only `apply` and never
/// branches on the descriptor; honoring the interface contract (norm
/// preservation, identity outside the interface levels) is checked in tests,
/// not trusted.
class ServerHandle {
 public:
  using ApplyFn = std::function<void(IonState&)>;

  ServerHandle(ApplyFn apply, std::string descriptor)
      : apply_(std::move(apply)), descriptor_(std::move(descriptor)) {}

  void apply(IonState& state) const { apply_(state); }
  const std::string& descriptor() const { return descriptor_; }

 private:
  ApplyFn apply_;
  std::string descriptor_;
};

/// Apply u to the interface levels of the internal subsystem, identity on
/// the shelving levels and both motional modes.
void apply_on_interface(IonState& state, const Eigen::Matrix2cd& u,
                        const InterfaceSpec& iface = InterfaceSpec::control_qubit());

/// In-process servers.
ServerHandle identity_server();
ServerHandle matrix_server(const Eigen::Matrix2cd& u);
/// Synthesizes the rotation from three carrier pulses; differs from
/// matrix_server by a global phase, which the protocol cannot see.
ServerHandle pulse_server(double chi, double theta, double phi);
/// Preferred construction from a spec: pulse synthesis for the rotation
/// forms, direct application otherwise.
ServerHandle server_for(const UnitarySpec& spec);

/// Record of every elementary action the client performs, for the
/// modularity check: the schedule must not depend on the served unitary.
class InstructionTrace {
 public:
  void record_branch(int l, int m);
  void record_pulse(const Pulse& p);
  void record_pulses(const std::vector<Pulse>& ps);
  void record_server_call();
  void record_detection();
  const std::string& text() const { return text_; }

 private:
  std::string text_;
};

/// O(lambda^-2 epsilon^-2) shot budget with constant 1 (the +-1 outcome has
/// variance at most 1). Throws ParameterError for epsilon <= 0 or lambda
/// outside (0, 1].
long long required_shots(double epsilon, double lambda);

/// The modular trace-estimation client. Precomposes its pulse schedule once;
/// the schedule is the same for every server (only the opaque apply differs).
class Client {
 public:
  explicit Client(FockDims dims = {});

  const FockDims& dims() const { return dims_; }
  const InterfaceSpec& interface() const { return interface_; }

  /// One protocol run on preparation branch (l, m): preprocess, hand the
  /// state to the server, postprocess, measure. Returns the +-1 outcome.
  /// Consumes exactly two rng draws (noise realization, detection).
  int run_shot(const ServerHandle& server, int l, int m, const NoiseConfig& noise,
               RngStream& rng, InstructionTrace* trace = nullptr) const;

  /// Repeated-shot estimate of |tr(U)/2|^2 (scaled by lambda under noise).
  /// Enumerated schedule runs shots/4 per branch (shots divisible by 4);
  /// uniform samples branches per shot. Shot i draws from substream
  /// (seed, stream, i); branch choice for the uniform schedule comes from a
  /// unitary-independent stream so the schedule stays modular.
  EstimateResult estimate_trace(const ServerHandle& server, long long shots,
                                const NoiseConfig& noise, std::uint64_t seed,
                                Schedule schedule, std::uint64_t stream = 0,
                                InstructionTrace* trace = nullptr) const;

  /// Benchmark the device against the built-in identity server (or a caller
  /// supplied one) and report lambda_hat = raw mean with a 95% half-width.
  Calibration calibrate(long long shots, const NoiseConfig& noise, std::uint64_t seed,
                        const ServerHandle* server = nullptr) const;

  /// Exact density-operator evaluation of the full circuit, averaging all
  /// four preparation branches and applying the depolarizing channel just
  /// before detection. Equals lambda * |tr(u)/2|^2; the oracle for every
  /// sampling test and for the detection sign convention.
  double exact_expectation(const Eigen::Matrix2cd& u, const NoiseConfig& noise) const;
  double exact_expectation(const UnitarySpec& u, const NoiseConfig& noise) const;

 private:
  double branch_dark_probability(const ServerHandle& server, int l, int m) const;

  FockDims dims_;
  InterfaceSpec interface_;
  std::array<OperatorMatrix, 4> prep_matrix_;
  std::array<std::vector<Pulse>, 4> prep_pulses_;
  OperatorMatrix swap_out_, swap_back_, fredkin_, detect_basis_;
  std::vector<Pulse> swap_out_pulses_, swap_back_pulses_, fredkin_pulses_;
  Pulse detect_pulse_;
};

}  // namespace iontrace

#endif  // IONTRACE_PROTOCOL_HPP
