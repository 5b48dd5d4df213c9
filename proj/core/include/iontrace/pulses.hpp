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

#ifndef IONTRACE_PULSES_HPP
#define IONTRACE_PULSES_HPP

#include <string_view>

#include "iontrace/statevec.hpp"

namespace iontrace {

// The five primitive control operations of the ion:
//   carrier       microwave rotation |0_C> <-> |1_C>
//   zeeman_plus   microwave rotation |0_C> <-> |+Z_C>
//   zeeman_minus  microwave rotation |0_C> <-> |-Z_C>
//   sideband_x/y  Raman blue sideband |0_C,n> <-> |1_C,n+1> on mode X/Y
enum class PulseKind { carrier, zeeman_plus, zeeman_minus, sideband_x, sideband_y };

std::string_view pulse_kind_name(PulseKind kind);

struct Pulse {
  PulseKind kind;
  double chi;  // rotation angle, radians
  double phi;  // phase, radians
};

/// phi reduced to (-pi, pi]; display only, generators take the raw value.
double canonical_phase(double phi);

/// The anti-Hermitian generator of the pulse, exactly as driven:
///   carrier:   -(i chi/2)(e^{-i phi}|1><0| + h.c.) on the internal levels
///   zeeman+-:  same with |+-Z><0|
///   sideband:  (chi/2)(e^{-i phi} sigma+ a^dag - e^{i phi} sigma- a)
/// with sigma+ = |1_C><0_C|. Carrier and Zeeman pulses act as identity on
/// both motional modes; sideband pulses never touch |+-Z>.
OperatorMatrix pulse_generator(const Pulse& p, FockDims dims = {});

/// exp of the generator; unitary within 1e-10.
OperatorMatrix pulse_unitary(const Pulse& p, FockDims dims = {});

}  // namespace iontrace

#endif  // IONTRACE_PULSES_HPP
