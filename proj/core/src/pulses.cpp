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

#include "iontrace/pulses.hpp"

#include <cmath>

namespace iontrace {

std::string_view pulse_kind_name(PulseKind kind) {
  switch (kind) {
    case PulseKind::carrier: return "R0";
    case PulseKind::zeeman_plus: return "RZ+";
    case PulseKind::zeeman_minus: return "RZ-";
    case PulseKind::sideband_x: return "RX";
    case PulseKind::sideband_y: return "RY";
  }
  return "?";
}

double canonical_phase(double phi) {
  double two_pi = 2.0 * M_PI;
  double r = std::fmod(phi, two_pi);
  if (r <= -M_PI) r += two_pi;
  if (r > M_PI) r -= two_pi;
  return r;
}

namespace {

OperatorMatrix microwave_generator(int upper_level, double chi, double phi, FockDims dims) {
  Complex fwd = Complex(0.0, -chi / 2.0) * std::exp(Complex(0.0, -phi));
  Complex bwd = Complex(0.0, -chi / 2.0) * std::exp(Complex(0.0, phi));
  Eigen::Matrix4cd g = fwd * internal_projector(upper_level, kLevel0) +
                       bwd * internal_projector(kLevel0, upper_level);
  return embed_internal(g, dims);
}

OperatorMatrix sideband_generator(bool mode_x, double chi, double phi, FockDims dims) {
  int n = mode_x ? dims.n_x : dims.n_y;
  Eigen::MatrixXcd a = motional_annihilation(n);
  Complex raise = (chi / 2.0) * std::exp(Complex(0.0, -phi));
  Complex lower = -(chi / 2.0) * std::exp(Complex(0.0, phi));
  Eigen::Matrix4cd sp = internal_projector(kLevel1, kLevel0);
  Eigen::Matrix4cd sm = internal_projector(kLevel0, kLevel1);
  if (mode_x) {
    return raise * embed_internal_fock_x(sp, a.adjoint(), dims) +
           lower * embed_internal_fock_x(sm, a, dims);
  }
  return raise * embed_internal_fock_y(sp, a.adjoint(), dims) +
         lower * embed_internal_fock_y(sm, a, dims);
}

}  // namespace

OperatorMatrix pulse_generator(const Pulse& p, FockDims dims) {
  if (!std::isfinite(p.chi) || !std::isfinite(p.phi))
    throw ParameterError("pulse angles must be finite");
  switch (p.kind) {
    case PulseKind::carrier: return microwave_generator(kLevel1, p.chi, p.phi, dims);
    case PulseKind::zeeman_plus: return microwave_generator(kLevelZPlus, p.chi, p.phi, dims);
    case PulseKind::zeeman_minus: return microwave_generator(kLevelZMinus, p.chi, p.phi, dims);
    case PulseKind::sideband_x: return sideband_generator(true, p.chi, p.phi, dims);
    case PulseKind::sideband_y: return sideband_generator(false, p.chi, p.phi, dims);
  }
  throw ParameterError("unknown pulse kind");
}

OperatorMatrix pulse_unitary(const Pulse& p, FockDims dims) {
  return expm_antihermitian(pulse_generator(p, dims));
}

}  // namespace iontrace
