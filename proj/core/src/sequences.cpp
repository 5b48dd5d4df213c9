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

#include "iontrace/sequences.hpp"

#include <cmath>

namespace iontrace {

namespace {

constexpr double kPi = M_PI;
const double kSqrt2 = std::sqrt(2.0);

Pulse R0(double chi, double phi) { return {PulseKind::carrier, chi, phi}; }
Pulse Rzp(double chi, double phi) { return {PulseKind::zeeman_plus, chi, phi}; }
Pulse Rzm(double chi, double phi) { return {PulseKind::zeeman_minus, chi, phi}; }
Pulse Rx(double chi, double phi) { return {PulseKind::sideband_x, chi, phi}; }
Pulse Ry(double chi, double phi) { return {PulseKind::sideband_y, chi, phi}; }

std::vector<Pulse> cat(std::initializer_list<std::vector<Pulse>> parts) {
  std::vector<Pulse> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

// The three sideband pulses of the modified swap. `second_half_split` is used
// by the Fredkin gate, which splits the middle pulse around the Zeeman-level
// relay.
std::vector<Pulse> modified_swap_pulses(bool mode_x, double chi, double phi) {
  SwapParams p = SwapParams::modified_swap(chi, phi);
  auto R = mode_x ? Rx : Ry;
  return {R(kPi / kSqrt2, p.gamma), R(kSqrt2 * kPi, 2.0 * p.alpha + p.gamma),
          R(kPi / kSqrt2, p.gamma)};
}

}  // namespace

OperatorMatrix CompositeGate::matrix(FockDims dims) const {
  OperatorMatrix m = OperatorMatrix::Identity(dims.dim(), dims.dim());
  for (const Pulse& p : pulses) m = pulse_unitary(p, dims) * m;
  return m;
}

double CompositeGate::target_deviation(FockDims dims) const {
  if (!target) throw ContractError("gate '" + name + "' has no analytic target");
  OperatorMatrix full = matrix(dims);
  int n = static_cast<int>(target->basis.size());
  OperatorMatrix restricted(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) restricted(r, c) = full(target->basis[r], target->basis[c]);
  return compare_up_to_global_phase(restricted, target->matrix);
}

SwapParams SwapParams::modified_swap(double chi, double phi) {
  if (!(chi >= 0.0 && chi <= kPi))
    throw ParameterError("modified swap angle must lie in [0, pi]");
  double csc = 1.0 / std::sin(kPi / kSqrt2);
  double cot = std::cos(kPi / kSqrt2) / std::sin(kPi / kSqrt2);
  double a = csc * std::sin(chi / 4.0);
  double g = cot * std::tan(chi / 4.0);
  if (a < -1.0 || a > 1.0 || g < -1.0 || g > 1.0)
    throw ParameterError("modified swap angle out of arccos domain");
  return {std::acos(a), phi - std::acos(g)};
}

Eigen::Matrix4cd modified_swap_target(double chi, double phi) {
  double c = std::cos(chi / 2.0), s = std::sin(chi / 2.0);
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
  m(0, 0) = c;
  m(0, 3) = -s * std::exp(Complex(0.0, phi));
  m(3, 0) = s * std::exp(Complex(0.0, -phi));
  m(3, 3) = c;
  return m;
}

Eigen::Matrix<Complex, 8, 8> fredkin_target(double phi) {
  Eigen::Matrix<Complex, 8, 8> f = Eigen::Matrix<Complex, 8, 8>::Identity();
  f(5, 5) = 0.0;
  f(6, 6) = 0.0;
  f(5, 6) = -std::exp(Complex(0.0, phi));
  f(6, 5) = std::exp(Complex(0.0, -phi));
  return f;
}

Eigen::Matrix<Complex, 8, 8> cswap_matrix() {
  Eigen::Matrix<Complex, 8, 8> f = Eigen::Matrix<Complex, 8, 8>::Identity();
  f(5, 5) = 0.0;
  f(6, 6) = 0.0;
  f(5, 6) = 1.0;
  f(6, 5) = 1.0;
  return f;
}

Eigen::Matrix<Complex, 8, 8> fredkin_phase_diag() {
  Eigen::Matrix<Complex, 8, 8> z = Eigen::Matrix<Complex, 8, 8>::Identity();
  z(6, 6) = -1.0;  // |1_C 1_X 0_Y>
  return z;
}

Eigen::Matrix4cd swap_relay_phase_diag() {
  Eigen::Matrix4cd z = Eigen::Matrix4cd::Identity();
  z(2, 2) = -1.0;  // |0_C 1_X>
  return z;
}

std::array<int, 8> computational_basis_indices(FockDims dims) {
  std::array<int, 8> idx{};
  for (int c = 0; c < 2; ++c)
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) idx[c * 4 + x * 2 + y] = dims.index(c, x, y);
  return idx;
}

std::array<int, 4> modified_swap_basis_indices(FockDims dims, int fixed, bool mode_x) {
  if (mode_x)
    return {dims.index(0, 0, fixed), dims.index(1, 0, fixed), dims.index(0, 1, fixed),
            dims.index(1, 1, fixed)};
  return {dims.index(0, fixed, 0), dims.index(1, fixed, 0), dims.index(0, fixed, 1),
          dims.index(1, fixed, 1)};
}

CompositeGate synth_u(double chi, double theta, double phi) {
  CompositeGate g;
  g.name = "U(" + std::to_string(chi) + "," + std::to_string(theta) + "," +
           std::to_string(phi) + ")";
  g.pulses = {R0(kPi / 2.0 - theta, phi + kPi / 2.0), R0(chi, phi),
              R0(kPi / 2.0 - theta, phi - kPi / 2.0)};
  double ct = std::cos(theta), st = std::sin(theta);
  Eigen::Matrix2cd axis;
  axis << -ct, st * std::exp(Complex(0.0, phi)), st * std::exp(Complex(0.0, -phi)), ct;
  Eigen::Matrix2cd u = std::cos(chi / 2.0) * Eigen::Matrix2cd::Identity() -
                       Complex(0.0, std::sin(chi / 2.0)) * axis;
  FockDims d;
  g.target = SubspaceTarget{{d.index(0, 0, 0), d.index(1, 0, 0)}, u};
  g.phase_convention = "up to global phase";
  return g;
}

namespace {
CompositeGate make_swap_composite(bool mode_x, double chi, double phi) {
  CompositeGate g;
  g.name = std::string(mode_x ? "SX(" : "SY(") + std::to_string(chi) + "," +
           std::to_string(phi) + ")";
  g.pulses = modified_swap_pulses(mode_x, chi, phi);
  FockDims d;
  std::array<int, 4> idx = modified_swap_basis_indices(d, 0, mode_x);
  g.target = SubspaceTarget{{idx.begin(), idx.end()}, modified_swap_target(chi, phi)};
  g.phase_convention = "exact";
  return g;
}
}  // namespace

CompositeGate s_x(double chi, double phi) { return make_swap_composite(true, chi, phi); }
CompositeGate s_y(double chi, double phi) { return make_swap_composite(false, chi, phi); }

CompositeGate f_gate(double phi) {
  SwapParams p = SwapParams::modified_swap(kPi, phi);
  double a = p.alpha, g2 = p.gamma;
  CompositeGate g;
  g.name = "F(" + std::to_string(phi) + ")";
  // Shelve |0_C> in |-Z>, swap the motional qubits on the |1_C> branch with
  // the X-mode composite (middle pulse split in half around the Zeeman
  // relay), then restore |0_C>.
  g.pulses = {Rzm(kPi, 0.0),
              Ry(kPi, kPi),
              Rx(kPi / kSqrt2, g2),
              Rx(kPi / kSqrt2, 2.0 * a + g2),
              Rzp(kPi, kPi),
              Rzm(kPi, kPi),
              Rzp(kPi, 0.0),
              Rx(kPi / kSqrt2, 2.0 * a + g2),
              Rx(kPi / kSqrt2, g2),
              Ry(kPi, 0.0),
              Rzp(kPi, kPi)};
  FockDims d;
  std::array<int, 8> idx = computational_basis_indices(d);
  g.target = SubspaceTarget{{idx.begin(), idx.end()}, fredkin_target(phi)};
  g.phase_convention = "exact; equals cswap * fredkin_phase_diag at phi=0";
  return g;
}

CompositeGate preprocess_circuit(int l, int m) {
  if ((l != 0 && l != 1) || (m != 0 && m != 1))
    throw ParameterError("preprocess branch bits must be 0 or 1");
  CompositeGate g;
  g.name = "prep(" + std::to_string(l) + "," + std::to_string(m) + ")";
  g.phase_convention = "exact";
  if (l == 0 && m == 0) {
    g.pulses = {R0(kPi / 2.0, -kPi / 2.0)};
  } else if (l == 0 && m == 1) {
    g.pulses = {R0(kPi / 2.0, -kPi / 2.0), R0(kPi, kPi / 2.0), Rzm(kPi, 0.0),
                R0(kPi, -kPi / 2.0),       Ry(kPi, 0.0),       R0(kPi, kPi / 2.0),
                Rzm(kPi, 0.0),             Rx(kPi, 0.0),       Rzm(kPi, kPi)};
  } else if (l == 1 && m == 0) {
    g.pulses = {R0(kPi / 2.0, -kPi / 2.0), R0(kPi, kPi / 2.0), Rzm(kPi, 0.0),
                R0(kPi, -kPi / 2.0),       Rx(kPi, 0.0),       R0(kPi, kPi / 2.0),
                Rzm(kPi, 0.0),             Ry(kPi, kPi),       Rzm(kPi, kPi)};
  } else {
    g.pulses = {Rx(kPi, 0.0), R0(kPi, kPi / 2.0), Ry(kPi, kPi), R0(kPi, kPi / 2.0),
                R0(kPi / 2.0, -kPi / 2.0)};
    g.phase_convention = "global phase -1";
  }
  return g;
}

StateVector preprocess_target(int l, int m, FockDims dims) {
  StateVector v = StateVector::Zero(dims.dim());
  double w = 1.0 / kSqrt2;
  if (l == 0 && m == 0) {
    v[dims.index(0, 0, 0)] = w;
    v[dims.index(1, 0, 0)] = w;
  } else if (l == 0 && m == 1) {
    v[dims.index(0, 0, 1)] = w;
    v[dims.index(1, 1, 0)] = -w;
  } else if (l == 1 && m == 0) {
    v[dims.index(0, 1, 0)] = w;
    v[dims.index(1, 0, 1)] = w;
  } else if (l == 1 && m == 1) {
    v[dims.index(0, 1, 1)] = w;
    v[dims.index(1, 1, 1)] = w;
  } else {
    throw ParameterError("preprocess branch bits must be 0 or 1");
  }
  return v;
}

namespace {
CompositeGate make_pi_transfer(bool mode_x, double phi) {
  CompositeGate g;
  g.name = std::string(mode_x ? "PX(" : "PY(") + std::to_string(phi) + ")";
  auto R = mode_x ? Rx : Ry;
  g.pulses = {R(kPi / 2.0, phi), R(kPi / kSqrt2, phi + kPi / 2.0), R(kPi / 2.0, phi)};
  g.phase_convention = "population transfer only";
  return g;
}
}  // namespace

CompositeGate p_x(double phi) { return make_pi_transfer(true, phi); }
CompositeGate p_y(double phi) { return make_pi_transfer(false, phi); }

CompositeGate measure_111_mapper() {
  CompositeGate g;
  g.name = "mapper111";
  g.pulses = cat({p_x(0.0).pulses, {R0(kPi, -kPi / 2.0)}, p_y(0.0).pulses});
  g.phase_convention = "population transfer only";
  return g;
}

namespace {

struct Row {
  RowKey key;
  std::vector<Pulse> pulses;
};

RowKey single(int c, int x, int y) { return {RowKey::Kind::single, {c, x, y}, {}}; }
RowKey plus(Basis3 a, Basis3 b) { return {RowKey::Kind::plus, a, b}; }
RowKey plus_i(Basis3 a, Basis3 b) { return {RowKey::Kind::plus_i, a, b}; }

// Preparation table: |000> -> key state, pulses chronological.
const std::vector<Row>& prep_rows() {
  static const std::vector<Row> rows = [] {
    const double p = kPi, h = kPi / 2.0;
    std::vector<Row> r;
    r.push_back({single(0, 0, 1), {Ry(p, 0), R0(p, h)}});
    r.push_back({single(0, 1, 0), {Rx(p, 0), R0(p, h)}});
    r.push_back({single(0, 1, 1), {Rx(p, 0), R0(p, h), Ry(p, 0), R0(p, h)}});
    r.push_back({single(1, 0, 0), {R0(p, -h)}});
    r.push_back({single(1, 0, 1), {Ry(p, 0)}});
    r.push_back({single(1, 1, 0), {Rx(p, 0)}});
    r.push_back({single(1, 1, 1), {Rx(p, 0), R0(p, h), Ry(p, 0)}});
    r.push_back({plus({0, 0, 0}, {1, 0, 0}), {R0(h, -h)}});
    r.push_back({plus({0, 0, 0}, {1, 0, 1}), {Ry(h, 0)}});
    r.push_back({plus({0, 0, 0}, {1, 1, 0}), {Rx(h, 0)}});
    r.push_back({plus({0, 0, 1}, {1, 1, 0}),
                 {Rzm(h, -h), Ry(p, 0), R0(p, h), Rzm(p, h), Rx(p, 0), Rzm(p, -h)}});
    r.push_back({plus({0, 0, 1}, {1, 1, 1}), {Ry(p, 0), R0(p, h), Rx(h, 0)}});
    r.push_back({plus({0, 1, 0}, {1, 0, 1}),
                 {Rzm(h, -h), Rx(p, 0), R0(p, h), Rzm(p, h), Ry(p, 0), Rzm(p, -h)}});
    r.push_back({plus({0, 1, 0}, {1, 1, 1}), {Rx(p, 0), R0(p, h), Ry(h, 0)}});
    r.push_back({plus({0, 1, 1}, {1, 1, 1}), {Rx(p, 0), R0(p, h), Ry(p, 0), R0(h, h)}});
    r.push_back({plus_i({0, 0, 0}, {1, 0, 0}), {R0(h, p)}});
    r.push_back({plus_i({0, 0, 0}, {1, 0, 1}), {Ry(h, -h)}});
    r.push_back({plus_i({0, 0, 0}, {1, 1, 0}), {Rx(h, -h)}});
    r.push_back({plus_i({0, 0, 1}, {1, 1, 0}),
                 {Rzm(h, -h), Ry(p, 0), R0(p, h), Rzm(p, h), Rx(p, -h), Rzm(p, -h)}});
    r.push_back({plus_i({0, 0, 1}, {1, 1, 1}), {Ry(p, 0), R0(p, h), Rx(h, -h)}});
    r.push_back({plus_i({0, 1, 0}, {1, 0, 1}),
                 {Rzm(h, -h), Rx(p, 0), R0(p, h), Rzm(p, h), Ry(p, -h), Rzm(p, -h)}});
    r.push_back({plus_i({0, 1, 0}, {1, 1, 1}), {Rx(p, 0), R0(p, h), Ry(h, -h)}});
    r.push_back({plus_i({0, 1, 1}, {1, 1, 1}), {Rx(p, 0), R0(p, h), Ry(p, -h), R0(h, 0)}});
    return r;
  }();
  return rows;
}

// Readout table: key state -> |111>. Restricted to carrier and the swap
// composites so states stay inside the n <= 1 manifold the |111> measurement
// mapper requires; bare sideband pulses would not.
const std::vector<Row>& readout_rows() {
  static const std::vector<Row> rows = [] {
    const double p = kPi, h = kPi / 2.0;
    auto SX = [](double chi, double phi) { return modified_swap_pulses(true, chi, phi); };
    auto SY = [](double chi, double phi) { return modified_swap_pulses(false, chi, phi); };
    std::vector<Row> r;
    r.push_back({single(0, 0, 0), cat({SX(p, 0), {R0(p, h)}, SY(p, 0)})});
    r.push_back({single(0, 0, 1), SX(p, 0)});
    r.push_back({single(0, 1, 0), SY(p, 0)});
    r.push_back({single(0, 1, 1), {R0(p, -h)}});
    r.push_back({single(1, 0, 0), cat({{R0(p, h)}, SX(p, 0), {R0(p, h)}, SY(p, 0)})});
    r.push_back({single(1, 0, 1), cat({{R0(p, h)}, SX(p, 0)})});
    r.push_back({single(1, 1, 0), cat({{R0(p, h)}, SY(p, 0)})});
    r.push_back({plus({0, 0, 0}, {1, 0, 0}),
                 cat({{R0(h, h)}, SX(p, 0), {R0(p, h)}, SY(p, 0)})});
    r.push_back({plus({0, 0, 0}, {1, 0, 1}), cat({SY(h, 0), {R0(p, h)}, SX(p, 0)})});
    r.push_back({plus({0, 0, 0}, {1, 1, 0}), cat({SX(h, 0), {R0(p, h)}, SY(p, 0)})});
    r.push_back({plus({0, 0, 1}, {1, 0, 1}), cat({{R0(h, h)}, SX(p, 0)})});
    r.push_back({plus({0, 0, 1}, {1, 1, 1}), SX(h, 0)});
    r.push_back({plus({0, 1, 0}, {1, 1, 0}), cat({{R0(h, h)}, SY(p, 0)})});
    r.push_back({plus({0, 1, 0}, {1, 1, 1}), SY(h, 0)});
    r.push_back({plus({0, 1, 1}, {1, 1, 1}), {R0(h, -h)}});
    r.push_back({plus_i({0, 0, 0}, {1, 0, 0}),
                 cat({{R0(h, 0)}, SX(p, 0), {R0(p, h)}, SY(p, 0)})});
    r.push_back({plus_i({0, 0, 0}, {1, 0, 1}), cat({SY(h, -h), {R0(p, h)}, SX(p, 0)})});
    r.push_back({plus_i({0, 0, 0}, {1, 1, 0}), cat({SX(h, -h), {R0(p, h)}, SY(p, 0)})});
    r.push_back({plus_i({0, 0, 1}, {1, 0, 1}), cat({{R0(h, 0)}, SX(p, 0)})});
    r.push_back({plus_i({0, 0, 1}, {1, 1, 1}), SX(h, -h)});
    r.push_back({plus_i({0, 1, 0}, {1, 1, 0}), cat({{R0(h, 0)}, SY(p, 0)})});
    r.push_back({plus_i({0, 1, 0}, {1, 1, 1}), SY(h, -h)});
    r.push_back({plus_i({0, 1, 1}, {1, 1, 1}), {R0(h, p)}});
    return r;
  }();
  return rows;
}

std::string key_name(const RowKey& key) {
  auto b = [](const Basis3& s) {
    return std::to_string(s.c) + std::to_string(s.x) + std::to_string(s.y);
  };
  switch (key.kind) {
    case RowKey::Kind::single: return "|" + b(key.a) + ">";
    case RowKey::Kind::plus: return "(|" + b(key.a) + ">+|" + b(key.b) + ">)/sqrt2";
    case RowKey::Kind::plus_i: return "(|" + b(key.a) + ">+i|" + b(key.b) + ">)/sqrt2";
  }
  return "?";
}

bool key_equal(const RowKey& u, const RowKey& v) {
  if (u.kind != v.kind || !(u.a == v.a)) return false;
  return u.kind == RowKey::Kind::single || u.b == v.b;
}

CompositeGate row_gate(const char* prefix, const Row& row) {
  CompositeGate g;
  g.name = std::string(prefix) + " " + key_name(row.key);
  g.pulses = row.pulses;
  g.phase_convention = "up to global phase";
  return g;
}

}  // namespace

int prep_row_count() { return static_cast<int>(prep_rows().size()); }
int readout_row_count() { return static_cast<int>(readout_rows().size()); }

CompositeGate r_i(int index) {
  const auto& rows = prep_rows();
  if (index < 0 || index >= static_cast<int>(rows.size()))
    throw ParameterError("unknown preparation row index");
  return row_gate("prep", rows[index]);
}

CompositeGate r_o(int index) {
  const auto& rows = readout_rows();
  if (index < 0 || index >= static_cast<int>(rows.size()))
    throw ParameterError("unknown readout row index");
  return row_gate("readout", rows[index]);
}

RowKey r_i_key(int index) {
  const auto& rows = prep_rows();
  if (index < 0 || index >= static_cast<int>(rows.size()))
    throw ParameterError("unknown preparation row index");
  return rows[index].key;
}

RowKey r_o_key(int index) {
  const auto& rows = readout_rows();
  if (index < 0 || index >= static_cast<int>(rows.size()))
    throw ParameterError("unknown readout row index");
  return rows[index].key;
}

CompositeGate r_i_for(const RowKey& key) {
  if (key.kind == RowKey::Kind::single && key.a == Basis3{0, 0, 0}) {
    CompositeGate g;
    g.name = "prep |000> (identity)";
    return g;
  }
  for (const Row& row : prep_rows())
    if (key_equal(row.key, key)) return row_gate("prep", row);
  throw ParameterError("no preparation row for " + key_name(key));
}

CompositeGate r_o_for(const RowKey& key) {
  if (key.kind == RowKey::Kind::single && key.a == Basis3{1, 1, 1}) {
    CompositeGate g;
    g.name = "readout |111> (identity)";
    return g;
  }
  for (const Row& row : readout_rows())
    if (key_equal(row.key, key)) return row_gate("readout", row);
  throw ParameterError("no readout row for " + key_name(key));
}

StateVector row_state(const RowKey& key, FockDims dims) {
  StateVector v = StateVector::Zero(dims.dim());
  if (key.kind == RowKey::Kind::single) {
    v[dims.index(key.a.c, key.a.x, key.a.y)] = 1.0;
    return v;
  }
  Complex second = key.kind == RowKey::Kind::plus ? Complex(1, 0) : Complex(0, 1);
  v[dims.index(key.a.c, key.a.x, key.a.y)] = 1.0 / kSqrt2;
  v[dims.index(key.b.c, key.b.x, key.b.y)] = second / kSqrt2;
  return v;
}

std::vector<CompositeGate> standard_library() {
  std::vector<CompositeGate> lib;
  for (int l = 0; l < 2; ++l)
    for (int m = 0; m < 2; ++m) lib.push_back(preprocess_circuit(l, m));
  lib.push_back(s_x(kPi, 0.0));
  lib.push_back(s_x(kPi, kPi));
  lib.push_back(s_y(kPi, 0.0));
  lib.push_back(s_x(kPi / 2.0, -kPi / 2.0));
  lib.push_back(s_y(kPi / 2.0, 0.0));
  lib.push_back(f_gate(0.0));
  lib.push_back(p_x(0.0));
  lib.push_back(p_y(0.0));
  lib.push_back(measure_111_mapper());
  for (int i = 0; i < prep_row_count(); ++i) lib.push_back(r_i(i));
  for (int i = 0; i < readout_row_count(); ++i) lib.push_back(r_o(i));
  lib.push_back(synth_u(kPi / 3.0, kPi / 2.0, 0.0));
  return lib;
}

}  // namespace iontrace
