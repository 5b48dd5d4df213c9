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

#include "iontrace/gatelevel.hpp"

#include <cmath>

namespace iontrace::gatelevel {

namespace {

void check_n(int n) {
  if (n < 1 || n > kMaxQubits)
    throw ParameterError("register width must lie in [1, " + std::to_string(kMaxQubits) + "]");
}

int width_for_unitary(const Eigen::MatrixXcd& u) {
  if (u.rows() != u.cols()) throw ParameterError("unitary must be square");
  for (int n = 1; n <= kMaxQubits; ++n)
    if ((Eigen::Index{1} << n) == u.rows()) return n;
  throw ParameterError("unitary dimension is not 2^n with n in [1, 6]");
}

void check_unitary(const Eigen::MatrixXcd& u) {
  Eigen::MatrixXcd dev =
      u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  if (dev.cwiseAbs().maxCoeff() > 1e-9) throw ParameterError("operator is not unitary");
}

}  // namespace

RegisterState RegisterState::ground(int n) {
  check_n(n);
  RegisterState s;
  s.n = n;
  s.amps = Eigen::VectorXcd::Zero(Eigen::Index{2} << (2 * n));
  s.amps[0] = 1.0;
  return s;
}

Eigen::MatrixXcd cswap_monolithic(int n) {
  check_n(n);
  const int reg = 1 << n;
  const int dim = 2 * reg * reg;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (int c = 0; c < 2; ++c)
    for (int l = 0; l < reg; ++l)
      for (int q = 0; q < reg; ++q) {
        int src = c * reg * reg + l * reg + q;
        int dst = c == 0 ? src : c * reg * reg + q * reg + l;
        m(dst, src) = 1.0;
      }
  return m;
}

Eigen::MatrixXcd cswap_pairwise(int n) {
  check_n(n);
  const int reg = 1 << n;
  const int dim = 2 * reg * reg;
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Identity(dim, dim);
  for (int bit = 0; bit < n; ++bit) {
    Eigen::MatrixXcd step = Eigen::MatrixXcd::Zero(dim, dim);
    for (int c = 0; c < 2; ++c)
      for (int l = 0; l < reg; ++l)
        for (int q = 0; q < reg; ++q) {
          int src = c * reg * reg + l * reg + q;
          int l2 = l, q2 = q;
          if (c == 1) {
            int lb = (l >> bit) & 1, qb = (q >> bit) & 1;
            l2 = (l & ~(1 << bit)) | (qb << bit);
            q2 = (q & ~(1 << bit)) | (lb << bit);
          }
          step(c * reg * reg + l2 * reg + q2, src) = 1.0;
        }
    total = step * total;
  }
  return total;
}

void apply_cswap(RegisterState& s) {
  const int reg = 1 << s.n;
  for (int l = 0; l < reg; ++l)
    for (int q = 0; q < l; ++q)
      std::swap(s.amps[reg * reg + l * reg + q], s.amps[reg * reg + q * reg + l]);
}

void apply_on_x_register(RegisterState& s, const Eigen::MatrixXcd& u) {
  if (width_for_unitary(u) != s.n)
    throw ParameterError("unitary has the wrong width for this register");
  const int reg = 1 << s.n;
  Eigen::VectorXcd col(reg);
  for (int c = 0; c < 2; ++c) {
    for (int q = 0; q < reg; ++q) {
      for (int l = 0; l < reg; ++l) col[l] = s.amps[c * reg * reg + l * reg + q];
      col = u * col;
      for (int l = 0; l < reg; ++l) s.amps[c * reg * reg + l * reg + q] = col[l];
    }
  }
}

RegisterState branch_state(int n, std::uint32_t l, std::uint32_t m) {
  check_n(n);
  const std::uint32_t reg = 1u << n;
  if (l >= reg || m >= reg) throw ParameterError("register label is longer than n bits");
  RegisterState s = RegisterState::ground(n);
  // H on the control.
  double w = 1.0 / std::sqrt(2.0);
  s.amps[0] = w;
  s.amps[reg * reg] = w;
  // NOTs setting the register bits (the state is supported on two basis
  // vectors, so the XOR permutation is a pair of swaps).
  for (std::uint32_t c = 0; c < 2; ++c)
    std::swap(s.amps[c * reg * reg], s.amps[c * reg * reg + l * reg + m]);
  apply_cswap(s);
  return s;
}

double control_x_expectation(const RegisterState& s) {
  const Eigen::Index half = s.amps.size() / 2;
  Complex overlap = 0.0;
  for (Eigen::Index i = 0; i < half; ++i) overlap += std::conj(s.amps[i]) * s.amps[half + i];
  return 2.0 * overlap.real();
}

EstimateResult modular_estimate(const Eigen::MatrixXcd& u, long long pairs,
                                long long shots_per_pair, std::uint64_t seed) {
  if (pairs <= 0 || shots_per_pair <= 0)
    throw ParameterError("pair and shot counts must be positive");
  const int n = width_for_unitary(u);
  check_unitary(u);
  const std::uint32_t reg = 1u << n;

  // Pair draws cluster the samples, so the standard error comes from the
  // spread of the per-pair means, not from pooling the raw outcomes.
  double sum = 0.0, sum_sq = 0.0;
  for (long long k = 0; k < pairs; ++k) {
    RngStream pick = substream(seed, 0x70a1u, static_cast<std::uint64_t>(k));
    auto l = static_cast<std::uint32_t>(pick.next_below(reg));
    auto m = static_cast<std::uint32_t>(pick.next_below(reg));
    RegisterState s = branch_state(n, l, m);
    apply_on_x_register(s, u);
    apply_cswap(s);
    double p_plus = (1.0 + control_x_expectation(s)) / 2.0;
    RngStream shots_rng = substream(seed, 0x5407u, static_cast<std::uint64_t>(k));
    double pair_sum = 0.0;
    for (long long j = 0; j < shots_per_pair; ++j)
      pair_sum += shots_rng.next_double() < p_plus ? +1.0 : -1.0;
    double pair_mean = pair_sum / static_cast<double>(shots_per_pair);
    sum += pair_mean;
    sum_sq += pair_mean * pair_mean;
  }
  EstimateResult r;
  r.shots = pairs * shots_per_pair;
  r.schedule = Schedule::uniform;
  r.raw_mean = sum / static_cast<double>(pairs);
  if (pairs > 1) {
    double var = (sum_sq - sum * sum / static_cast<double>(pairs)) /
                 static_cast<double>(pairs - 1);
    r.stderr_of_mean = std::sqrt(std::max(0.0, var) / static_cast<double>(pairs));
  }
  return r;
}

double exact_expectation(const Eigen::MatrixXcd& u) {
  const int n = width_for_unitary(u);
  check_unitary(u);
  const std::uint32_t reg = 1u << n;
  double acc = 0.0;
  for (std::uint32_t l = 0; l < reg; ++l) {
    for (std::uint32_t m = 0; m < reg; ++m) {
      RegisterState s = branch_state(n, l, m);
      apply_on_x_register(s, u);
      apply_cswap(s);
      acc += control_x_expectation(s);
    }
  }
  return acc / static_cast<double>(reg * reg);
}

InsertedPhases InsertedPhases::identity(int n) {
  check_n(n);
  InsertedPhases p;
  p.swap_flank = Eigen::VectorXd::Ones(Eigen::Index{2} << (2 * n));
  p.relay = Eigen::VectorXd::Ones(Eigen::Index{2} << n);
  return p;
}

void InsertedPhases::validate(int n) const {
  check_n(n);
  if (swap_flank.size() != (Eigen::Index{2} << (2 * n)))
    throw ParameterError("swap-flank diagonal has the wrong size");
  if (relay.size() != (Eigen::Index{2} << n))
    throw ParameterError("relay diagonal has the wrong size");
  auto pm1 = [](const Eigen::VectorXd& v) {
    return ((v.array().abs() - 1.0).abs() < 1e-12).all();
  };
  if (!pm1(swap_flank) || !pm1(relay))
    throw ParameterError("phase insertions must be +-1 diagonals");
}

double phase_invariance_expectation(const Eigen::MatrixXcd& u, const InsertedPhases& phases) {
  const int n = width_for_unitary(u);
  check_unitary(u);
  phases.validate(n);
  const int reg = 1 << n;
  const int dim = 2 * reg * reg;

  // Relay diagonal (control (x) X) padded with identity on Y.
  Eigen::VectorXcd relay_full(dim);
  for (int c = 0; c < 2; ++c)
    for (int l = 0; l < reg; ++l)
      for (int q = 0; q < reg; ++q)
        relay_full[c * reg * reg + l * reg + q] = phases.relay[c * reg + l];
  Eigen::VectorXcd flank = phases.swap_flank.cast<Complex>();

  Eigen::MatrixXcd f = cswap_monolithic(n);
  Eigen::MatrixXcd ux = Eigen::MatrixXcd::Zero(dim, dim);
  for (int c = 0; c < 2; ++c)
    for (int l = 0; l < reg; ++l)
      for (int l2 = 0; l2 < reg; ++l2)
        for (int q = 0; q < reg; ++q)
          ux(c * reg * reg + l2 * reg + q, c * reg * reg + l * reg + q) = u(l2, l);

  Eigen::MatrixXcd inner =
      relay_full.asDiagonal() * ux * relay_full.asDiagonal();
  Eigen::MatrixXcd chain =
      f * (flank.asDiagonal() * inner * flank.asDiagonal()) * f;

  // Correlated initial mixture: |+><+| on the control, maximally mixed
  // registers.
  Eigen::MatrixXcd rho0 = Eigen::MatrixXcd::Zero(dim, dim);
  double w = 1.0 / static_cast<double>(dim);
  for (int c = 0; c < 2; ++c)
    for (int c2 = 0; c2 < 2; ++c2)
      for (int i = 0; i < reg * reg; ++i)
        rho0(c * reg * reg + i, c2 * reg * reg + i) = w;

  Eigen::MatrixXcd rho = chain * rho0 * chain.adjoint();
  Complex e = 0.0;
  for (int i = 0; i < reg * reg; ++i)
    e += rho(i, reg * reg + i) + rho(reg * reg + i, i);
  return e.real();
}

std::pair<double, double> standard_dqc1(const Eigen::MatrixXcd& u) {
  const int n = width_for_unitary(u);
  check_unitary(u);
  const int reg = 1 << n;
  const double w = 1.0 / std::sqrt(2.0);
  double re = 0.0, im = 0.0;
  // One clean control qubit, maximally mixed register: average the
  // controlled-U circuit over register basis states.
  for (int m = 0; m < reg; ++m) {
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(reg);
    a[m] = w;                        // control |0> branch
    Eigen::VectorXcd b = w * u.col(m);  // control |1> branch
    Complex overlap = a.dot(b);         // conjugates a
    re += 2.0 * overlap.real();
    im += 2.0 * overlap.imag();
  }
  return {re / reg, im / reg};
}

}  // namespace iontrace::gatelevel
