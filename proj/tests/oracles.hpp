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

// Independent oracles for the test suites. These deliberately avoid the
// library's own computation paths: the exponential is a scaled Taylor series,
// rotations come from the closed 2x2 form, traces are summed directly.

#ifndef IONTRACE_TESTS_ORACLES_HPP
#define IONTRACE_TESTS_ORACLES_HPP

#include <complex>
#include <random>
#include <Eigen/Dense>

namespace oracles {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;

/// Matrix exponential by scaling and squaring with a plain Taylor series.
inline Mat expm_series(const Mat& g) {
  double norm = g.cwiseAbs().rowwise().sum().maxCoeff();  // inf-norm bound
  int squarings = 0;
  while (norm > 0.25) {
    norm /= 2.0;
    ++squarings;
  }
  Mat scaled = g / std::pow(2.0, squarings);
  Mat term = Mat::Identity(g.rows(), g.cols());
  Mat sum = term;
  for (int k = 1; k <= 24; ++k) {
    term = scaled * term / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

/// Closed-form 2x2 block a resonant two-level coupling produces:
/// [[cos(e/2), -e^{i phi} sin(e/2)], [e^{-i phi} sin(e/2), cos(e/2)]]
/// with effective angle e.
inline Eigen::Matrix2cd coupling_block(double effective_angle, double phi) {
  double c = std::cos(effective_angle / 2.0), s = std::sin(effective_angle / 2.0);
  Eigen::Matrix2cd m;
  m << c, -s * std::exp(Complex(0, phi)), s * std::exp(Complex(0, -phi)), c;
  return m;
}

/// Haar-ish random unitary via QR of a Gaussian matrix.
inline Mat random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Mat z(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) z(r, c) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<Mat> qr(z);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    Complex d = r(i, i);
    q.col(i) *= d / std::abs(d);
  }
  return q;
}

inline Mat random_antihermitian(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Mat z(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) z(r, c) = Complex(normal(rng), normal(rng));
  return 0.5 * (z - z.adjoint().eval());
}

/// |tr(u) / dim|^2 summed directly.
inline double normalized_trace_sq(const Mat& u) {
  Complex t = 0.0;
  for (int i = 0; i < u.rows(); ++i) t += u(i, i);
  t /= static_cast<double>(u.rows());
  return std::norm(t);
}

}  // namespace oracles

#endif  // IONTRACE_TESTS_ORACLES_HPP
