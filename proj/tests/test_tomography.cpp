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

#include <doctest.h>

#include <cmath>

#include "iontrace/tomography.hpp"

using namespace iontrace;

namespace {

const Tomograph& tomograph() {
  static Tomograph t;
  return t;
}

double wrap_angle(double a) {
  while (a > M_PI) a -= 2.0 * M_PI;
  while (a <= -M_PI) a += 2.0 * M_PI;
  return a;
}

int code(int c, int x, int y) { return c * 4 + x * 2 + y; }

}  // namespace

TEST_CASE("population measurements on published elements") {
  SUBCASE("the swapped pair transfers with certainty") {
    double p = tomograph().population(code(1, 0, 1), code(1, 1, 0), 500, NoiseConfig{}, 3);
    CHECK(p == 1.0);  // the dark probability is exactly one, so every shot is dark
  }

  SUBCASE("orthogonal elements never fire") {
    double p = tomograph().population(code(0, 0, 0), code(1, 1, 1), 500, NoiseConfig{}, 4);
    CHECK(p == 0.0);
  }

  SUBCASE("a depolarized gate mixes toward one eighth") {
    const double lf = 0.7;
    double p = tomograph().population(0, 0, 20000, NoiseConfig{lf}, 5);
    double want = lf + (1.0 - lf) / 8.0;
    CHECK(std::abs(p - want) < 4.0 / std::sqrt(20000.0));
  }

  SUBCASE("bad codes are rejected") {
    CHECK_THROWS_AS(tomograph().population(8, 0, 10, NoiseConfig{}, 1), ParameterError);
  }
}

TEST_CASE("relative phases of the major elements") {
  const auto& pairs = major_phase_pairs();
  REQUIRE(pairs.size() == 8);

  SUBCASE("diagonal pairs carry phase zero") {
    const long long shots = 5000;
    const double tol = 4.0 / std::sqrt(static_cast<double>(shots));
    double ph = tomograph().phase_pair(pairs[0], shots, 7);  // <100|F|100> vs reference
    CHECK(std::abs(wrap_angle(ph)) < tol);
    ph = tomograph().phase_pair(pairs[4], shots, 7);  // <111|F|111> vs <001|F|001>
    CHECK(std::abs(wrap_angle(ph)) < tol);
  }

  SUBCASE("the swapped element carries the negative sign") {
    const long long shots = 5000;
    double ph = tomograph().phase_pair(pairs[1], shots, 8);  // <101|F|110>
    CHECK(std::abs(wrap_angle(ph - M_PI)) < 4.0 / std::sqrt(static_cast<double>(shots)));
  }

  SUBCASE("non-major pairs are rejected") {
    PhasePairSpec bad{{0, 0, 0}, {0, 0, 0}, {1, 0, 1}, {1, 0, 1}};  // |<101|F|101>| = 0
    CHECK_THROWS_AS(tomograph().phase_pair(bad, 100, 1), ParameterError);
  }

  SUBCASE("the two preparations agree before averaging") {
    auto [a, b] = tomograph().phase_pair_estimates(pairs[1], 400, 9);
    CHECK(std::abs(wrap_angle(a - b)) < 4.0 / std::sqrt(400.0));
  }
}

TEST_CASE("quadrant recovery under synthetic rotations") {
  // Multiply the swapped column by e^{i theta}; the reconstructed phase of
  // the (101,110) element must move from pi to pi + theta, in every quadrant.
  for (double theta : {M_PI / 4.0, -M_PI / 4.0, 3.0 * M_PI / 4.0, -3.0 * M_PI / 4.0}) {
    Tomograph t;
    FockDims dims;
    OperatorMatrix rot = OperatorMatrix::Identity(dims.dim(), dims.dim());
    rot(dims.index(1, 1, 0), dims.index(1, 1, 0)) = std::exp(Complex(0, theta));
    t.set_fredkin_matrix(f_gate(0.0).matrix(dims) * rot);
    const long long shots = 5000;
    double ph = t.phase_pair(major_phase_pairs()[1], shots, 11);
    CHECK(std::abs(wrap_angle(ph - M_PI - theta)) < 4.0 / std::sqrt(static_cast<double>(shots)));
  }
}

TEST_CASE("noiseless truth table equals the analytic pattern") {
  TruthTable t = tomograph().full_truth_table(400, NoiseConfig{}, 13);
  Eigen::Matrix<Complex, 8, 8> want = fredkin_target(0.0);
  for (int in = 0; in < 8; ++in) {
    double column = 0.0;
    for (int out = 0; out < 8; ++out) {
      CHECK(std::abs(t.amplitudes(out, in) - std::abs(want(out, in))) < 1e-12);
      column += t.amplitudes(out, in) * t.amplitudes(out, in);
    }
    CHECK(std::abs(column - 1.0) < 4.0 / std::sqrt(400.0));
  }
  FidelityReport f = tomograph().classical_fidelity(t);
  CHECK(f.classical_fidelity == 1.0);
}

TEST_CASE("classical fidelity under gate depolarization") {
  // Survival 0.8286 puts every correct-output probability at
  // 0.8286 + (1 - 0.8286)/8, i.e. a fidelity of 0.85.
  TruthTable t = tomograph().full_truth_table(4000, NoiseConfig{0.8286}, 17);
  FidelityReport f = tomograph().classical_fidelity(t);
  CHECK(std::abs(f.classical_fidelity - 0.85) < 0.02);
  for (int in = 0; in < 8; ++in) {
    CHECK(f.per_input_correct[in] > 0.75);
    CHECK(f.half_width_95[in] > 0.0);
  }
}

TEST_CASE("a uniform table scores one eighth") {
  TruthTable t;
  t.amplitudes.setConstant(std::sqrt(1.0 / 8.0));
  t.shots_per_cell = 100;
  FidelityReport f = tomograph().classical_fidelity(t);
  CHECK(f.classical_fidelity == doctest::Approx(0.125));
}

TEST_CASE("tomography runs are deterministic per seed") {
  double a = tomograph().population(3, 3, 300, NoiseConfig{0.9}, 23);
  double b = tomograph().population(3, 3, 300, NoiseConfig{0.9}, 23);
  CHECK(a == b);
}

TEST_CASE("the dark-level mapper precondition is enforced") {
  // A gate that parks population at Fock level 2 (the simultaneous pi
  // transfer does, from x = 1 inputs) must be rejected before the mapper.
  Tomograph t;
  t.set_fredkin_matrix(p_x(0.0).matrix(FockDims{}));
  CHECK_THROWS_AS(t.population(code(0, 1, 0), code(1, 1, 1), 10, NoiseConfig{}, 1),
                  ContractError);
}

TEST_CASE("report serialization carries the full measurement") {
  TruthTable t = tomograph().full_truth_table(64, NoiseConfig{}, 29);
  FidelityReport f = tomograph().classical_fidelity(t);
  nlohmann::json j = tomograph().report(t, f);
  CHECK(j["amplitudes"].size() == 8);
  CHECK(j["amplitudes"][0].size() == 8);
  CHECK(j["phases"].size() == 8);
  CHECK(j["shots_per_cell"] == 64);
  CHECK(j["seed"] == 29);
  CHECK(j.contains("classical_fidelity"));
  CHECK(j.contains("phase_convention"));
}
