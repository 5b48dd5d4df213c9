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

#include <benchmark/benchmark.h>

#include "iontrace/gatelevel.hpp"
#include "iontrace/protocol.hpp"
#include "iontrace/tomography.hpp"

using namespace iontrace;

static void PulseExponential(benchmark::State& state) {
  Pulse p{PulseKind::sideband_x, M_PI / std::sqrt(2.0), 0.37};
  for (auto _ : state) {
    OperatorMatrix u = pulse_unitary(p);
    benchmark::DoNotOptimize(u.data());
  }
}
BENCHMARK(PulseExponential);

static void FredkinComposition(benchmark::State& state) {
  for (auto _ : state) {
    OperatorMatrix u = f_gate(0.0).matrix();
    benchmark::DoNotOptimize(u.data());
  }
}
BENCHMARK(FredkinComposition);

static void ShotThroughput(benchmark::State& state) {
  Client client;
  ServerHandle server = server_for(UnitarySpec::pauli_rotation(2, M_PI / 3.0));
  std::uint64_t i = 0;
  for (auto _ : state) {
    RngStream rng = substream(1, 0, i++);
    int outcome = client.run_shot(server, static_cast<int>(i % 2),
                                  static_cast<int>((i / 2) % 2), NoiseConfig{0.9}, rng);
    benchmark::DoNotOptimize(outcome);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(ShotThroughput);

static void ExactExpectation(benchmark::State& state) {
  Client client;
  Eigen::Matrix2cd u = UnitarySpec::pauli_rotation(1, M_PI / 3.0).qubit_matrix();
  for (auto _ : state) {
    double e = client.exact_expectation(u, NoiseConfig{0.69});
    benchmark::DoNotOptimize(e);
  }
}
BENCHMARK(ExactExpectation);

static void TomographyCell(benchmark::State& state) {
  Tomograph tomo;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    double p = tomo.population(5, 6, 200, NoiseConfig{0.9}, seed++);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(TomographyCell);

static void GateLevelEstimate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Eigen::MatrixXcd u = gate_list_matrix(
      n, {{"H", 0}, {"CX", 1, 0}, {"pauli_rotation", n - 1, -1, 3, 0.41}});
  for (auto _ : state) {
    EstimateResult r = gatelevel::modular_estimate(u, 32, 8, 5);
    benchmark::DoNotOptimize(r.raw_mean);
  }
}
BENCHMARK(GateLevelEstimate)->Arg(2)->Arg(4)->Arg(6);

BENCHMARK_MAIN();
