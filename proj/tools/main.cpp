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

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include <CLI11.hpp>

#include "iontrace/gatelevel.hpp"
#include "iontrace/netapi.hpp"
#include "iontrace/tomography.hpp"
#include "svg.hpp"

namespace {

using namespace iontrace;

// Exit codes: 0 success, 2 flag/usage, 3 transport, 4 contract, 5 data/file.
constexpr int kExitUsage = 2;
constexpr int kExitTransport = 3;
constexpr int kExitContract = 4;
constexpr int kExitData = 5;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw std::runtime_error("cannot write output file: " + path);
}

struct BenchUnitary {
  std::string pauli;
  int axis;
  double chi;
};

// The benchmark family: all three Pauli axes over seven angles, with the
// angle-zero identity listed once (19 in total). The row index doubles as the
// rng stream of each run.
std::vector<BenchUnitary> benchmark_rows() {
  std::vector<BenchUnitary> rows;
  const double angles[] = {0.0,           M_PI / 6.0,      M_PI / 3.0, M_PI / 2.0,
                           2.0 * M_PI / 3.0, 5.0 * M_PI / 6.0, M_PI};
  for (int axis = 1; axis <= 3; ++axis)
    for (double chi : angles) {
      if (chi == 0.0 && axis != 1) continue;
      rows.push_back({"s" + std::to_string(axis), axis, chi});
    }
  return rows;
}

Schedule parse_schedule(const std::string& name) {
  if (name == "enumerated") return Schedule::enumerated;
  if (name == "uniform") return Schedule::uniform;
  throw ParameterError("schedule must be 'enumerated' or 'uniform'");
}

std::optional<double> load_calibration(const std::string& path) {
  if (path.empty()) return std::nullopt;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read calibration file: " + path);
  nlohmann::json j;
  in >> j;
  double lambda_hat = j.at("lambda_hat").get<double>();
  if (!(lambda_hat > 0.0))
    throw ParameterError("calibration file has a non-positive lambda_hat");
  return lambda_hat;
}

std::string bench_csv_row(const BenchUnitary& row, const EstimateResult& r) {
  std::string calibrated = r.calibrated ? fmt17(*r.calibrated) : "";
  return row.pauli + "," + fmt17(row.chi) + "," + std::to_string(r.shots) + "," +
         fmt17(r.raw_mean) + "," + calibrated + "," + fmt17(r.stderr_of_mean) + "," +
         fmt17(std::pow(std::cos(row.chi / 2.0), 2)) + "\n";
}

constexpr const char* kBenchCsvHeader = "pauli,chi,shots,raw,calibrated,stderr,theory\n";

int cmd_bench(long long shots, double lambda, std::uint64_t seed, const std::string& schedule,
              const std::string& out_csv, const std::string& out_svg,
              const std::string& calibration_file) {
  Client client;
  NoiseConfig noise{lambda};
  Schedule sched = parse_schedule(schedule);
  std::optional<double> lambda_hat = load_calibration(calibration_file);

  std::string csv = kBenchCsvHeader;
  std::vector<tools::BenchPlotRow> plot;
  auto rows = benchmark_rows();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ServerHandle server = server_for(UnitarySpec::pauli_rotation(rows[i].axis, rows[i].chi));
    EstimateResult r = client.estimate_trace(server, shots, noise, seed, sched,
                                             static_cast<std::uint64_t>(i));
    if (lambda_hat) r.apply_calibration(*lambda_hat);
    csv += bench_csv_row(rows[i], r);
    double value = r.calibrated.value_or(r.raw_mean);
    double hw = 1.96 * r.stderr_of_mean / (lambda_hat ? *lambda_hat : 1.0);
    plot.push_back({rows[i].pauli + " " + fmt17(rows[i].chi).substr(0, 5), value, hw,
                    std::pow(std::cos(rows[i].chi / 2.0), 2)});
  }
  write_file(out_csv, csv);
  if (!out_svg.empty()) write_file(out_svg, tools::bench_svg(plot));
  std::cout << "wrote " << out_csv << " (" << rows.size() << " rows)\n";
  return 0;
}

int cmd_calibrate(long long shots, double lambda, std::uint64_t seed,
                  const std::string& out_json, const std::string& address) {
  Client client;
  Calibration c;
  if (!address.empty()) {
    ServerHandle remote = net::remote_server_handle(address);
    c = client.calibrate(shots, NoiseConfig{lambda}, seed, &remote);
  } else {
    c = client.calibrate(shots, NoiseConfig{lambda}, seed);
  }
  nlohmann::json j{{"lambda_hat", c.lambda_hat},
                   {"half_width_95", c.half_width_95},
                   {"shots", c.shots},
                   {"seed", seed}};
  if (!out_json.empty()) write_file(out_json, j.dump(2) + "\n");
  std::cout << "lambda_hat = " << fmt17(c.lambda_hat) << " +- " << fmt17(c.half_width_95)
            << " (95% half-width, " << shots << " shots)\n";
  return 0;
}

int cmd_tomography(long long shots_per_cell, double lambda_f, std::uint64_t seed,
                   const std::string& out_json, const std::string& out_svg) {
  Tomograph tomo;
  TruthTable table = tomo.full_truth_table(shots_per_cell, NoiseConfig{lambda_f}, seed);
  FidelityReport fidelity = tomo.classical_fidelity(table);
  write_file(out_json, tomo.report(table, fidelity).dump(2) + "\n");
  if (!out_svg.empty()) write_file(out_svg, tools::truth_table_svg(table));
  std::cout << "classical fidelity = " << fmt17(fidelity.classical_fidelity) << "\n";
  return 0;
}

int cmd_gate_bench(int n, const std::string& unitary_file, long long pairs, long long shots,
                   std::uint64_t seed, const std::string& out_csv) {
  UnitarySpec spec = UnitarySpec::load_file(unitary_file);
  if (n != 0 && n != spec.qubits())
    throw ParameterError("--n does not match the unitary file (" +
                         std::to_string(spec.qubits()) + " qubits)");
  Eigen::MatrixXcd u = spec.matrix();
  EstimateResult r = gatelevel::modular_estimate(u, pairs, shots, seed);
  double exact = gatelevel::exact_expectation(u);
  std::string csv = "n,pairs,shots_per_pair,estimate,stderr,exact\n";
  csv += std::to_string(spec.qubits()) + "," + std::to_string(pairs) + "," +
         std::to_string(shots) + "," + fmt17(r.raw_mean) + "," + fmt17(r.stderr_of_mean) +
         "," + fmt17(exact) + "\n";
  write_file(out_csv, csv);
  std::cout << "estimate = " << fmt17(r.raw_mean) << " (exact " << fmt17(exact) << ")\n";
  return 0;
}

int cmd_serve(const std::string& unitary_file, const std::string& bind) {
  UnitarySpec spec = UnitarySpec::load_file(unitary_file);
  auto [host, port] = net::parse_address(bind);
  net::Server server(spec, host, port);
  server.start();
  std::cout << "listening on " << server.host() << ":" << server.port() << std::endl;
  while (true) std::this_thread::sleep_for(std::chrono::seconds(1));
  return 0;  // unreachable; the process is killed externally
}

int cmd_run_remote(const std::string& address, int row_index, long long shots,
                   std::uint64_t seed, const std::string& schedule, const std::string& out_csv,
                   const std::string& calibration_file) {
  auto rows = benchmark_rows();
  if (row_index < 0 || row_index >= static_cast<int>(rows.size()))
    throw ParameterError("--row must lie in 0..18");
  Client client;
  ServerHandle server = net::remote_server_handle(address);
  std::optional<double> lambda_hat = load_calibration(calibration_file);
  // The remote device is assumed noiseless here; decoherence lives in the
  // client model, identical to the in-process bench.
  EstimateResult r = client.estimate_trace(server, shots, NoiseConfig{1.0}, seed,
                                           parse_schedule(schedule),
                                           static_cast<std::uint64_t>(row_index));
  if (lambda_hat) r.apply_calibration(*lambda_hat);
  write_file(out_csv, std::string(kBenchCsvHeader) + bench_csv_row(rows[row_index], r));
  std::cout << "wrote " << out_csv << " (1 row)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pulse-level trace-estimation workbench for a trapped-ion device"};
  app.require_subcommand(1);

  struct {
    long long shots = 4000;
    double lambda = 1.0;
    std::uint64_t seed = 1;
    std::string schedule = "enumerated";
    std::string out_csv, out_svg, calibration;
  } b;
  CLI::App* bench = app.add_subcommand(
      "bench", "run the 19-unitary benchmark against in-process servers");
  bench->add_option("--shots", b.shots, "shots per unitary")->capture_default_str();
  bench->add_option("--lambda", b.lambda, "depolarizing survival probability")
      ->capture_default_str();
  bench->add_option("--seed", b.seed, "master seed")->capture_default_str();
  bench->add_option("--schedule", b.schedule, "enumerated|uniform")->capture_default_str();
  bench->add_option("--out", b.out_csv, "output CSV path")->required();
  bench->add_option("--svg", b.out_svg, "optional SVG plot path");
  bench->add_option("--calibration", b.calibration,
                    "calibration report to divide estimates by");

  struct {
    long long shots = 10000;
    double lambda = 1.0;
    std::uint64_t seed = 1;
    std::string out_json, address;
  } c;
  CLI::App* calibrate = app.add_subcommand(
      "calibrate", "estimate the survival probability with the identity server");
  calibrate->add_option("--shots", c.shots, "calibration shots")->capture_default_str();
  calibrate->add_option("--lambda", c.lambda, "true survival probability of the device")
      ->capture_default_str();
  calibrate->add_option("--seed", c.seed, "master seed")->capture_default_str();
  calibrate->add_option("--out", c.out_json, "write the calibration report here");
  calibrate->add_option("--address", c.address,
                        "calibrate against a remote identity server instead");

  struct {
    long long shots_per_cell = 2000;
    double lambda_f = 1.0;
    std::uint64_t seed = 1;
    std::string out_json, out_svg;
  } t;
  CLI::App* tomography = app.add_subcommand(
      "tomography", "measure the controlled-swap truth table and fidelity");
  tomography->add_option("--shots-per-cell", t.shots_per_cell, "shots per table cell")
      ->capture_default_str();
  tomography->add_option("--lambda-f", t.lambda_f, "survival probability of the swap gate")
      ->capture_default_str();
  tomography->add_option("--seed", t.seed, "master seed")->capture_default_str();
  tomography->add_option("--out", t.out_json, "output JSON report path")->required();
  tomography->add_option("--svg", t.out_svg, "optional SVG truth-table rendering");

  struct {
    int n = 0;
    std::string unitary_file, out_csv;
    long long pairs = 128, shots = 128;
    std::uint64_t seed = 1;
  } g;
  CLI::App* gate_bench = app.add_subcommand(
      "gate-bench", "sampled gate-level estimate for an n-qubit unitary");
  gate_bench->add_option("--n", g.n, "register width (checked against the file)");
  gate_bench->add_option("--unitary-file", g.unitary_file, "unitary spec file")->required();
  gate_bench->add_option("--pairs", g.pairs, "register pairs to sample")
      ->capture_default_str();
  gate_bench->add_option("--shots", g.shots, "detections per pair")->capture_default_str();
  gate_bench->add_option("--seed", g.seed, "master seed")->capture_default_str();
  gate_bench->add_option("--out", g.out_csv, "output CSV path")->required();

  struct {
    std::string unitary_file;
    std::string bind = net::default_address();
  } sv;
  CLI::App* serve = app.add_subcommand("serve", "serve a unitary over TCP");
  serve->add_option("--unitary-file", sv.unitary_file, "unitary spec file")->required();
  serve->add_option("--bind", sv.bind, "host:port to bind (port 0 picks one)")
      ->capture_default_str();

  struct {
    std::string address = net::default_address();
    int row = -1;
    long long shots = 4000;
    std::uint64_t seed = 1;
    std::string schedule = "enumerated";
    std::string out_csv, calibration;
  } rr;
  CLI::App* run_remote = app.add_subcommand(
      "run-remote", "run one benchmark row against a remote server");
  run_remote->add_option("--address", rr.address, "server address")->capture_default_str();
  run_remote->add_option("--row", rr.row, "benchmark row index (0..18)")->required();
  run_remote->add_option("--shots", rr.shots, "shots")->capture_default_str();
  run_remote->add_option("--seed", rr.seed, "master seed")->capture_default_str();
  run_remote->add_option("--schedule", rr.schedule, "enumerated|uniform")
      ->capture_default_str();
  run_remote->add_option("--out", rr.out_csv, "output CSV path")->required();
  run_remote->add_option("--calibration", rr.calibration,
                         "calibration report to divide estimates by");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (bench->parsed())
      return cmd_bench(b.shots, b.lambda, b.seed, b.schedule, b.out_csv, b.out_svg,
                       b.calibration);
    if (calibrate->parsed())
      return cmd_calibrate(c.shots, c.lambda, c.seed, c.out_json, c.address);
    if (tomography->parsed())
      return cmd_tomography(t.shots_per_cell, t.lambda_f, t.seed, t.out_json, t.out_svg);
    if (gate_bench->parsed())
      return cmd_gate_bench(g.n, g.unitary_file, g.pairs, g.shots, g.seed, g.out_csv);
    if (serve->parsed()) return cmd_serve(sv.unitary_file, sv.bind);
    if (run_remote->parsed())
      return cmd_run_remote(rr.address, rr.row, rr.shots, rr.seed, rr.schedule, rr.out_csv,
                            rr.calibration);
  } catch (const TransportError& e) {
    std::cerr << "transport error: " << e.what() << "\n";
    return kExitTransport;
  } catch (const ContractError& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    return kExitContract;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
