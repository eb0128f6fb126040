// Copyright 2026 The lindsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "lindsim/config.hpp"
#include "lindsim/engine.hpp"
#include "lindsim/linalg.hpp"
#include "lindsim/stoch_channel.hpp"
#include "lindsim/errors.hpp"

using namespace lindsim;
using nlohmann::json;

namespace {

const std::array<const char*, 7> kBundledConfigs = {
    "depolarizing_2q.json", "dephasing_x.json",  "mode_check.json",
    "timedep_dephasing.json", "reset_mixed.json", "pauli_twirl.json",
    "custom_jumps.json"};

std::string config_path(const std::string& name) {
  return std::string(LINDSIM_CONFIG_DIR) + "/" + name;
}

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(LINDSIM_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof(buf), pipe)) {
    output.append(buf, got);
  }
  const int status = pclose(pipe);
  return RunResult{WEXITSTATUS(status), std::move(output)};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("bundled configs parse and round-trip semantically") {
  for (const char* name : kBundledConfigs) {
    CAPTURE(name);
    const ModelConfig first = load_model_config(config_path(name));
    const std::string serialized = serialize_model_config(first);
    const ModelConfig second = parse_model_config(serialized);
    CHECK(serialize_model_config(second) == serialized);
    // Semantic identity: both realize the same model.
    const BuiltModel a = build_model(first);
    const BuiltModel b = build_model(second);
    CHECK(a.n_qubits == b.n_qubits);
    CHECK((a.hamiltonian.to_matrix() - b.hamiltonian.to_matrix()).max_abs() <
          1e-14);
    CHECK(a.lindblad.has_value() == b.lindblad.has_value());
    if (a.lindblad) {
      const auto la = build_liouvillian(*a.lindblad);
      const auto lb = build_liouvillian(*b.lindblad);
      CHECK((la.matrix() - lb.matrix()).max_abs() < 1e-13);
    }
  }
}

TEST_CASE("parse failures carry field diagnostics") {
  // Bad Pauli letter.
  try {
    parse_model_config(R"({
      "n_qubits": 1,
      "hamiltonian": [{"coeff": 1.0, "pauli": "Q"}],
      "dissipator": {"kind": "dephasing", "Gamma": 1.0},
      "initial_state": "0"
    })");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    const std::string what = e.what();
    CHECK(what.find("hamiltonian[0].pauli") != std::string::npos);
    CHECK(what.find("Q") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_model_config("{ not json"), ParseError);
  CHECK_THROWS_AS(parse_model_config(R"({"n_qubits": 1})"), ParseError);
  CHECK_THROWS_AS(parse_model_config(R"({
      "n_qubits": 1,
      "dissipator": {"kind": "wobble"},
      "initial_state": "0"
  })"),
                  ParseError);
}

TEST_CASE("phase strings map to the four units") {
  CHECK(parse_phase("+1") == cplx(1, 0));
  CHECK(parse_phase("-1") == cplx(-1, 0));
  CHECK(parse_phase("+i") == cplx(0, 1));
  CHECK(parse_phase("-i") == cplx(0, -1));
  CHECK_THROWS_AS(parse_phase("2"), ParseError);
  CHECK(phase_to_string(cplx(0, -1)) == "-i");
}

TEST_CASE("reset Lindbladian matches the closed-form relaxation") {
  const double rate = 0.8;
  const PrepareOp ens({{0.75, StateVector::basis_state(1, "0")},
                       {0.25, StateVector::basis_state(1, "1")}});
  const LindbladSpec spec =
      reset_lindblad_spec(HamiltonianSpec::zero(1), rate, ens);
  const double T = 0.6;
  const DensityMatrix rho0 = DensityMatrix::basis_state(1, 1);
  const DensityMatrix out = exact_propagate(spec, rho0, T);

  const double stay = std::exp(-rate * T);
  ComplexMatrix expected = rho0.matrix();
  expected *= cplx(stay, 0.0);
  ComplexMatrix target = ens.density().matrix();
  target *= cplx(1.0 - stay, 0.0);
  expected += target;
  CHECK(trace_distance(out, DensityMatrix(1, std::move(expected))) < 1e-10);

  // The Definition-style step channel reproduces exp(dt D) exactly.
  const double dt = 0.3;
  const StochasticChannel step =
      reset_channel(std::exp(-rate * dt), ens);
  CHECK(trace_distance(step.apply_exact(rho0),
                       exact_propagate(spec, rho0, dt)) < 1e-10);
}

TEST_CASE("cli: T = 0 reproduces the input state") {
  const RunResult res = run_cli("simulate --config " +
                                config_path("depolarizing_2q.json") +
                                " --time 0 --json");
  REQUIRE(res.exit_code == 0);
  const json record = json::parse(res.output);
  CHECK(record.at("r").get<long>() == 0);
  const auto state = record.at("final_state");
  // |01><01| has a single unit entry at (1, 1).
  CHECK(state[1][1][0].get<double>() == doctest::Approx(1.0));
  CHECK(state[0][0][0].get<double>() == doctest::Approx(0.0));
}

TEST_CASE("cli: reported r matches step_count") {
  const RunResult res = run_cli("simulate --config " +
                                config_path("depolarizing_2q.json") +
                                " --time 1 --epsilon 1e-3 --c0 0.1 --json");
  REQUIRE(res.exit_code == 0);
  const json record = json::parse(res.output);

  const ModelConfig cfg =
      load_model_config(config_path("depolarizing_2q.json"));
  const BuiltModel model = build_model(cfg);
  const StepCount sc = step_count(*model.lindblad, 1.0, 1e-3, 0.1);
  CHECK(record.at("r").get<long>() == sc.r);
  CHECK(record.at("oracle_calls").get<long>() == sc.r);
}

TEST_CASE("cli: exit codes for the failure modes") {
  CHECK(run_cli("simulate --config /no/such/file.json").exit_code == 2);

  // Bad Pauli letter in a config file: parse failure with a diagnostic.
  const std::string bad_path = "/tmp/lindsim_bad_config.json";
  {
    std::ofstream out(bad_path);
    out << R"({"n_qubits": 1,
               "hamiltonian": [{"coeff": 1.0, "pauli": "A"}],
               "dissipator": {"kind": "dephasing", "Gamma": 1.0},
               "initial_state": "0"})";
  }
  const RunResult bad = run_cli("simulate --config " + bad_path);
  CHECK(bad.exit_code == 2);
  CHECK(bad.output.find("pauli") != std::string::npos);

  CHECK(run_cli("verify --suite nonsense").exit_code == 3);

  // Invalid parameters: negative epsilon.
  const RunResult neg = run_cli("simulate --config " +
                                config_path("mode_check.json") +
                                " --epsilon -1");
  CHECK(neg.exit_code == 3);
}

TEST_CASE("cli: fixed seed gives byte-identical outputs") {
  const std::string out1 = "/tmp/lindsim_traj_a.json";
  const std::string out2 = "/tmp/lindsim_traj_b.json";
  const std::string args = "simulate --config " +
                           config_path("mode_check.json") +
                           " --time 1 --epsilon 1e-3 --mode traj --ntraj 500 "
                           "--seed 42 --json --out ";
  REQUIRE(run_cli(args + out1).exit_code == 0);
  REQUIRE(run_cli(args + out2).exit_code == 0);
  CHECK(read_file(out1) == read_file(out2));
  CHECK(read_file(out1).find("estimate") != std::string::npos);
}

TEST_CASE("cli: verify emits deterministic CSV") {
  const std::string out1 = "/tmp/lindsim_csv_a.csv";
  const std::string out2 = "/tmp/lindsim_csv_b.csv";
  REQUIRE(run_cli("verify --suite modes --seed 3 --out " + out1).exit_code ==
          0);
  REQUIRE(run_cli("verify --suite modes --seed 3 --out " + out2).exit_code ==
          0);
  const std::string a = read_file(out1);
  CHECK(a == read_file(out2));
  CHECK(a.rfind("instance,measured,bound,ratio,pass", 0) == 0);
}

TEST_CASE("cli: reset and timedep configs run end to end") {
  const RunResult reset = run_cli("simulate --config " +
                                  config_path("reset_mixed.json") +
                                  " --time 1 --epsilon 1e-2 --json");
  CHECK(reset.exit_code == 0);
  const RunResult timedep = run_cli("simulate --config " +
                                    config_path("timedep_dephasing.json") +
                                    " --time 0.5 --epsilon 1e-2 --json");
  CHECK(timedep.exit_code == 0);
  const json record = json::parse(timedep.output);
  CHECK(record.contains("sup_pauli_norm"));
  CHECK(record.contains("sup_dissipator_norm"));

  const RunResult td_traj = run_cli(
      "simulate --config " + config_path("timedep_dephasing.json") +
      " --time 0.5 --epsilon 1e-2 --mode traj --ntraj 200 --seed 4 --json");
  CHECK(td_traj.exit_code == 0);
  CHECK(json::parse(td_traj.output).contains("estimate"));
}
