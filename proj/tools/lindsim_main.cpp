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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lindsim/config.hpp"
#include "lindsim/engine.hpp"
#include "lindsim/errors.hpp"
#include "lindsim/timedep.hpp"
#include "lindsim/verify.hpp"

namespace {

using namespace lindsim;
using nlohmann::json;

constexpr int kExitParse = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitCap = 4;
constexpr int kExitVerifyFailed = 5;

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

json density_to_json(const DensityMatrix& rho) {
  json rows = json::array();
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < rho.dim(); ++j) {
      const cplx v = rho.matrix()(i, j);
      row.push_back({std::real(v), std::imag(v)});
    }
    rows.push_back(row);
  }
  return rows;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      throw std::invalid_argument("cannot open output file: " + out_path);
    }
    out << text;
  }
}

// Gate/ancilla cost formulas for the truncated-Taylor-series Hamiltonian
// subroutine; reported, never executed.
json subroutine_cost_estimate(const HamiltonianSpec& h, double dt,
                              double eps_h) {
  const double weight = h.pauli_weight();
  const double s = static_cast<double>(h.terms().size());
  const double n = static_cast<double>(h.n_qubits());
  const double eps = std::max(eps_h, 1e-300);
  const double gates =
      dt * weight * s * n *
      std::log2(std::max(2.0, dt * weight / eps));
  const double ancilla =
      std::log2(std::max(2.0, s)) * std::log2(std::max(2.0, dt / eps));
  return json{{"gates_per_call_estimate", gates},
              {"ancilla_estimate", ancilla}};
}

struct SimulateArgs {
  std::string config_path;
  double T = 1.0;
  double epsilon = 1e-3;
  double c0 = 0.1;
  std::string mode = "dm";
  long ntraj = 1000;
  std::uint64_t seed = 0;
  std::string ham = "exact";
  bool json_output = false;
  std::string out_path;
};

int run_simulate(const SimulateArgs& args) {
  const ModelConfig config = load_model_config(args.config_path);
  const BuiltModel model = build_model(config);
  const HamKind kind =
      (args.ham == "trotter") ? HamKind::TrotterPauli : HamKind::ExactExp;
  const RunMode mode = (args.mode == "traj") ? RunMode::TrajectoriesMode
                                             : RunMode::DensityMatrixMode;

  std::optional<TrajectoryConfig> traj;
  if (mode == RunMode::TrajectoriesMode) {
    if (model.observable.terms().empty()) {
      throw std::invalid_argument(
          "trajectory mode needs a nonempty observable in the config");
    }
    traj = TrajectoryConfig{args.ntraj, model.observable, args.seed};
  }

  json record;
  record["mode"] = args.mode;
  record["seed"] = args.seed;
  record["epsilon"] = args.epsilon;
  record["c0"] = args.c0;
  record["T"] = args.T;

  std::optional<DensityMatrix> final_state;
  std::optional<TrajectoryResult> result;

  if (model.timedep) {
    const TimeDepPlan plan = TimeDepPlan::make(
        model.hamiltonian, *model.timedep, args.T, args.epsilon, args.c0, kind,
        mode, traj);
    record["r"] = plan.r;
    record["dt"] = plan.dt;
    record["taylor_K"] = plan.taylor_K;
    record["eps_H_budget"] = plan.eps_h_budget;
    record["certified_eps_H"] = plan.hamsub.certified_eps();
    record["sup_pauli_norm"] = plan.sup_pnorm;
    record["sup_dissipator_norm"] = plan.sup_dissipator_norm;
    record["oracle_calls"] = plan.r;
    record["ham_subroutine"] = subroutine_cost_estimate(
        model.hamiltonian, plan.dt, std::max(plan.eps_h_budget, 1e-300));
    if (mode == RunMode::DensityMatrixMode) {
      final_state = run_timedep_density(plan, model.initial.density());
    } else {
      result = run_timedep_trajectories(plan, model.initial);
    }
  } else if (model.reset_rate) {
    // Reset dissipators generate an exactly simulatable step channel, so the
    // truncation constant plays no role (c0 = 0 in the budget).
    const double kappa = *model.reset_rate;
    const LindbladSpec reset_spec =
        reset_lindblad_spec(model.hamiltonian, kappa, *model.reset_ensemble);
    long r = 0;
    double eps_h = 0.0;
    double dt = 0.0;
    if (args.T > 0.0) {
      const StepCount sc = step_count(reset_spec, args.T, args.epsilon, 0.0);
      r = sc.r;
      eps_h = sc.eps_h_budget;
      dt = args.T / static_cast<double>(r);
    }
    const double stay = (r > 0) ? std::exp(-kappa * dt) : 1.0;
    StochasticChannel channel = reset_channel(stay, *model.reset_ensemble);
    SimulationPlan plan = SimulationPlan::with_step_channel(
        model.hamiltonian, std::move(channel), r, args.T, kind, eps_h, mode,
        traj);
    record["r"] = plan.r;
    record["dt"] = plan.dt;
    record["taylor_K"] = 0;
    record["eps_H_budget"] = eps_h;
    record["certified_eps_H"] = plan.hamsub.certified_eps();
    record["pauli_norm"] = pauli_norm(reset_spec);
    record["oracle_calls"] = plan.r;
    record["ham_subroutine"] = subroutine_cost_estimate(
        model.hamiltonian, plan.dt, std::max(eps_h, 1e-300));
    if (mode == RunMode::DensityMatrixMode) {
      final_state = run_density_matrix(plan, model.initial.density());
    } else {
      result = run_trajectories(plan, model.initial);
    }
  } else {
    const SimulationPlan plan = SimulationPlan::from_spec(
        *model.lindblad, args.T, args.epsilon, args.c0, kind, mode, traj);
    record["r"] = plan.r;
    record["dt"] = plan.dt;
    record["taylor_K"] = plan.taylor_K;
    record["eps_H_budget"] = plan.eps_h_budget;
    record["certified_eps_H"] = plan.hamsub.certified_eps();
    record["pauli_norm"] = plan.pnorm;
    record["taylor_err_bound"] = plan.taylor_err_bound;
    record["oracle_calls"] = plan.r;
    record["ham_subroutine"] = subroutine_cost_estimate(
        model.hamiltonian, plan.dt, std::max(plan.eps_h_budget, 1e-300));
    if (mode == RunMode::DensityMatrixMode) {
      final_state = run_density_matrix(plan, model.initial.density());
    } else {
      result = run_trajectories(plan, model.initial);
    }
  }

  if (result) {
    record["estimate"] = result->estimate;
    record["std_error"] = result->std_error;
    record["n_traj"] = result->n_traj;
    record["prep_count"] = result->prep_count;
    record["unitary_length_histogram"] = result->unitary_length_histogram;
  }
  if (final_state) {
    record["final_state"] = density_to_json(*final_state);
  }

  std::ostringstream out;
  if (args.json_output) {
    out << record.dump(2) << "\n";
  } else {
    for (const auto& [key, value] : record.items()) {
      if (key == "final_state") continue;
      if (value.is_number_float()) {
        out << key << " = " << fmt17(value.get<double>()) << "\n";
      } else {
        out << key << " = " << value.dump() << "\n";
      }
    }
    if (final_state) {
      out << "final_state:\n";
      for (std::size_t i = 0; i < final_state->dim(); ++i) {
        for (std::size_t j = 0; j < final_state->dim(); ++j) {
          const cplx v = final_state->matrix()(i, j);
          out << fmt17(std::real(v)) << (std::imag(v) < 0 ? "-" : "+")
              << fmt17(std::abs(std::imag(v))) << "i"
              << (j + 1 < final_state->dim() ? " " : "\n");
        }
      }
    }
  }
  emit(out.str(), args.out_path);
  return 0;
}

int run_verify(const std::string& suite, std::uint64_t seed,
               const std::string& out_path) {
  VerifyReport report;
  if (suite == "converge") {
    report = verify_converge();
  } else if (suite == "bounds") {
    report = verify_bounds(seed);
  } else if (suite == "thm3") {
    report = verify_thm3();
  } else if (suite == "taylor") {
    report = verify_taylor();
  } else if (suite == "modes") {
    report = verify_modes(seed);
  } else {
    std::cerr << "unknown suite: " << suite
              << " (expected converge|bounds|thm3|taylor|modes)\n";
    return kExitInvalid;
  }
  std::ostringstream out;
  write_csv(report, out);
  emit(out.str(), out_path);
  return report.all_pass() ? 0 : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lindblad dynamics via randomly compiled dissipation gadgets"};
  app.require_subcommand(1);

  SimulateArgs sim;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Run the second-order simulation gadget on a model config");
  simulate->add_option("--config", sim.config_path, "model config (JSON)")
      ->required();
  simulate->add_option("--time", sim.T, "total evolution time T");
  simulate->add_option("--epsilon", sim.epsilon, "target diamond-norm error");
  simulate->add_option("--c0", sim.c0, "dissipator truncation constant");
  simulate->add_option("--mode", sim.mode, "dm | traj")
      ->check(CLI::IsMember({"dm", "traj"}));
  simulate->add_option("--ntraj", sim.ntraj, "trajectory count");
  simulate->add_option("--seed", sim.seed, "master seed (64-bit)");
  simulate->add_option("--ham", sim.ham, "exact | trotter Hamiltonian step")
      ->check(CLI::IsMember({"exact", "trotter"}));
  simulate->add_flag("--json", sim.json_output, "emit the record as JSON");
  simulate->add_option("--out", sim.out_path, "write output to this file");

  std::string suite;
  std::uint64_t verify_seed = 0;
  std::string verify_out;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run a verification suite and emit a CSV table");
  verify->add_option("--suite", suite,
                     "converge | bounds | thm3 | taylor | modes")
      ->required();
  verify->add_option("--seed", verify_seed, "seed for randomized suites");
  verify->add_option("--out", verify_out, "write the CSV to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*simulate) return run_simulate(sim);
    return run_verify(suite, verify_seed, verify_out);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const CapExceeded& e) {
    std::cerr << "size cap: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}
