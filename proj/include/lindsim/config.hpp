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

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lindsim/model.hpp"
#include "lindsim/stoch_channel.hpp"
#include "lindsim/timedep.hpp"

namespace lindsim {

/// Parsed form of the JSON model file. Phases are written as one of
/// "+1", "-1", "+i", "-i".
struct ConfigPauliTerm {
  double coeff;
  std::string pauli;
  std::string phase = "+1";
};

struct DepolarizingConfig {
  double gamma;
};
struct DephasingConfig {
  double Gamma;
};
struct PauliTwirlConfig {
  // Rates per non-identity Pauli string.
  std::vector<std::pair<double, std::string>> probs;
};
struct ResetConfig {
  // q is the reset rate kappa: D(rho) = q (rho_f tr(rho) - rho), realized per
  // step as the exact channel {e^{-q dt}: identity, 1 - e^{-q dt}: prepare}.
  double q;
  std::vector<std::pair<double, std::string>> ensemble;  // (weight, basis)
};
struct CustomJumpConfig {
  cplx alpha;
  std::string pauli;
  std::string phase = "+1";
};
struct CustomConfig {
  std::vector<CustomJumpConfig> jumps;
};
struct TimeDepJumpConfig {
  std::string profile_type;  // constant | sinusoid | piecewise_linear
  double c = 0.0;            // constant value
  double base = 0.0;
  double amp = 0.0;
  double omega = 0.0;
  std::vector<std::pair<double, double>> knots;
  std::string pauli;
};
struct TimeDepConfig {
  std::vector<TimeDepJumpConfig> jumps;
};

using DissipatorConfig =
    std::variant<DepolarizingConfig, DephasingConfig, PauliTwirlConfig,
                 ResetConfig, CustomConfig, TimeDepConfig>;

struct InitialStateConfig {
  // Either a basis label or an ensemble of (weight, basis label).
  std::optional<std::string> basis;
  std::vector<std::pair<double, std::string>> ensemble;
};

struct ModelConfig {
  int n_qubits = 1;
  std::vector<ConfigPauliTerm> hamiltonian;
  DissipatorConfig dissipator = DepolarizingConfig{0.0};
  InitialStateConfig initial_state;
  std::vector<ConfigPauliTerm> observable;
};

/// Throws ParseError with a field diagnostic on any syntax or schema problem.
ModelConfig parse_model_config(const std::string& json_text);
ModelConfig load_model_config(const std::string& path);
std::string serialize_model_config(const ModelConfig& config);

/// Semantic realization of a config.
struct BuiltModel {
  int n_qubits;
  HamiltonianSpec hamiltonian;
  // Unitary-jump kinds parse to a LindbladSpec; reset keeps (rate, ensemble)
  // for per-step channel construction; timedep carries the profile family.
  std::optional<LindbladSpec> lindblad;
  std::optional<double> reset_rate;
  std::optional<PrepareOp> reset_ensemble;
  std::optional<TimeDepDissipator> timedep;
  PrepareOp initial;
  PauliObservable observable;
};

BuiltModel build_model(const ModelConfig& config);

/// Lindblad form of a reset process D(rho) = rate (rho_f tr(rho) - rho):
/// jumps sqrt(rate * w_j) |psi_j><e_k| over the ensemble members and the
/// computational basis, expanded into Pauli terms.
LindbladSpec reset_lindblad_spec(const HamiltonianSpec& h, double rate,
                                 const PrepareOp& ensemble);

cplx parse_phase(const std::string& phase);
std::string phase_to_string(cplx phase);

}  // namespace lindsim
