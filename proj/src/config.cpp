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

#include "lindsim/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lindsim/errors.hpp"

namespace lindsim {

using nlohmann::json;

LindbladSpec reset_lindblad_spec(const HamiltonianSpec& h, double rate,
                                 const PrepareOp& ensemble) {
  if (rate < 0.0) {
    throw std::invalid_argument("reset_lindblad_spec: negative rate");
  }
  const int n = h.n_qubits();
  if (ensemble.n_qubits() != n) {
    throw std::invalid_argument("reset_lindblad_spec: qubit count mismatch");
  }
  std::vector<JumpSpec> jumps;
  if (rate > 0.0) {
    const std::size_t d = std::size_t(1) << n;
    for (const auto& ws : ensemble.ensemble()) {
      if (ws.weight == 0.0) continue;
      for (std::size_t k = 0; k < d; ++k) {
        ComplexMatrix ket_bra(d, d);
        for (std::size_t i = 0; i < d; ++i) {
          ket_bra(i, k) = ws.state.amplitude(i);
        }
        ket_bra *= cplx(std::sqrt(rate * ws.weight), 0.0);
        jumps.emplace_back(n, pauli_decompose(n, ket_bra));
      }
    }
  }
  return LindbladSpec(h, std::move(jumps));
}

cplx parse_phase(const std::string& phase) {
  if (phase == "+1" || phase == "1") return {1.0, 0.0};
  if (phase == "-1") return {-1.0, 0.0};
  if (phase == "+i" || phase == "i") return {0.0, 1.0};
  if (phase == "-i") return {0.0, -1.0};
  throw ParseError("phase must be one of \"+1\", \"-1\", \"+i\", \"-i\"; got \"" +
                   phase + "\"");
}

std::string phase_to_string(cplx phase) {
  if (std::abs(phase - cplx(1.0, 0.0)) < 1e-9) return "+1";
  if (std::abs(phase - cplx(-1.0, 0.0)) < 1e-9) return "-1";
  if (std::abs(phase - cplx(0.0, 1.0)) < 1e-9) return "+i";
  if (std::abs(phase - cplx(0.0, -1.0)) < 1e-9) return "-i";
  throw std::invalid_argument("phase is not one of the four serializable "
                              "values");
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError("config field \"" + where + "\": " + what);
}

double get_number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

std::string get_string(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

const json& get_field(const json& j, const std::string& key,
                      const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    fail(where, "missing required field \"" + key + "\"");
  }
  return j.at(key);
}

void check_pauli_letters(const std::string& s, int n,
                         const std::string& where) {
  if (static_cast<int>(s.size()) != n) {
    fail(where, "Pauli string \"" + s + "\" has length " +
                    std::to_string(s.size()) + ", expected " +
                    std::to_string(n));
  }
  for (char c : s) {
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
      fail(where, std::string("invalid Pauli letter '") + c +
                      "' in \"" + s + "\" (expected I, X, Y or Z)");
    }
  }
}

std::vector<ConfigPauliTerm> parse_terms(const json& j, int n,
                                         const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of terms");
  std::vector<ConfigPauliTerm> out;
  int idx = 0;
  for (const auto& item : j) {
    const std::string at = where + "[" + std::to_string(idx++) + "]";
    ConfigPauliTerm term;
    term.coeff = get_number(get_field(item, "coeff", at), at + ".coeff");
    term.pauli = get_string(get_field(item, "pauli", at), at + ".pauli");
    check_pauli_letters(term.pauli, n, at + ".pauli");
    if (item.contains("phase")) {
      term.phase = get_string(item.at("phase"), at + ".phase");
      parse_phase(term.phase);  // validates
    }
    if (term.coeff <= 0.0) {
      fail(at + ".coeff",
           "coefficients must be positive (fold signs into the phase)");
    }
    out.push_back(std::move(term));
  }
  return out;
}

std::vector<std::pair<double, std::string>> parse_weighted_basis(
    const json& j, int n, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a nonempty array");
  std::vector<std::pair<double, std::string>> out;
  int idx = 0;
  for (const auto& item : j) {
    const std::string at = where + "[" + std::to_string(idx++) + "]";
    const double w = get_number(get_field(item, "weight", at), at + ".weight");
    const std::string basis =
        get_string(get_field(item, "basis", at), at + ".basis");
    if (static_cast<int>(basis.size()) != n) {
      fail(at + ".basis", "label length must equal n_qubits");
    }
    for (char c : basis) {
      if (c != '0' && c != '1') {
        fail(at + ".basis", "label must contain only 0/1");
      }
    }
    out.emplace_back(w, basis);
  }
  return out;
}

DissipatorConfig parse_dissipator(const json& j, int n) {
  const std::string where = "dissipator";
  const std::string kind = get_string(get_field(j, "kind", where),
                                      where + ".kind");
  if (kind == "depolarizing") {
    return DepolarizingConfig{
        get_number(get_field(j, "gamma", where), where + ".gamma")};
  }
  if (kind == "dephasing") {
    return DephasingConfig{
        get_number(get_field(j, "Gamma", where), where + ".Gamma")};
  }
  if (kind == "pauli") {
    PauliTwirlConfig cfg;
    const json& probs = get_field(j, "probs", where);
    if (!probs.is_array()) fail(where + ".probs", "expected an array");
    int idx = 0;
    for (const auto& item : probs) {
      const std::string at = where + ".probs[" + std::to_string(idx++) + "]";
      const double p = get_number(get_field(item, "p", at), at + ".p");
      const std::string s = get_string(get_field(item, "pauli", at),
                                       at + ".pauli");
      check_pauli_letters(s, n, at + ".pauli");
      cfg.probs.emplace_back(p, s);
    }
    return cfg;
  }
  if (kind == "reset") {
    ResetConfig cfg;
    cfg.q = get_number(get_field(j, "q", where), where + ".q");
    cfg.ensemble = parse_weighted_basis(get_field(j, "ensemble", where), n,
                                        where + ".ensemble");
    return cfg;
  }
  if (kind == "custom") {
    CustomConfig cfg;
    const json& jumps = get_field(j, "jumps", where);
    if (!jumps.is_array()) fail(where + ".jumps", "expected an array");
    int idx = 0;
    for (const auto& item : jumps) {
      const std::string at = where + ".jumps[" + std::to_string(idx++) + "]";
      CustomJumpConfig jc;
      const json& alpha = get_field(item, "alpha", at);
      if (!alpha.is_array() || alpha.size() != 2) {
        fail(at + ".alpha", "expected [re, im]");
      }
      jc.alpha = cplx(get_number(alpha[0], at + ".alpha[0]"),
                      get_number(alpha[1], at + ".alpha[1]"));
      jc.pauli = get_string(get_field(item, "pauli", at), at + ".pauli");
      check_pauli_letters(jc.pauli, n, at + ".pauli");
      if (item.contains("phase")) {
        jc.phase = get_string(item.at("phase"), at + ".phase");
        parse_phase(jc.phase);
      }
      cfg.jumps.push_back(std::move(jc));
    }
    return cfg;
  }
  if (kind == "timedep") {
    TimeDepConfig cfg;
    const json& jumps = get_field(j, "jumps", where);
    if (!jumps.is_array()) fail(where + ".jumps", "expected an array");
    int idx = 0;
    for (const auto& item : jumps) {
      const std::string at = where + ".jumps[" + std::to_string(idx++) + "]";
      TimeDepJumpConfig jc;
      jc.pauli = get_string(get_field(item, "pauli", at), at + ".pauli");
      check_pauli_letters(jc.pauli, n, at + ".pauli");
      const json& prof = get_field(item, "profile", at);
      const std::string at_p = at + ".profile";
      jc.profile_type = get_string(get_field(prof, "type", at_p),
                                   at_p + ".type");
      if (jc.profile_type == "constant") {
        jc.c = get_number(get_field(prof, "c", at_p), at_p + ".c");
      } else if (jc.profile_type == "sinusoid") {
        jc.base = get_number(get_field(prof, "base", at_p), at_p + ".base");
        jc.amp = get_number(get_field(prof, "amp", at_p), at_p + ".amp");
        jc.omega = get_number(get_field(prof, "omega", at_p), at_p + ".omega");
      } else if (jc.profile_type == "piecewise_linear") {
        const json& knots = get_field(prof, "knots", at_p);
        if (!knots.is_array()) fail(at_p + ".knots", "expected an array");
        for (const auto& knot : knots) {
          if (!knot.is_array() || knot.size() != 2) {
            fail(at_p + ".knots", "each knot must be [t, value]");
          }
          jc.knots.emplace_back(get_number(knot[0], at_p + ".knots"),
                                get_number(knot[1], at_p + ".knots"));
        }
      } else {
        fail(at_p + ".type", "unknown profile type \"" + jc.profile_type +
                                 "\"");
      }
      cfg.jumps.push_back(std::move(jc));
    }
    return cfg;
  }
  fail(where + ".kind", "unknown dissipator kind \"" + kind + "\"");
}

json terms_to_json(const std::vector<ConfigPauliTerm>& terms) {
  json out = json::array();
  for (const auto& t : terms) {
    out.push_back({{"coeff", t.coeff}, {"pauli", t.pauli}, {"phase", t.phase}});
  }
  return out;
}

}  // namespace

ModelConfig parse_model_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  ModelConfig cfg;
  const json& nq = get_field(j, "n_qubits", "(root)");
  if (!nq.is_number_integer() || nq.get<int>() < 1) {
    fail("n_qubits", "expected a positive integer");
  }
  cfg.n_qubits = nq.get<int>();

  if (j.contains("hamiltonian")) {
    cfg.hamiltonian = parse_terms(j.at("hamiltonian"), cfg.n_qubits,
                                  "hamiltonian");
  }
  cfg.dissipator = parse_dissipator(get_field(j, "dissipator", "(root)"),
                                    cfg.n_qubits);

  const json& init = get_field(j, "initial_state", "(root)");
  if (init.is_string()) {
    cfg.initial_state.basis = init.get<std::string>();
    for (char c : *cfg.initial_state.basis) {
      if (c != '0' && c != '1') {
        fail("initial_state", "basis label must contain only 0/1");
      }
    }
    if (static_cast<int>(cfg.initial_state.basis->size()) != cfg.n_qubits) {
      fail("initial_state", "basis label length must equal n_qubits");
    }
  } else if (init.is_object() && init.contains("ensemble")) {
    cfg.initial_state.ensemble = parse_weighted_basis(
        init.at("ensemble"), cfg.n_qubits, "initial_state.ensemble");
  } else {
    fail("initial_state", "expected a basis label or {\"ensemble\": [...]}");
  }

  if (j.contains("observable")) {
    cfg.observable = parse_terms(j.at("observable"), cfg.n_qubits,
                                 "observable");
  }
  return cfg;
}

ModelConfig load_model_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_model_config(ss.str());
}

std::string serialize_model_config(const ModelConfig& config) {
  json j;
  j["n_qubits"] = config.n_qubits;
  j["hamiltonian"] = terms_to_json(config.hamiltonian);

  json d;
  if (const auto* dep = std::get_if<DepolarizingConfig>(&config.dissipator)) {
    d = {{"kind", "depolarizing"}, {"gamma", dep->gamma}};
  } else if (const auto* deph =
                 std::get_if<DephasingConfig>(&config.dissipator)) {
    d = {{"kind", "dephasing"}, {"Gamma", deph->Gamma}};
  } else if (const auto* tw =
                 std::get_if<PauliTwirlConfig>(&config.dissipator)) {
    json probs = json::array();
    for (const auto& [p, s] : tw->probs) {
      probs.push_back({{"p", p}, {"pauli", s}});
    }
    d = {{"kind", "pauli"}, {"probs", probs}};
  } else if (const auto* rs = std::get_if<ResetConfig>(&config.dissipator)) {
    json ens = json::array();
    for (const auto& [w, b] : rs->ensemble) {
      ens.push_back({{"weight", w}, {"basis", b}});
    }
    d = {{"kind", "reset"}, {"q", rs->q}, {"ensemble", ens}};
  } else if (const auto* cu = std::get_if<CustomConfig>(&config.dissipator)) {
    json jumps = json::array();
    for (const auto& jc : cu->jumps) {
      jumps.push_back({{"alpha", {std::real(jc.alpha), std::imag(jc.alpha)}},
                       {"pauli", jc.pauli},
                       {"phase", jc.phase}});
    }
    d = {{"kind", "custom"}, {"jumps", jumps}};
  } else if (const auto* td = std::get_if<TimeDepConfig>(&config.dissipator)) {
    json jumps = json::array();
    for (const auto& jc : td->jumps) {
      json prof;
      if (jc.profile_type == "constant") {
        prof = {{"type", "constant"}, {"c", jc.c}};
      } else if (jc.profile_type == "sinusoid") {
        prof = {{"type", "sinusoid"},
                {"base", jc.base},
                {"amp", jc.amp},
                {"omega", jc.omega}};
      } else {
        json knots = json::array();
        for (const auto& [t, v] : jc.knots) knots.push_back({t, v});
        prof = {{"type", "piecewise_linear"}, {"knots", knots}};
      }
      jumps.push_back({{"profile", prof}, {"pauli", jc.pauli}});
    }
    d = {{"kind", "timedep"}, {"jumps", jumps}};
  }
  j["dissipator"] = d;

  if (config.initial_state.basis) {
    j["initial_state"] = *config.initial_state.basis;
  } else {
    json ens = json::array();
    for (const auto& [w, b] : config.initial_state.ensemble) {
      ens.push_back({{"weight", w}, {"basis", b}});
    }
    j["initial_state"] = {{"ensemble", ens}};
  }
  j["observable"] = terms_to_json(config.observable);
  return j.dump(2) + "\n";
}

namespace {

PrepareOp ensemble_from_config(
    int n, const std::vector<std::pair<double, std::string>>& ensemble) {
  std::vector<WeightedPureState> states;
  states.reserve(ensemble.size());
  for (const auto& [w, basis] : ensemble) {
    states.push_back({w, StateVector::basis_state(n, basis)});
  }
  return PrepareOp(std::move(states));
}

std::vector<PauliTerm> realize_terms(const std::vector<ConfigPauliTerm>& terms) {
  std::vector<PauliTerm> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    out.push_back({t.coeff, PauliString::parse(t.pauli, parse_phase(t.phase))});
  }
  return out;
}

}  // namespace

BuiltModel build_model(const ModelConfig& config) {
  const int n = config.n_qubits;
  HamiltonianSpec h(n, realize_terms(config.hamiltonian));

  PrepareOp initial = config.initial_state.basis
                          ? PrepareOp::pure(StateVector::basis_state(
                                n, *config.initial_state.basis))
                          : ensemble_from_config(n,
                                                 config.initial_state.ensemble);

  PauliObservable observable(n, realize_terms(config.observable));

  BuiltModel out{n,
                 h,
                 std::nullopt,
                 std::nullopt,
                 std::nullopt,
                 std::nullopt,
                 std::move(initial),
                 std::move(observable)};

  if (const auto* dep = std::get_if<DepolarizingConfig>(&config.dissipator)) {
    if (dep->gamma < 0.0) {
      throw std::invalid_argument("depolarizing rate must be nonnegative");
    }
    out.lindblad = LindbladSpec(h, depolarizing_jumps(n, dep->gamma));
  } else if (const auto* deph =
                 std::get_if<DephasingConfig>(&config.dissipator)) {
    if (deph->Gamma < 0.0) {
      throw std::invalid_argument("dephasing rate must be nonnegative");
    }
    out.lindblad = LindbladSpec(h, dephasing_jumps(n, deph->Gamma));
  } else if (const auto* tw =
                 std::get_if<PauliTwirlConfig>(&config.dissipator)) {
    std::vector<std::pair<double, PauliString>> rates;
    for (const auto& [p, s] : tw->probs) {
      rates.emplace_back(p, PauliString::parse(s));
    }
    out.lindblad = LindbladSpec(h, pauli_twirl_jumps(n, rates));
  } else if (const auto* rs = std::get_if<ResetConfig>(&config.dissipator)) {
    if (rs->q < 0.0) {
      throw std::invalid_argument("reset rate must be nonnegative");
    }
    out.reset_rate = rs->q;
    out.reset_ensemble = ensemble_from_config(n, rs->ensemble);
  } else if (const auto* cu = std::get_if<CustomConfig>(&config.dissipator)) {
    std::vector<JumpSpec> jumps;
    for (const auto& jc : cu->jumps) {
      jumps.push_back(JumpSpec::from_unitary(
          jc.alpha, PauliString::parse(jc.pauli, parse_phase(jc.phase))));
    }
    out.lindblad = LindbladSpec(h, std::move(jumps));
  } else if (const auto* td = std::get_if<TimeDepConfig>(&config.dissipator)) {
    std::vector<TimeDepJump> jumps;
    for (const auto& jc : td->jumps) {
      Profile prof = Profile::constant(0.0);
      if (jc.profile_type == "constant") {
        prof = Profile::constant(jc.c);
      } else if (jc.profile_type == "sinusoid") {
        prof = Profile::sinusoid(jc.base, jc.amp, jc.omega);
      } else {
        prof = Profile::piecewise_linear(jc.knots);
      }
      jumps.push_back({std::move(prof), PauliString::parse(jc.pauli)});
    }
    out.timedep = TimeDepDissipator(n, std::move(jumps));
  }
  return out;
}

}  // namespace lindsim
