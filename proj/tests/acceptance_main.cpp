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

// End-to-end acceptance suite: one pass/fail line per criterion, nonzero exit
// if anything fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "lindsim/dilation.hpp"
#include "lindsim/engine.hpp"
#include "lindsim/linalg.hpp"
#include "lindsim/model.hpp"
#include "lindsim/rng.hpp"
#include "lindsim/stoch_channel.hpp"
#include "lindsim/timedep.hpp"
#include "lindsim/verify.hpp"

using namespace lindsim;

namespace {

struct Criterion {
  int number;
  std::string name;
  double limit_seconds;
  std::function<bool(std::string&)> run;
};

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch())
      .count();
}

DensityMatrix random_density(int n, RngStream& rng) {
  const std::size_t d = std::size_t(1) << n;
  ComplexMatrix m(d, d);
  for (int c = 0; c < 3; ++c) {
    std::vector<cplx> amp(d);
    double norm2 = 0.0;
    for (auto& a : amp) {
      const double u1 = 1.0 - rng.uniform();
      const double u2 = rng.uniform();
      const double r = std::sqrt(-2.0 * std::log(u1));
      a = cplx(r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2));
      norm2 += std::norm(a);
    }
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        m(i, j) += (1.0 / 3.0) * amp[i] * std::conj(amp[j]) / norm2;
      }
    }
  }
  return DensityMatrix(n, std::move(m));
}

bool report_suite(const VerifyReport& report, std::string& detail) {
  int fails = 0;
  for (const auto& row : report.rows) {
    if (!row.pass) ++fails;
  }
  std::ostringstream ss;
  ss << report.rows.size() << " rows, " << fails << " failing";
  for (const auto& row : report.rows) {
    if (row.instance == "slope") {
      ss << ", slope=" << row.measured;
    }
  }
  detail = ss.str();
  return fails == 0;
}

// ---- criterion bodies ----

bool criterion_depolarizing_closed_form(std::string& detail) {
  const double gamma = 0.3;
  const double T = 1.0;
  const LindbladSpec spec(HamiltonianSpec::zero(2),
                          depolarizing_jumps(2, gamma));
  const SimulationPlan plan = SimulationPlan::from_spec(
      spec, T, 1e-6, 0.01, HamKind::ExactExp, RunMode::DensityMatrixMode);

  RngStream rng(2026);
  const DensityMatrix rho0 = random_density(2, rng);
  const DensityMatrix sim = run_density_matrix(plan, rho0);

  const double decay = std::exp(-gamma * T);
  ComplexMatrix expected = rho0.matrix();
  expected *= cplx(decay, 0.0);
  ComplexMatrix mixed = ComplexMatrix::identity(4);
  mixed *= cplx((1.0 - decay) / 4.0, 0.0);
  expected += mixed;
  const double err = trace_distance(sim, DensityMatrix(2, expected));

  std::ostringstream ss;
  ss << "trace distance " << err << " (tol 1e-6, r=" << plan.r
     << ", K=" << plan.taylor_K << ")";
  detail = ss.str();
  return err <= 1e-6;
}

bool criterion_second_order(std::string& detail) {
  return report_suite(verify_converge(), detail);
}

bool criterion_eq7_bound(std::string& detail) {
  return report_suite(verify_bounds(0, 20), detail);
}

bool criterion_theorem3(std::string& detail) {
  return report_suite(verify_thm3(), detail);
}

bool criterion_mode_equivalence(std::string& detail) {
  return report_suite(verify_modes(0), detail);
}

bool criterion_taylor_bound(std::string& detail) {
  return report_suite(verify_taylor(), detail);
}

bool criterion_pauli_norm_values(std::string& detail) {
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const double gamma = 0.7;
    const HamiltonianSpec h(n, {{0.4, PauliString::single(n, 0, Pauli::X)}});
    const LindbladSpec spec(h, depolarizing_jumps(n, gamma));
    const double expected = 0.4 + (1.0 - std::pow(4.0, -n)) * gamma;
    worst = std::max(worst, std::abs(pauli_norm(spec) - expected));

    const double Gamma = 1.3;
    const double deph = pauli_norm_dissipator(dephasing_jumps(n, Gamma));
    worst = std::max(worst, std::abs(deph - n * Gamma / 2.0));
  }
  std::ostringstream ss;
  ss << "max deviation " << worst << " (tol 1e-12)";
  detail = ss.str();
  return worst <= 1e-12;
}

bool criterion_dilation(std::string& detail) {
  RngStream rng(77);
  double worst = 0.0;
  for (double p : {0.0, 0.3, 1.0}) {
    const LocalChannel damp(amplitude_damping_kraus(p));
    for (int q = 0; q < 3; ++q) {
      const DensityMatrix rho = random_density(3, rng);
      std::vector<std::optional<LocalChannel>> slots(3, std::nullopt);
      slots[q] = damp;
      const DensityMatrix a =
          apply_local_noise(rho, slots, LocalNoiseMode::Kraus);
      const DensityMatrix b =
          apply_local_noise(rho, slots, LocalNoiseMode::Dilation);
      worst = std::max(worst, trace_distance(a, b));
    }
  }
  std::ostringstream ss;
  ss << "max trace distance " << worst << " (tol 1e-10)";
  detail = ss.str();
  return worst <= 1e-10;
}

bool criterion_correlated_sampling(std::string& detail) {
  const StochasticChannel mixture = StochasticChannel::mixture(
      {{0.5, PrimitiveOperation(UnitaryOp(PauliString::identity(1)))},
       {0.3, PrimitiveOperation(UnitaryOp(PauliString::parse("X")))},
       {0.2, PrimitiveOperation(UnitaryOp(PauliString::parse("Z")))}});
  const PauliObservable obs(1, {{1.0, PauliString::parse("Z")}});
  const SimulationPlan plan = SimulationPlan::with_step_channel(
      HamiltonianSpec::zero(1), mixture, 2, 1.0, HamKind::ExactExp, 0.0,
      RunMode::TrajectoriesMode, TrajectoryConfig{10000, obs, 4242});
  const PrepareOp initial = PrepareOp::pure(StateVector::basis_state(1, 0));

  const TrajectoryResult corr =
      correlated_run(plan, initial, CorrelationPolicy::fully_correlated());
  const TrajectoryResult indep =
      correlated_run(plan, initial, CorrelationPolicy::independent());

  // Joint two-step mixture sum_i p_i U_i^2 rho U_i^dag^2, evaluated directly.
  const DensityMatrix rho0 = DensityMatrix::basis_state(1, 0);
  ComplexMatrix joint(2, 2);
  const std::vector<double>& probs = mixture.probabilities();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const ComplexMatrix u = mixture.operations()[i].unitary().to_matrix();
    const ComplexMatrix uu = u * u;
    ComplexMatrix term = uu * rho0.matrix() * uu.adjoint();
    term *= cplx(probs[i], 0.0);
    joint += term;
  }
  const double oracle =
      DensityMatrix(1, std::move(joint)).expectation(obs.to_matrix());

  const bool matches_oracle =
      std::abs(corr.estimate - oracle) <= 4.0 * corr.std_error + 1e-12;
  const double sigma = std::sqrt(corr.std_error * corr.std_error +
                                 indep.std_error * indep.std_error) +
                       1e-300;
  const double separation = std::abs(corr.estimate - indep.estimate) / sigma;
  const bool discriminates = separation > 5.0;

  std::ostringstream ss;
  ss << "correlated=" << corr.estimate << " vs oracle=" << oracle
     << ", independent=" << indep.estimate << " (" << separation
     << " sigma apart)";
  detail = ss.str();
  return matches_oracle && discriminates;
}

#ifdef LINDSIM_CLI_PATH
std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool criterion_determinism(std::string& detail) {
  const std::string cli = LINDSIM_CLI_PATH;
  const std::string config =
      std::string(LINDSIM_CONFIG_DIR) + "/mode_check.json";
  const std::string base = cli + " simulate --config " + config +
                           " --time 1 --epsilon 1e-3 --mode traj "
                           "--ntraj 2000 --seed 7 --json --out ";
  struct Variant {
    const char* threads;
    const char* path;
  };
  const std::vector<Variant> variants = {
      {"1", "/tmp/lindsim_det_t1.json"},
      {"4", "/tmp/lindsim_det_t4.json"},
      {"4", "/tmp/lindsim_det_t4_repeat.json"},
  };
  for (const auto& v : variants) {
    const std::string cmd =
        std::string("OMP_NUM_THREADS=") + v.threads + " " + base + v.path;
    if (std::system(cmd.c_str()) != 0) {
      detail = "CLI invocation failed";
      return false;
    }
  }
  const std::string a = read_file(variants[0].path);
  const std::string b = read_file(variants[1].path);
  const std::string c = read_file(variants[2].path);
  if (a.empty()) {
    detail = "no output produced";
    return false;
  }
  detail = "outputs " + std::to_string(a.size()) + " bytes, " +
           ((a == b && b == c) ? "identical across 1/4 threads and reruns"
                               : "MISMATCH");
  return a == b && b == c;
}
#endif

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "depolarizing closed form", 1.0, criterion_depolarizing_closed_form},
      {2, "second-order convergence", 10.0, criterion_second_order},
      {3, "end-to-end error bound", 60.0, criterion_eq7_bound},
      {4, "time-dependent splitting bound", 30.0, criterion_theorem3},
      {5, "mode equivalence", 10.0, criterion_mode_equivalence},
      {6, "truncated-series tail bound", 10.0, criterion_taylor_bound},
      {7, "cost-norm closed forms", 1.0, criterion_pauli_norm_values},
      {8, "dilation equivalence", 5.0, criterion_dilation},
      {9, "correlated sampling", 10.0, criterion_correlated_sampling},
#ifdef LINDSIM_CLI_PATH
      {10, "seeded determinism across threads", 60.0, criterion_determinism},
#endif
  };

  int failures = 0;
  for (auto& c : criteria) {
    const double start = now_seconds();
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
      ok = false;
    }
    const double elapsed = now_seconds() - start;
    const bool in_time = elapsed <= c.limit_seconds;
    if (!in_time) {
      detail += " [exceeded " + std::to_string(c.limit_seconds) + " s budget]";
    }
    const bool pass = ok && in_time;
    if (!pass) ++failures;
    std::printf("[%s] %2d %-36s %s (%.2f s)\n", pass ? "PASS" : "FAIL",
                c.number, c.name.c_str(), detail.c_str(), elapsed);
  }
  if (failures == 0) {
    std::printf("acceptance: all %zu criteria passed\n", criteria.size());
  } else {
    std::printf("acceptance: %d criteria FAILED\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
