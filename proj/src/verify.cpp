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

#include "lindsim/verify.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "lindsim/engine.hpp"
#include "lindsim/linalg.hpp"
#include "lindsim/model.hpp"
#include "lindsim/rng.hpp"
#include "lindsim/stoch_channel.hpp"
#include "lindsim/timedep.hpp"

namespace lindsim {

namespace {

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

double safe_ratio(double measured, double bound) {
  if (measured == 0.0) return 0.0;
  if (bound == 0.0) return std::numeric_limits<double>::infinity();
  return measured / bound;
}

VerifyRow make_row(std::string instance, double measured, double bound,
                   bool pass) {
  return VerifyRow{std::move(instance), measured, bound,
                   safe_ratio(measured, bound), pass};
}

double fit_loglog_slope(const std::vector<double>& xs,
                        const std::vector<double>& ys) {
  const std::size_t m = xs.size();
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += std::log(xs[i]);
    my += std::log(ys[i]);
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double dx = std::log(xs[i]) - mx;
    num += dx * (std::log(ys[i]) - my);
    den += dx * dx;
  }
  return num / den;
}

StateVector plus_state() {
  const double s = 1.0 / std::sqrt(2.0);
  return StateVector(1, {cplx(s, 0.0), cplx(s, 0.0)});
}

}  // namespace

bool VerifyReport::all_pass() const {
  for (const auto& row : rows) {
    if (!row.pass) return false;
  }
  return true;
}

void write_csv(const VerifyReport& report, std::ostream& out) {
  out << "instance,measured,bound,ratio,pass\n";
  for (const auto& row : report.rows) {
    out << row.instance << ',' << fmt17(row.measured) << ','
        << fmt17(row.bound) << ',' << fmt17(row.ratio) << ','
        << (row.pass ? "true" : "false") << '\n';
  }
}

VerifyReport verify_converge() {
  VerifyReport report;
  report.suite = "converge";

  const HamiltonianSpec h(
      1, {{0.7, PauliString::parse("X")}, {0.2, PauliString::parse("Z")}});
  const auto jumps = dephasing_jumps(1, 1.0);
  const LindbladSpec spec(h, jumps);
  const auto unitary_jumps = *spec.unitary_jumps();
  const double T = 1.0;
  constexpr int kTaylorOrder = 20;

  const DensityMatrix rho0 = DensityMatrix::from_statevector(plus_state());
  const DensityMatrix exact = exact_propagate(spec, rho0, T);

  std::vector<double> dts;
  std::vector<double> errs;
  for (long r = 4; r <= 256; r *= 2) {
    const double dt = T / static_cast<double>(r);
    const auto taylor =
        dissipator_to_stochastic(1, unitary_jumps, dt, kTaylorOrder);
    const HamiltonianSubroutine hamsub =
        HamiltonianSubroutine::exact_exp(h, dt);
    const auto& channel = taylor.channel;
    const DensityMatrix sim = detail::run_density_loop(
        hamsub, r,
        [&channel](long) -> const StochasticChannel& { return channel; },
        rho0);
    const double err = trace_distance(sim, exact);
    dts.push_back(dt);
    errs.push_back(err);
  }

  // Reference curve C * dt^2 anchored at the finest step.
  const double c_fit = errs.back() / (dts.back() * dts.back());
  for (std::size_t i = 0; i < dts.size(); ++i) {
    report.rows.push_back(make_row("r" + std::to_string(long(T / dts[i])),
                                   errs[i], c_fit * dts[i] * dts[i], true));
  }
  const double slope = fit_loglog_slope(dts, errs);
  report.rows.push_back(
      make_row("slope", slope, 2.0, std::abs(slope - 2.0) <= 0.2));
  return report;
}

VerifyReport verify_bounds(std::uint64_t seed, int n_instances) {
  VerifyReport report;
  report.suite = "bounds";
  RngStream rng(seed ^ 0xB0D5ULL);

  auto random_string = [&rng](int n) {
    for (;;) {
      std::vector<Pauli> letters(n);
      bool identity = true;
      for (auto& l : letters) {
        l = static_cast<Pauli>(rng.next_u64() & 3u);
        if (l != Pauli::I) identity = false;
      }
      if (!identity) return PauliString(std::move(letters));
    }
  };

  const double T = 1.0;
  const double epsilon = 0.05;
  const double c0 = 0.1;
  for (int inst = 0; inst < n_instances; ++inst) {
    std::vector<PauliTerm> terms;
    for (int k = 0; k < 3; ++k) {
      terms.push_back({0.1 + 0.5 * rng.uniform(), random_string(2)});
    }
    const HamiltonianSpec h(2, std::move(terms));
    std::vector<JumpSpec> jumps;
    for (int mu = 0; mu < 2; ++mu) {
      const double mag = 0.2 + 0.4 * rng.uniform();
      const double arg = 2.0 * M_PI * rng.uniform();
      const cplx alpha(mag * std::cos(arg), mag * std::sin(arg));
      jumps.push_back(JumpSpec::from_unitary(alpha, random_string(2)));
    }
    const LindbladSpec spec(h, std::move(jumps));

    const SimulationPlan plan = SimulationPlan::from_spec(
        spec, T, epsilon, c0, HamKind::ExactExp, RunMode::DensityMatrixMode);
    const Superoperator gadget = gadget_superoperator(plan);
    const Superoperator approx = gadget.pow(plan.r);
    const Superoperator exact(
        2, matrix_exp(build_liouvillian(spec).matrix(), cplx(T, 0.0)));
    const double measured = diamond_bounds(exact - approx).lower;
    const double eps_h = plan.hamsub.certified_eps();
    const double bound =
        (8.0 / 3.0) * static_cast<double>(plan.r) * (1.0 + 6.0 * c0) *
            std::pow(plan.pnorm * plan.dt, 3.0) +
        2.0 * static_cast<double>(plan.r) * eps_h;
    report.rows.push_back(make_row("spec" + std::to_string(inst), measured,
                                   bound, measured <= bound));
  }
  return report;
}

VerifyReport verify_thm3() {
  VerifyReport report;
  report.suite = "thm3";

  const HamiltonianSpec h(1, {{1.0, PauliString::parse("X")}});
  // Dephasing Gamma(t) = 1 + 0.5 sin(3t), i.e. rate g = Gamma/2.
  const TimeDepDissipator d(
      1, {{Profile::sinusoid(0.5, 0.25, 3.0), PauliString::parse("Z")}});
  const double s = 0.3;

  std::vector<double> dts;
  std::vector<double> errs;
  constexpr int kGridPoints = 20;
  for (int i = 0; i < kGridPoints; ++i) {
    const double dt =
        1e-3 * std::pow(100.0, static_cast<double>(i) / (kGridPoints - 1));
    const long ode_steps = 200;
    const Superoperator full =
        ode_propagate_superop(1, &h, &d, s, s + dt, ode_steps);
    const Superoperator disp =
        ode_propagate_superop(1, nullptr, &d, s, s + dt, ode_steps);
    const Superoperator half(
        1, matrix_exp(hamiltonian_liouvillian(h).matrix(),
                      cplx(0.5 * dt, 0.0)));
    const Superoperator split = half * disp * half;
    const double measured = diamond_bounds(full - split).lower;
    const double bound = theorem3_bound(h, d, s, s + dt, 200);
    dts.push_back(dt);
    errs.push_back(measured);
    std::ostringstream name;
    name << "dt" << dt;
    report.rows.push_back(make_row(name.str(), measured, bound,
                                   measured <= bound));
  }
  const double slope = fit_loglog_slope(dts, errs);
  report.rows.push_back(
      make_row("slope", slope, 3.0, std::abs(slope - 3.0) <= 0.3));

  // Commuting instance: Z field with constant dephasing.
  const HamiltonianSpec hz(1, {{1.0, PauliString::parse("Z")}});
  const TimeDepDissipator dz(
      1, {{Profile::constant(0.5), PauliString::parse("Z")}});
  for (double dt : {0.02, 0.1}) {
    const Superoperator full =
        ode_propagate_superop(1, &hz, &dz, 0.0, dt, 200);
    const Superoperator disp =
        ode_propagate_superop(1, nullptr, &dz, 0.0, dt, 200);
    const Superoperator half(
        1, matrix_exp(hamiltonian_liouvillian(hz).matrix(),
                      cplx(0.5 * dt, 0.0)));
    const double measured =
        diamond_bounds(full - half * disp * half).lower;
    const double bound = theorem3_bound(hz, dz, 0.0, dt, 100);
    std::ostringstream name;
    name << "commuting_dt" << dt;
    report.rows.push_back(
        make_row(name.str(), measured, bound, measured <= 1e-9));
  }
  return report;
}

VerifyReport verify_taylor() {
  VerifyReport report;
  report.suite = "taylor";

  for (double x : {0.05, 0.2, 0.5}) {
    // One-qubit dephasing with a = x and dt = 1.
    const std::vector<UnitaryJumpForm> jumps{
        {cplx(std::sqrt(x), 0.0), UnitaryOp(PauliString::parse("Z"))}};
    const double dt = 1.0;
    const Superoperator exact(
        1, matrix_exp(dissipator_liouvillian(
                          1, {JumpSpec::from_unitary(std::sqrt(x),
                                                     PauliString::parse("Z"))})
                          .matrix(),
                      cplx(dt, 0.0)));
    for (int K : {2, 4, 8}) {
      const Superoperator tail = taylor_tail_superop(1, jumps, dt, K);
      const Superoperator trunc = truncated_taylor_superop(1, jumps, dt, K);

      // Closure: truncated + tail reproduces the exact exponential.
      const double closure =
          (exact.matrix() - (trunc.matrix() + tail.matrix())).max_abs();
      std::ostringstream cname;
      cname << "closure_x" << x << "_K" << K;
      report.rows.push_back(
          make_row(cname.str(), closure, 1e-12, closure <= 1e-12));

      double factorial = 1.0;
      for (int k = 2; k <= K + 1; ++k) factorial *= k;
      const double bound = 2.0 * std::pow(x, K + 1) / factorial;
      const double measured = diamond_bounds(tail).upper;
      std::ostringstream name;
      name << "x" << x << "_K" << K;
      report.rows.push_back(
          make_row(name.str(), measured, bound, measured <= bound));
    }
  }
  return report;
}

VerifyReport verify_modes(std::uint64_t seed) {
  VerifyReport report;
  report.suite = "modes";

  const HamiltonianSpec h(1, {{0.4, PauliString::parse("X")}});
  const LindbladSpec spec(h, depolarizing_jumps(1, 0.5));
  const double T = 1.0;
  const double epsilon = 1e-3;
  const double c0 = 0.1;
  const PauliObservable obs(1, {{1.0, PauliString::parse("Z")}});

  const SimulationPlan dm_plan = SimulationPlan::from_spec(
      spec, T, epsilon, c0, HamKind::ExactExp, RunMode::DensityMatrixMode);
  const DensityMatrix rho0 = DensityMatrix::basis_state(1, 0);
  const DensityMatrix dm = run_density_matrix(dm_plan, rho0);
  const double dm_value = dm.expectation(obs.to_matrix());

  const SimulationPlan traj_plan = SimulationPlan::from_spec(
      spec, T, epsilon, c0, HamKind::ExactExp, RunMode::TrajectoriesMode,
      TrajectoryConfig{10000, obs, seed});
  const TrajectoryResult res =
      run_trajectories(traj_plan, PrepareOp::pure(StateVector::basis_state(1, 0)));

  const double measured = std::abs(res.estimate - dm_value);
  const double bound = 4.0 * res.std_error;
  report.rows.push_back(make_row("traj_vs_dm", measured, bound,
                                 measured <= bound));
  return report;
}

}  // namespace lindsim
