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

#include "lindsim/timedep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lindsim/errors.hpp"

namespace lindsim {

Profile Profile::constant(double value) {
  if (value < 0.0) {
    throw std::invalid_argument("Profile: constant rate must be nonnegative");
  }
  Profile p;
  p.kind_ = Kind::Constant;
  p.base_ = value;
  return p;
}

Profile Profile::sinusoid(double base, double amplitude, double omega) {
  if (base < std::abs(amplitude)) {
    throw std::invalid_argument(
        "Profile: sinusoid dips below zero (need base >= |amplitude|)");
  }
  Profile p;
  p.kind_ = Kind::Sinusoid;
  p.base_ = base;
  p.amplitude_ = amplitude;
  p.omega_ = omega;
  return p;
}

Profile Profile::piecewise_linear(
    std::vector<std::pair<double, double>> knots) {
  if (knots.size() < 2) {
    throw std::invalid_argument("Profile: need at least two knots");
  }
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    if (knots[i + 1].first <= knots[i].first) {
      throw std::invalid_argument("Profile: knots must be strictly increasing");
    }
  }
  for (const auto& [t, v] : knots) {
    if (v < 0.0) {
      throw std::invalid_argument("Profile: knot value must be nonnegative");
    }
  }
  Profile p;
  p.kind_ = Kind::PiecewiseLinear;
  p.knots_ = std::move(knots);
  return p;
}

double Profile::eval(double t) const {
  double v = 0.0;
  switch (kind_) {
    case Kind::Constant:
      v = base_;
      break;
    case Kind::Sinusoid:
      v = base_ + amplitude_ * std::sin(omega_ * t);
      break;
    case Kind::PiecewiseLinear: {
      if (t <= knots_.front().first) {
        v = knots_.front().second;
      } else if (t >= knots_.back().first) {
        v = knots_.back().second;
      } else {
        std::size_t hi = 1;
        while (knots_[hi].first < t) ++hi;
        const auto& [t0, v0] = knots_[hi - 1];
        const auto& [t1, v1] = knots_[hi];
        v = v0 + (v1 - v0) * (t - t0) / (t1 - t0);
      }
      break;
    }
  }
  if (v < 0.0) {
    // Only roundoff-scale negatives are tolerated.
    if (v < -1e-12) {
      throw std::invalid_argument("Profile: negative rate encountered");
    }
    v = 0.0;
  }
  return v;
}

TimeDepDissipator::TimeDepDissipator(int n_qubits,
                                     std::vector<TimeDepJump> jumps)
    : n_(n_qubits), jumps_(std::move(jumps)) {
  for (const auto& j : jumps_) {
    if (j.unitary.n_qubits() != n_) {
      throw std::invalid_argument("TimeDepDissipator: qubit count mismatch");
    }
  }
}

std::vector<UnitaryJumpForm> TimeDepDissipator::unitary_jumps_at(
    double t) const {
  std::vector<UnitaryJumpForm> out;
  out.reserve(jumps_.size());
  for (const auto& j : jumps_) {
    const double g = j.rate.eval(t);
    if (g <= 0.0) continue;
    out.push_back(UnitaryJumpForm{std::sqrt(g), UnitaryOp(j.unitary)});
  }
  return out;
}

std::vector<JumpSpec> TimeDepDissipator::jump_specs_at(double t) const {
  std::vector<JumpSpec> out;
  out.reserve(jumps_.size());
  for (const auto& j : jumps_) {
    const double g = j.rate.eval(t);
    if (g <= 0.0) continue;
    out.push_back(JumpSpec::from_unitary(std::sqrt(g), j.unitary));
  }
  return out;
}

double TimeDepDissipator::rate_sum(double t) const {
  double a = 0.0;
  for (const auto& j : jumps_) a += j.rate.eval(t);
  return a;
}

double TimeDepDissipator::sup_rate_sum(double t0, double t1,
                                       int grid_points) const {
  if (grid_points < 2 || t1 < t0) {
    throw std::invalid_argument("sup_rate_sum: bad grid");
  }
  double sup = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double t = t0 + (t1 - t0) * i / (grid_points - 1);
    sup = std::max(sup, rate_sum(t));
  }
  return sup;
}

double TimeDepDissipator::sup_choi_upper(double t0, double t1, int grid_points,
                                         int cap) const {
  if (grid_points < 2 || t1 < t0) {
    throw std::invalid_argument("sup_choi_upper: bad grid");
  }
  double sup = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double t = t0 + (t1 - t0) * i / (grid_points - 1);
    const auto specs = jump_specs_at(t);
    if (specs.empty()) continue;
    sup = std::max(
        sup, diamond_bounds(dissipator_liouvillian(n_, specs, cap)).upper);
  }
  return sup;
}

DensityMatrix ode_propagate(const TimeDepDissipator& d, const HamiltonianSpec& h,
                            const DensityMatrix& rho, double t0, double t1,
                            long n_steps, int cap) {
  if (t1 < t0) throw std::invalid_argument("ode_propagate: t1 < t0");
  if (n_steps < 1) throw std::invalid_argument("ode_propagate: n_steps < 1");
  if (rho.n_qubits() != d.n_qubits() || h.n_qubits() != d.n_qubits()) {
    throw std::invalid_argument("ode_propagate: qubit count mismatch");
  }
  if (t1 == t0) return rho;

  const Superoperator h_liou = hamiltonian_liouvillian(h, cap);
  auto liou_at = [&](double t) {
    Superoperator l = h_liou;
    const auto specs = d.jump_specs_at(t);
    if (!specs.empty()) {
      l += dissipator_liouvillian(d.n_qubits(), specs, cap);
    }
    return l;
  };

  const double hstep = (t1 - t0) / static_cast<double>(n_steps);
  std::vector<cplx> v = vec(rho.matrix());
  const std::size_t dim = v.size();
  auto axpy = [dim](std::vector<cplx>& y, double alpha,
                    const std::vector<cplx>& x) {
    for (std::size_t i = 0; i < dim; ++i) y[i] += alpha * x[i];
  };

  for (long s = 0; s < n_steps; ++s) {
    const double t = t0 + hstep * static_cast<double>(s);
    const Superoperator l1 = liou_at(t);
    const Superoperator l2 = liou_at(t + 0.5 * hstep);
    const Superoperator l4 = liou_at(t + hstep);

    const std::vector<cplx> k1 = l1.matrix().apply(v);
    std::vector<cplx> tmp = v;
    axpy(tmp, 0.5 * hstep, k1);
    const std::vector<cplx> k2 = l2.matrix().apply(tmp);
    tmp = v;
    axpy(tmp, 0.5 * hstep, k2);
    const std::vector<cplx> k3 = l2.matrix().apply(tmp);
    tmp = v;
    axpy(tmp, hstep, k3);
    const std::vector<cplx> k4 = l4.matrix().apply(tmp);

    axpy(v, hstep / 6.0, k1);
    axpy(v, hstep / 3.0, k2);
    axpy(v, hstep / 3.0, k3);
    axpy(v, hstep / 6.0, k4);
  }
  const std::size_t dmat = rho.dim();
  return DensityMatrix(rho.n_qubits(), unvec(v, dmat), 1e-8);
}

Superoperator ode_propagate_superop(int n_qubits, const HamiltonianSpec* h,
                                    const TimeDepDissipator* d, double t0,
                                    double t1, long n_steps, int cap) {
  if (t1 < t0) throw std::invalid_argument("ode_propagate_superop: t1 < t0");
  if (n_steps < 1) {
    throw std::invalid_argument("ode_propagate_superop: n_steps < 1");
  }
  Superoperator h_liou =
      (h != nullptr && !h->is_zero()) ? hamiltonian_liouvillian(*h, cap)
                                      : Superoperator::zero(n_qubits);
  auto liou_at = [&](double t) {
    Superoperator l = h_liou;
    if (d != nullptr) {
      const auto specs = d->jump_specs_at(t);
      if (!specs.empty()) {
        l += dissipator_liouvillian(n_qubits, specs, cap);
      }
    }
    return l;
  };

  Superoperator s_cur = Superoperator::identity(n_qubits);
  if (t1 == t0) return s_cur;
  const double hstep = (t1 - t0) / static_cast<double>(n_steps);
  for (long s = 0; s < n_steps; ++s) {
    const double t = t0 + hstep * static_cast<double>(s);
    const Superoperator l1 = liou_at(t);
    const Superoperator l2 = liou_at(t + 0.5 * hstep);
    const Superoperator l4 = liou_at(t + hstep);

    ComplexMatrix k1 = l1.matrix() * s_cur.matrix();
    ComplexMatrix tmp = s_cur.matrix();
    ComplexMatrix scaled = k1;
    scaled *= cplx(0.5 * hstep, 0.0);
    tmp += scaled;
    ComplexMatrix k2 = l2.matrix() * tmp;
    tmp = s_cur.matrix();
    scaled = k2;
    scaled *= cplx(0.5 * hstep, 0.0);
    tmp += scaled;
    ComplexMatrix k3 = l2.matrix() * tmp;
    tmp = s_cur.matrix();
    scaled = k3;
    scaled *= cplx(hstep, 0.0);
    tmp += scaled;
    ComplexMatrix k4 = l4.matrix() * tmp;

    k1 *= cplx(hstep / 6.0, 0.0);
    k2 *= cplx(hstep / 3.0, 0.0);
    k3 *= cplx(hstep / 3.0, 0.0);
    k4 *= cplx(hstep / 6.0, 0.0);
    s_cur.matrix() += k1;
    s_cur.matrix() += k2;
    s_cur.matrix() += k3;
    s_cur.matrix() += k4;
  }
  return s_cur;
}

double theorem3_bound(const HamiltonianSpec& h, const TimeDepDissipator& d,
                      double s, double t, int grid_points, int cap) {
  if (t < s) throw std::invalid_argument("theorem3_bound: t < s");
  if (grid_points < 2) {
    throw std::invalid_argument("theorem3_bound: need at least two samples");
  }
  const int n = d.n_qubits();
  const Superoperator h_liou = h.is_zero() ? Superoperator::zero(n)
                                           : hamiltonian_liouvillian(h, cap);
  const double norm_h = h.is_zero() ? 0.0 : diamond_bounds(h_liou).upper;

  double sup_d = 0.0;
  double sup_comm = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double tp = s + (t - s) * i / (grid_points - 1);
    const auto specs = d.jump_specs_at(tp);
    Superoperator d_liou = specs.empty()
                               ? Superoperator::zero(n)
                               : dissipator_liouvillian(n, specs, cap);
    if (!specs.empty()) {
      sup_d = std::max(sup_d, diamond_bounds(d_liou).upper);
    }
    Superoperator comm = h_liou * d_liou - d_liou * h_liou;
    sup_comm = std::max(sup_comm, diamond_bounds(comm).upper);
  }

  const double level = 0.5 * norm_h + sup_d;
  if (level * (t - s) > 1.0 + 1e-12) {
    throw std::invalid_argument(
        "theorem3_bound: validity condition (||H||/2 + sup||D||)(t-s) <= 1 "
        "violated");
  }
  const double gap = t - s;
  return (sup_comm / 3.0) * level * gap * gap * gap;
}

TimeDepPlan TimeDepPlan::make(const HamiltonianSpec& h,
                              const TimeDepDissipator& d, double T,
                              double epsilon, double c0, HamKind kind,
                              RunMode mode,
                              std::optional<TrajectoryConfig> traj) {
  if (h.n_qubits() != d.n_qubits()) {
    throw std::invalid_argument("TimeDepPlan: qubit count mismatch");
  }
  if (epsilon <= 0.0 || epsilon > 1.0) {
    throw std::invalid_argument("TimeDepPlan: epsilon must lie in (0, 1]");
  }
  if (c0 < 0.0) throw std::invalid_argument("TimeDepPlan: negative c0");
  if (T < 0.0) throw std::invalid_argument("TimeDepPlan: negative time");

  TimeDepPlan plan;
  plan.n_qubits = h.n_qubits();
  plan.hamiltonian = h;
  plan.T = T;
  plan.epsilon = epsilon;
  plan.c0 = c0;
  plan.ham_kind = kind;
  plan.mode = mode;
  plan.trajectory = std::move(traj);
  if (mode == RunMode::TrajectoriesMode) {
    if (!plan.trajectory) {
      throw std::invalid_argument("TimeDepPlan: trajectory config missing");
    }
    detail::require_hermitian_observable(plan.trajectory->observable);
  }

  if (T == 0.0) {
    plan.hamsub = HamiltonianSubroutine::exact_exp(h, 0.0);
    return plan;
  }

  // Theorem-2 budgeting with sup_t of the cost norm.
  const int grid = 1000;
  const double sup_a = d.sup_rate_sum(0.0, T, grid);
  plan.sup_pnorm = h.pauli_weight() + sup_a;
  const double base = std::sqrt((16.0 / 3.0) * (1.0 + 6.0 * c0) / epsilon) *
                      std::pow(plan.sup_pnorm * T, 1.5);
  long r = std::max<long>(1, static_cast<long>(std::ceil(base)));

  double norm_h;
  double norm_d;
  if (plan.n_qubits <= kSuperopQubitCap) {
    norm_h = h.is_zero() ? 0.0
                         : diamond_bounds(hamiltonian_liouvillian(h)).upper;
    norm_d = d.sup_choi_upper(0.0, T, grid);
  } else {
    norm_h = 2.0 * h.pauli_weight();
    norm_d = 2.0 * sup_a;
  }
  plan.sup_dissipator_norm = norm_d;
  const double validity = (0.5 * norm_h + norm_d) * T;
  if (validity > static_cast<double>(r)) {
    r = static_cast<long>(std::ceil(validity));
  }
  if (sup_a * T > static_cast<double>(r)) {
    r = static_cast<long>(std::ceil(sup_a * T));
  }
  plan.r = r;
  plan.dt = T / static_cast<double>(r);
  plan.eps_h_budget = epsilon / (4.0 * static_cast<double>(r));

  // Midpoint rates per step; smallest truncation satisfying the step
  // requirement err_bound <= c0 (2 ||D(t)||_pauli dt)^3 at every step.
  std::vector<double> step_a(static_cast<std::size_t>(r), 0.0);
  for (long i = 0; i < r; ++i) {
    step_a[static_cast<std::size_t>(i)] =
        d.rate_sum((static_cast<double>(i) + 0.5) * plan.dt);
  }
  if (c0 <= 0.0 && sup_a > 0.0) {
    throw std::invalid_argument(
        "TimeDepPlan: c0 = 0 demands a zero truncation error, which a "
        "nonempty dissipator cannot satisfy");
  }
  int K = 0;
  for (;; ++K) {
    if (K > 170) {
      throw std::invalid_argument(
          "TimeDepPlan: requested c0 is below what double-precision "
          "truncation can certify; increase c0");
    }
    bool ok = true;
    for (long i = 0; i < r && ok; ++i) {
      const double a = step_a[static_cast<std::size_t>(i)];
      if (a == 0.0) continue;
      const double target = c0 * std::pow(2.0 * a * plan.dt, 3.0);
      if (2.0 * poisson_tail_mass(a * plan.dt, K) > target) ok = false;
    }
    if (ok) break;
  }
  plan.taylor_K = K;

  plan.step_channels.reserve(static_cast<std::size_t>(r));
  for (long i = 0; i < r; ++i) {
    const double tm = (static_cast<double>(i) + 0.5) * plan.dt;
    plan.step_channels.push_back(
        dissipator_to_stochastic(plan.n_qubits, d.unitary_jumps_at(tm),
                                 plan.dt, K)
            .channel);
  }
  plan.hamsub = build_ham_subroutine(h, plan.dt, plan.eps_h_budget, kind);
  return plan;
}

DensityMatrix run_timedep_density(const TimeDepPlan& plan,
                                  const DensityMatrix& rho0, int cap) {
  if (plan.mode != RunMode::DensityMatrixMode) {
    throw std::invalid_argument("run_timedep_density: wrong mode");
  }
  if (plan.n_qubits > cap) {
    throw CapExceeded("run_timedep_density: cap exceeded");
  }
  if (rho0.n_qubits() != plan.n_qubits) {
    throw std::invalid_argument("run_timedep_density: state qubit mismatch");
  }
  const auto& channels = plan.step_channels;
  return detail::run_density_loop(
      plan.hamsub, plan.r,
      [&channels](long step) -> const StochasticChannel& {
        return channels[static_cast<std::size_t>(step)];
      },
      rho0);
}

TrajectoryResult run_timedep_trajectories(const TimeDepPlan& plan,
                                          const PrepareOp& initial) {
  if (plan.mode != RunMode::TrajectoriesMode || !plan.trajectory) {
    throw std::invalid_argument("run_timedep_trajectories: wrong mode");
  }
  if (initial.n_qubits() != plan.n_qubits) {
    throw std::invalid_argument(
        "run_timedep_trajectories: state qubit mismatch");
  }
  int max_len = 1;
  for (const auto& ch : plan.step_channels) {
    max_len = std::max(max_len, ch.max_composition_length());
  }
  const auto& channels = plan.step_channels;
  return detail::run_trajectory_loop(
      plan.hamsub, plan.r,
      [&channels](long step) -> const StochasticChannel& {
        return channels[static_cast<std::size_t>(step)];
      },
      initial, plan.trajectory->observable, plan.trajectory->n_traj,
      plan.trajectory->master_seed, max_len);
}

CorrelationPolicy CorrelationPolicy::independent() {
  CorrelationPolicy p;
  p.kind_ = Kind::Independent;
  return p;
}

CorrelationPolicy CorrelationPolicy::fully_correlated() {
  CorrelationPolicy p;
  p.kind_ = Kind::FullyCorrelated;
  return p;
}

CorrelationPolicy CorrelationPolicy::markov_chain(
    std::vector<std::vector<double>> transition) {
  CorrelationPolicy p;
  p.kind_ = Kind::MarkovChain;
  const std::size_t m = transition.size();
  if (m == 0) {
    throw std::invalid_argument("CorrelationPolicy: empty transition matrix");
  }
  p.row_cum_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (transition[i].size() != m) {
      throw std::invalid_argument(
          "CorrelationPolicy: transition matrix must be square");
    }
    double total = 0.0;
    p.row_cum_[i].resize(m);
    for (std::size_t j = 0; j < m; ++j) {
      if (transition[i][j] < 0.0) {
        throw std::invalid_argument(
            "CorrelationPolicy: negative transition probability");
      }
      total += transition[i][j];
      p.row_cum_[i][j] = total;
    }
    if (std::abs(total - 1.0) > 1e-12) {
      throw std::invalid_argument(
          "CorrelationPolicy: transition rows must sum to 1");
    }
  }
  p.transition_ = std::move(transition);
  return p;
}

TrajectoryResult correlated_run(const SimulationPlan& plan,
                                const PrepareOp& initial,
                                const CorrelationPolicy& policy) {
  if (plan.mode != RunMode::TrajectoriesMode || !plan.trajectory) {
    throw std::invalid_argument("correlated_run: plan is not in trajectories "
                                "mode");
  }
  if (policy.kind() == CorrelationPolicy::Kind::Independent) {
    return run_trajectories(plan, initial);
  }
  const auto& channel = plan.step_channel;
  if (policy.kind() == CorrelationPolicy::Kind::MarkovChain) {
    if (!channel.is_explicit()) {
      throw std::invalid_argument(
          "correlated_run: MarkovChain needs an explicit branch list");
    }
    if (policy.row_cum_.size() != channel.operations().size()) {
      throw std::invalid_argument(
          "correlated_run: transition matrix size does not match the branch "
          "count");
    }
  }
  detail::require_hermitian_observable(plan.trajectory->observable);

  const long n_traj = plan.trajectory->n_traj;
  if (n_traj < 1) {
    throw std::invalid_argument("correlated_run: need at least 1 trajectory");
  }
  const long r = plan.r;
  const auto& observable = plan.trajectory->observable;
  const std::uint64_t master_seed = plan.trajectory->master_seed;
  std::vector<double> results(static_cast<std::size_t>(n_traj), 0.0);
  const bool markov = policy.kind() == CorrelationPolicy::Kind::MarkovChain;
  std::vector<double> init_cum;
  if (markov) {
    double acc = 0.0;
    for (double p : channel.probabilities()) {
      acc += p;
      init_cum.push_back(acc);
    }
  }

#pragma omp parallel
  {
#pragma omp for schedule(static)
    for (long j = 0; j < n_traj; ++j) {
      RngStream rng = RngStream::substream(master_seed,
                                           static_cast<std::uint64_t>(j));
      StateVector psi = initial.sample(rng);
      if (markov) {
        std::size_t branch = 0;
        for (long step = 0; step < r; ++step) {
          plan.hamsub.apply_half_step(psi);
          if (step == 0) {
            branch = rng.sample_cumulative(init_cum);
          } else {
            branch = rng.sample_cumulative(policy.row_cum_[branch]);
          }
          channel.operations()[branch].apply_to(psi, rng);
          plan.hamsub.apply_half_step(psi);
        }
      } else {  // fully correlated
        bool have_op = false;
        SampledOperation held{
            PrimitiveOperation(UnitaryOp(PauliString::identity(1))), 0};
        for (long step = 0; step < r; ++step) {
          plan.hamsub.apply_half_step(psi);
          if (!have_op) {
            held = channel.sample_detailed(rng);
            have_op = true;
          }
          held.op.apply_to(psi, rng);
          plan.hamsub.apply_half_step(psi);
        }
      }
      results[static_cast<std::size_t>(j)] =
          detail::observable_expectation(psi, observable);
    }
  }

  TrajectoryResult out;
  out.n_traj = n_traj;
  out.estimate = detail::neumaier_sum(results) / static_cast<double>(n_traj);
  if (n_traj > 1) {
    std::vector<double> sq(results.size());
    for (std::size_t i = 0; i < results.size(); ++i) {
      const double dd = results[i] - out.estimate;
      sq[i] = dd * dd;
    }
    out.std_error = std::sqrt(detail::neumaier_sum(sq) /
                              static_cast<double>(n_traj - 1) /
                              static_cast<double>(n_traj));
  }
  return out;
}

}  // namespace lindsim
