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

#include "lindsim/engine.hpp"

#include <cmath>
#include <stdexcept>

#include "lindsim/errors.hpp"
#include "lindsim/linalg.hpp"

namespace lindsim {

namespace {

constexpr int kDenseUnitaryCap = 10;
constexpr int kMaxTaylorOrder = 170;  // past this the factorial underflows

ComplexMatrix pauli_rotation_matrix(const PauliString& p, double theta) {
  // exp(-i theta P) = cos(theta) I - i sin(theta) P for Hermitian P.
  const std::size_t d = std::size_t(1) << p.n_qubits();
  ComplexMatrix out = ComplexMatrix::identity(d);
  out *= cplx(std::cos(theta), 0.0);
  ComplexMatrix pm = p.to_matrix();
  pm *= cplx(0.0, -std::sin(theta));
  out += pm;
  return out;
}

}  // namespace

HamiltonianSubroutine HamiltonianSubroutine::exact_exp(const HamiltonianSpec& h,
                                                       double dt) {
  HamiltonianSubroutine sub;
  sub.kind_ = HamKind::ExactExp;
  sub.n_qubits_ = h.n_qubits();
  sub.certified_eps_ = 0.0;
  if (h.is_zero() || dt == 0.0) {
    sub.identity_ = true;
    return sub;
  }
  if (h.n_qubits() > kDenseUnitaryCap) {
    throw CapExceeded(
        "HamiltonianSubroutine: ExactExp needs a dense unitary; use "
        "TrotterPauli beyond 10 qubits");
  }
  sub.identity_ = false;
  sub.half_unitary_ = matrix_exp(h.to_matrix(), cplx(0.0, -0.5 * dt));
  sub.have_dense_ = true;
  return sub;
}

HamiltonianSubroutine HamiltonianSubroutine::trotter(const HamiltonianSpec& h,
                                                     double dt,
                                                     double eps_budget) {
  if (eps_budget <= 0.0) {
    throw std::invalid_argument(
        "HamiltonianSubroutine: TrotterPauli needs a positive error budget");
  }
  HamiltonianSubroutine sub;
  sub.kind_ = HamKind::TrotterPauli;
  sub.n_qubits_ = h.n_qubits();
  if (h.is_zero() || dt == 0.0) {
    sub.identity_ = true;
    sub.inner_steps_ = 1;
    return sub;
  }
  for (const auto& t : h.terms()) {
    if (std::abs(std::imag(t.string.phase())) > 1e-12) {
      throw std::invalid_argument(
          "HamiltonianSubroutine: TrotterPauli needs Hermitian (real-phase) "
          "terms");
    }
  }
  sub.identity_ = false;

  const double weight = h.pauli_weight();
  const double half = 0.5 * dt;
  const double loose = (weight * half) * (weight * half);
  const long steps = static_cast<long>(std::ceil(loose / (0.5 * eps_budget)));
  sub.inner_steps_ = static_cast<int>(std::max<long>(1, steps));
  const double tau = half / sub.inner_steps_;

  for (const auto& t : h.terms()) {
    const double sign = std::real(t.string.phase()) >= 0.0 ? 1.0 : -1.0;
    sub.rotations_.emplace_back(PauliString(t.string.letters()),
                                sign * t.coeff * tau);
  }

  // Certified bound: per inner step ||e^{-iA tau}e^{-iB tau} - e^{-i(A+B)tau}||
  // <= tau^2 ||[A,B]|| / 2 summed over term pairs, times inner steps, doubled
  // for the diamond norm. Pauli pairs either commute or give ||[A,B]|| = 2ab.
  double pair_sum = 0.0;
  const auto& terms = h.terms();
  for (std::size_t k = 0; k < terms.size(); ++k) {
    for (std::size_t l = k + 1; l < terms.size(); ++l) {
      if (!terms[k].string.commutes_with(terms[l].string)) {
        pair_sum += 2.0 * terms[k].coeff * terms[l].coeff;
      }
    }
  }
  sub.certified_eps_ = sub.inner_steps_ * tau * tau * pair_sum;

  if (h.n_qubits() <= kDenseUnitaryCap) {
    const std::size_t d = std::size_t(1) << h.n_qubits();
    ComplexMatrix inner = ComplexMatrix::identity(d);
    for (const auto& [p, theta] : sub.rotations_) {
      inner = pauli_rotation_matrix(p, theta) * inner;
    }
    ComplexMatrix full = ComplexMatrix::identity(d);
    for (int s = 0; s < sub.inner_steps_; ++s) full = inner * full;
    sub.half_unitary_ = std::move(full);
    sub.have_dense_ = true;
  }
  return sub;
}

void HamiltonianSubroutine::apply_half_step(StateVector& psi) const {
  if (identity_) return;
  if (kind_ == HamKind::ExactExp) {
    psi.apply_unitary(half_unitary_);
    return;
  }
  for (int s = 0; s < inner_steps_; ++s) {
    for (const auto& [p, theta] : rotations_) {
      psi.apply_pauli_rotation(p, theta);
    }
  }
}

const ComplexMatrix& HamiltonianSubroutine::half_step_unitary() const {
  if (identity_) {
    // No dense matrix is stored; callers check is_identity() first.
    throw std::invalid_argument(
        "HamiltonianSubroutine: identity subroutine has no stored unitary");
  }
  if (!have_dense_) {
    throw CapExceeded(
        "HamiltonianSubroutine: dense unitary unavailable past 10 qubits");
  }
  return half_unitary_;
}

Superoperator HamiltonianSubroutine::superop() const {
  if (identity_) return Superoperator::identity(n_qubits_);
  return Superoperator::unitary_conjugation(n_qubits_, half_step_unitary());
}

HamiltonianSubroutine build_ham_subroutine(const HamiltonianSpec& h, double dt,
                                           double eps_h_budget, HamKind kind) {
  if (eps_h_budget < 0.0) {
    throw std::invalid_argument("build_ham_subroutine: negative budget");
  }
  if (kind == HamKind::ExactExp) {
    return HamiltonianSubroutine::exact_exp(h, dt);
  }
  return HamiltonianSubroutine::trotter(h, dt, eps_h_budget);
}

StepCount step_count(const LindbladSpec& spec, double T, double epsilon,
                     double c0) {
  if (epsilon <= 0.0 || epsilon > 1.0) {
    throw std::invalid_argument("step_count: epsilon must lie in (0, 1]");
  }
  if (T <= 0.0) {
    throw std::invalid_argument("step_count: T must be positive");
  }
  if (c0 < 0.0) {
    throw std::invalid_argument("step_count: c0 must be nonnegative");
  }
  const double pnorm = pauli_norm(spec);
  const double base =
      std::sqrt((16.0 / 3.0) * (1.0 + 6.0 * c0) / epsilon) *
      std::pow(pnorm * T, 1.5);
  long r = std::max<long>(1, static_cast<long>(std::ceil(base)));

  // Product-formula validity: (||H||/2 + ||D||) dt <= 1. Choi upper bounds
  // when the superoperator fits the cap, 2*pauli surrogates otherwise.
  double norm_h;
  double norm_d;
  if (spec.n_qubits() <= kSuperopQubitCap) {
    norm_h = spec.hamiltonian().is_zero()
                 ? 0.0
                 : diamond_bounds(hamiltonian_liouvillian(spec.hamiltonian()))
                       .upper;
    norm_d = spec.jumps().empty()
                 ? 0.0
                 : diamond_bounds(dissipator_liouvillian(spec.n_qubits(),
                                                         spec.jumps()))
                       .upper;
  } else {
    norm_h = 2.0 * spec.hamiltonian().pauli_weight();
    norm_d = 2.0 * pauli_norm_dissipator(spec.jumps());
  }
  const double validity = (0.5 * norm_h + norm_d) * T;
  if (validity > static_cast<double>(r)) {
    r = static_cast<long>(std::ceil(validity));
  }
  double a = 0.0;
  for (const auto& j : spec.jumps()) {
    if (j.unitary_form()) a += std::norm(j.unitary_form()->alpha);
  }
  if (a * T > static_cast<double>(r)) {
    r = static_cast<long>(std::ceil(a * T));
  }
  return StepCount{r, epsilon / (4.0 * static_cast<double>(r))};
}

SimulationPlan SimulationPlan::from_spec(const LindbladSpec& spec, double T,
                                         double epsilon, double c0,
                                         HamKind kind, RunMode mode,
                                         std::optional<TrajectoryConfig> traj) {
  if (T < 0.0) {
    throw std::invalid_argument("SimulationPlan: negative time");
  }
  SimulationPlan plan;
  plan.n_qubits = spec.n_qubits();
  plan.spec = spec;
  plan.T = T;
  plan.epsilon = epsilon;
  plan.c0 = c0;
  plan.ham_kind = kind;
  plan.mode = mode;
  plan.trajectory = std::move(traj);
  plan.pnorm = pauli_norm(spec);
  if (mode == RunMode::TrajectoriesMode) {
    if (!plan.trajectory) {
      throw std::invalid_argument("SimulationPlan: trajectory config missing");
    }
    detail::require_hermitian_observable(plan.trajectory->observable);
  }

  const auto uj = spec.unitary_jumps();
  if (!uj) {
    throw std::invalid_argument(
        "SimulationPlan: every jump needs a unitary form for the sampling "
        "construction");
  }
  for (const auto& j : *uj) plan.a += std::norm(j.alpha);

  if (T == 0.0) {
    plan.r = 0;
    plan.dt = 0.0;
    plan.hamsub = HamiltonianSubroutine::exact_exp(spec.hamiltonian(), 0.0);
    plan.step_channel = StochasticChannel::identity_channel(plan.n_qubits);
    return plan;
  }

  const StepCount sc = step_count(spec, T, epsilon, c0);
  plan.r = sc.r;
  plan.eps_h_budget = sc.eps_h_budget;
  plan.dt = T / static_cast<double>(plan.r);

  // Smallest truncation satisfying err_bound <= c0 (2 ||D||_pauli dt)^3.
  const double pnorm_d = pauli_norm_dissipator(spec.jumps());
  if (plan.a > 0.0) {
    if (c0 <= 0.0) {
      throw std::invalid_argument(
          "SimulationPlan: c0 = 0 demands a zero truncation error, which a "
          "nonempty dissipator cannot satisfy");
    }
    const double target = c0 * std::pow(2.0 * pnorm_d * plan.dt, 3.0);
    const double x = plan.a * plan.dt;
    int K = 0;
    while (2.0 * poisson_tail_mass(x, K) > target) {
      ++K;
      if (K > kMaxTaylorOrder) {
        throw std::invalid_argument(
            "SimulationPlan: requested c0 is below what double-precision "
            "truncation can certify; increase c0");
      }
    }
    plan.taylor_K = K;
  }

  auto taylor =
      dissipator_to_stochastic(plan.n_qubits, *uj, plan.dt, plan.taylor_K);
  plan.taylor_err_bound = taylor.err_bound;
  plan.step_channel = std::move(taylor.channel);
  plan.hamsub =
      build_ham_subroutine(spec.hamiltonian(), plan.dt, sc.eps_h_budget, kind);
  return plan;
}

SimulationPlan SimulationPlan::with_step_channel(
    const HamiltonianSpec& h, StochasticChannel channel, long r, double T,
    HamKind kind, double eps_h_budget, RunMode mode,
    std::optional<TrajectoryConfig> traj) {
  if (r < 0) throw std::invalid_argument("SimulationPlan: negative r");
  SimulationPlan plan;
  plan.n_qubits = h.n_qubits();
  if (channel.n_qubits() != plan.n_qubits) {
    throw std::invalid_argument("SimulationPlan: channel qubit mismatch");
  }
  plan.T = T;
  plan.r = r;
  plan.dt = (r > 0) ? T / static_cast<double>(r) : 0.0;
  plan.ham_kind = kind;
  plan.eps_h_budget = eps_h_budget;
  plan.mode = mode;
  plan.trajectory = std::move(traj);
  if (mode == RunMode::TrajectoriesMode) {
    if (!plan.trajectory) {
      throw std::invalid_argument("SimulationPlan: trajectory config missing");
    }
    detail::require_hermitian_observable(plan.trajectory->observable);
  }
  plan.hamsub = build_ham_subroutine(h, plan.dt, eps_h_budget, kind);
  plan.step_channel = std::move(channel);
  return plan;
}

Superoperator gadget_superoperator(const SimulationPlan& plan, int cap) {
  if (plan.n_qubits > cap) {
    throw CapExceeded("gadget_superoperator: cap exceeded");
  }
  const Superoperator k = plan.hamsub.superop();
  const Superoperator n = plan.step_channel.to_superoperator();
  return k * n * k;
}

namespace detail {

void require_hermitian_observable(const PauliObservable& observable) {
  for (const auto& t : observable.terms()) {
    if (std::abs(std::imag(t.string.phase())) > 1e-12) {
      throw std::invalid_argument(
          "observable is not Hermitian (complex-phase Pauli term)");
    }
  }
}

double observable_expectation(const StateVector& psi,
                              const PauliObservable& observable) {
  double value = 0.0;
  for (const auto& t : observable.terms()) {
    value += t.coeff * psi.expectation_pauli(t.string);
  }
  return value;
}

double neumaier_sum(const std::vector<double>& xs) {
  double sum = 0.0;
  double comp = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

DensityMatrix run_density_loop(const HamiltonianSubroutine& hamsub, long r,
                               const ChannelAt& channel_at,
                               const DensityMatrix& rho0) {
  DensityMatrix rho = rho0;
  for (long step = 0; step < r; ++step) {
    if (!hamsub.is_identity()) {
      rho = rho.apply_unitary(hamsub.half_step_unitary());
    }
    rho = channel_at(step).apply_exact(rho);
    if (!hamsub.is_identity()) {
      rho = rho.apply_unitary(hamsub.half_step_unitary());
    }
  }
  return rho;
}

TrajectoryResult run_trajectory_loop(const HamiltonianSubroutine& hamsub,
                                     long r, const ChannelAt& channel_at,
                                     const PrepareOp& initial,
                                     const PauliObservable& observable,
                                     long n_traj, std::uint64_t master_seed,
                                     int max_length) {
  if (n_traj < 1) {
    throw std::invalid_argument("run_trajectories: need at least 1 trajectory");
  }
  require_hermitian_observable(observable);

  std::vector<double> results(static_cast<std::size_t>(n_traj), 0.0);
  std::vector<long> histogram(static_cast<std::size_t>(max_length) + 1, 0);
  long prep_count = 0;

#pragma omp parallel
  {
    std::vector<long> local_hist(histogram.size(), 0);
    long local_prep = 0;
#pragma omp for schedule(static)
    for (long j = 0; j < n_traj; ++j) {
      RngStream rng = RngStream::substream(master_seed,
                                           static_cast<std::uint64_t>(j));
      StateVector psi = initial.sample(rng);
      for (long step = 0; step < r; ++step) {
        hamsub.apply_half_step(psi);
        const SampledOperation sampled = channel_at(step).sample_detailed(rng);
        sampled.op.apply_to(psi, rng);
        if (sampled.op.is_prepare()) {
          ++local_prep;
        } else if (static_cast<std::size_t>(sampled.composition_length) <
                   local_hist.size()) {
          ++local_hist[sampled.composition_length];
        }
        hamsub.apply_half_step(psi);
      }
      results[static_cast<std::size_t>(j)] =
          observable_expectation(psi, observable);
    }
#pragma omp critical
    {
      prep_count += local_prep;
      for (std::size_t i = 0; i < histogram.size(); ++i) {
        histogram[i] += local_hist[i];
      }
    }
  }

  TrajectoryResult out;
  out.n_traj = n_traj;
  out.prep_count = prep_count;
  out.unitary_length_histogram = std::move(histogram);
  out.estimate = neumaier_sum(results) / static_cast<double>(n_traj);
  if (n_traj > 1) {
    std::vector<double> sq(results.size());
    for (std::size_t i = 0; i < results.size(); ++i) {
      const double d = results[i] - out.estimate;
      sq[i] = d * d;
    }
    const double var =
        neumaier_sum(sq) / static_cast<double>(n_traj - 1);
    out.std_error = std::sqrt(var / static_cast<double>(n_traj));
  }
  return out;
}

}  // namespace detail

DensityMatrix run_density_matrix(const SimulationPlan& plan,
                                 const DensityMatrix& rho0, int cap) {
  if (plan.mode != RunMode::DensityMatrixMode) {
    throw std::invalid_argument("run_density_matrix: plan is not in "
                                "density-matrix mode");
  }
  if (plan.n_qubits > cap) {
    throw CapExceeded("run_density_matrix: cap exceeded");
  }
  if (rho0.n_qubits() != plan.n_qubits) {
    throw std::invalid_argument("run_density_matrix: state qubit mismatch");
  }
  const auto& channel = plan.step_channel;
  return detail::run_density_loop(
      plan.hamsub, plan.r,
      [&channel](long) -> const StochasticChannel& { return channel; }, rho0);
}

TrajectoryResult run_trajectories(const SimulationPlan& plan,
                                  const PrepareOp& initial) {
  if (plan.mode != RunMode::TrajectoriesMode || !plan.trajectory) {
    throw std::invalid_argument("run_trajectories: plan is not in "
                                "trajectories mode");
  }
  if (initial.n_qubits() != plan.n_qubits) {
    throw std::invalid_argument("run_trajectories: state qubit mismatch");
  }
  const auto& channel = plan.step_channel;
  return detail::run_trajectory_loop(
      plan.hamsub, plan.r,
      [&channel](long) -> const StochasticChannel& { return channel; },
      initial, plan.trajectory->observable, plan.trajectory->n_traj,
      plan.trajectory->master_seed, channel.max_composition_length());
}

}  // namespace lindsim
