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

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "lindsim/model.hpp"
#include "lindsim/stoch_channel.hpp"

namespace lindsim {

enum class HamKind { ExactExp, TrotterPauli };

/// Realization of the half-step map approximating exp((dt/2) * H-part).
/// ExactExp uses the dense exponential (zero error by construction);
/// TrotterPauli uses first-order term-by-term Pauli rotations with a
/// certified diamond-norm bound per half-step.
class HamiltonianSubroutine {
 public:
  static HamiltonianSubroutine exact_exp(const HamiltonianSpec& h, double dt);
  static HamiltonianSubroutine trotter(const HamiltonianSpec& h, double dt,
                                       double eps_budget);

  // Default-constructed instances are inert identities; the factories above
  // produce the real thing.
  HamiltonianSubroutine() = default;

  HamKind kind() const { return kind_; }
  double certified_eps() const { return certified_eps_; }
  int inner_steps() const { return inner_steps_; }
  bool is_identity() const { return identity_; }

  void apply_half_step(StateVector& psi) const;
  const ComplexMatrix& half_step_unitary() const;
  Superoperator superop() const;

 private:
  HamKind kind_ = HamKind::ExactExp;
  int n_qubits_ = 0;
  double certified_eps_ = 0.0;
  int inner_steps_ = 0;
  bool identity_ = true;
  bool have_dense_ = false;
  ComplexMatrix half_unitary_;
  // One inner cycle of the Trotter schedule; applied inner_steps_ times.
  std::vector<std::pair<PauliString, double>> rotations_;
};

HamiltonianSubroutine build_ham_subroutine(const HamiltonianSpec& h, double dt,
                                           double eps_h_budget, HamKind kind);

struct StepCount {
  long r;
  double eps_h_budget;  // per half-step, so 2 r eps_H <= epsilon / 2
};

/// r = ceil( sqrt((16/3)(1+6 c0)/epsilon) * (pauli_norm * T)^1.5 ), raised
/// further if needed so (||H||/2 + ||D||) dt <= 1 (Choi upper bounds below
/// the superoperator cap, 2*pauli-norm surrogates above it) and a dt <= 1.
StepCount step_count(const LindbladSpec& spec, double T, double epsilon,
                     double c0);

enum class RunMode { DensityMatrixMode, TrajectoriesMode };

struct TrajectoryConfig {
  long n_traj;
  PauliObservable observable;
  std::uint64_t master_seed;
};

struct SimulationPlan {
  int n_qubits = 0;
  std::optional<LindbladSpec> spec;
  double T = 0.0;
  double epsilon = 0.0;
  double c0 = 0.0;
  long r = 0;
  double dt = 0.0;
  int taylor_K = 0;
  double taylor_err_bound = 0.0;
  double eps_h_budget = 0.0;
  double pnorm = 0.0;  // Theorem-2 cost norm used for r
  double a = 0.0;      // sum |alpha_mu|^2
  HamKind ham_kind = HamKind::ExactExp;
  HamiltonianSubroutine hamsub;
  StochasticChannel step_channel = StochasticChannel::identity_channel(1);
  RunMode mode = RunMode::DensityMatrixMode;
  std::optional<TrajectoryConfig> trajectory;

  /// Theorem-2 plan for a spec whose jumps all carry unitary form; picks r
  /// from step_count and the smallest taylor_K with
  /// err_bound <= c0 (2 ||D||_pauli dt)^3.
  static SimulationPlan from_spec(const LindbladSpec& spec, double T,
                                  double epsilon, double c0, HamKind kind,
                                  RunMode mode,
                                  std::optional<TrajectoryConfig> traj = {});

  /// Plan around an exactly-built per-step channel (reset, Pauli-mixture
  /// steps): r is supplied, no Taylor truncation is involved.
  static SimulationPlan with_step_channel(
      const HamiltonianSpec& h, StochasticChannel channel, long r, double T,
      HamKind kind, double eps_h_budget, RunMode mode,
      std::optional<TrajectoryConfig> traj = {});
};

/// K_hat * N_hat * K_hat for one gadget step.
Superoperator gadget_superoperator(const SimulationPlan& plan,
                                   int cap = kSuperopQubitCap);

DensityMatrix run_density_matrix(const SimulationPlan& plan,
                                 const DensityMatrix& rho0,
                                 int cap = kSuperopQubitCap);

struct TrajectoryResult {
  double estimate = 0.0;
  double std_error = 0.0;
  long n_traj = 0;
  long prep_count = 0;
  // counts by sampled unitary composition length 0..K (explicit branches
  // count as length 1)
  std::vector<long> unitary_length_histogram;
};

TrajectoryResult run_trajectories(const SimulationPlan& plan,
                                  const PrepareOp& initial);

namespace detail {

using ChannelAt = std::function<const StochasticChannel&(long step)>;

DensityMatrix run_density_loop(const HamiltonianSubroutine& hamsub, long r,
                               const ChannelAt& channel_at,
                               const DensityMatrix& rho0);

TrajectoryResult run_trajectory_loop(const HamiltonianSubroutine& hamsub,
                                     long r, const ChannelAt& channel_at,
                                     const PrepareOp& initial,
                                     const PauliObservable& observable,
                                     long n_traj, std::uint64_t master_seed,
                                     int max_length);

double observable_expectation(const StateVector& psi,
                              const PauliObservable& observable);

void require_hermitian_observable(const PauliObservable& observable);

double neumaier_sum(const std::vector<double>& xs);

}  // namespace detail

}  // namespace lindsim
