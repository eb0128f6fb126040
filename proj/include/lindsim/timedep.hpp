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

#include <utility>
#include <vector>

#include "lindsim/engine.hpp"
#include "lindsim/model.hpp"
#include "lindsim/stoch_channel.hpp"

namespace lindsim {

/// Scalar rate profile g(t) >= 0. Jump operators are L_mu(t) =
/// sqrt(g_mu(t)) U_mu, so the profile carries the squared amplitude
/// |alpha_mu(t)|^2 (a 1-local dephasing rate Gamma(t) enters as g = Gamma/2).
class Profile {
 public:
  enum class Kind { Constant, Sinusoid, PiecewiseLinear };

  static Profile constant(double value);
  static Profile sinusoid(double base, double amplitude, double omega);
  // Knots (t, value), strictly increasing in t; evaluation clamps outside
  // the knot range.
  static Profile piecewise_linear(std::vector<std::pair<double, double>> knots);

  Kind kind() const { return kind_; }
  double eval(double t) const;

  // Parameter accessors for serialization.
  double base() const { return base_; }
  double amplitude() const { return amplitude_; }
  double omega() const { return omega_; }
  const std::vector<std::pair<double, double>>& knots() const { return knots_; }

 private:
  Profile() = default;
  Kind kind_ = Kind::Constant;
  double base_ = 0.0;
  double amplitude_ = 0.0;
  double omega_ = 0.0;
  std::vector<std::pair<double, double>> knots_;
};

struct TimeDepJump {
  Profile rate;
  PauliString unitary;
};

class TimeDepDissipator {
 public:
  TimeDepDissipator(int n_qubits, std::vector<TimeDepJump> jumps);

  int n_qubits() const { return n_; }
  const std::vector<TimeDepJump>& jumps() const { return jumps_; }

  std::vector<UnitaryJumpForm> unitary_jumps_at(double t) const;
  std::vector<JumpSpec> jump_specs_at(double t) const;
  double rate_sum(double t) const;  // a(t) = sum_mu g_mu(t)

  double sup_rate_sum(double t0, double t1, int grid_points = 1000) const;
  // sup over the grid of the dissipator Choi upper bound (diamond surrogate).
  double sup_choi_upper(double t0, double t1, int grid_points = 1000,
                        int cap = kSuperopQubitCap) const;

 private:
  int n_;
  std::vector<TimeDepJump> jumps_;
};

/// Classical RK4 on vec(rho) with the exact Liouvillian at each stage
/// (oracle for the time-ordered exponential).
DensityMatrix ode_propagate(const TimeDepDissipator& d, const HamiltonianSpec& h,
                            const DensityMatrix& rho, double t0, double t1,
                            long n_steps, int cap = kSuperopQubitCap);

/// Same integration applied to the full superoperator; h or d may be null.
Superoperator ode_propagate_superop(int n_qubits, const HamiltonianSpec* h,
                                    const TimeDepDissipator* d, double t0,
                                    double t1, long n_steps,
                                    int cap = kSuperopQubitCap);

/// (sup_t ||[H, D(t)]|| / 3)(||H||/2 + sup_t ||D(t)||)(t - s)^3 with every
/// norm replaced by its Choi upper bound over grid_points samples; throws
/// if the validity condition (||H||/2 + sup||D||)(t-s) <= 1 fails.
double theorem3_bound(const HamiltonianSpec& h, const TimeDepDissipator& d,
                      double s, double t, int grid_points = 1000,
                      int cap = kSuperopQubitCap);

struct TimeDepPlan {
  int n_qubits = 0;
  HamiltonianSpec hamiltonian = HamiltonianSpec::zero(1);
  double T = 0.0;
  double epsilon = 0.0;
  double c0 = 0.0;
  long r = 0;
  double dt = 0.0;
  int taylor_K = 0;
  double eps_h_budget = 0.0;
  double sup_pnorm = 0.0;
  // Largest dissipator diamond surrogate seen on the planning grid.
  double sup_dissipator_norm = 0.0;
  HamKind ham_kind = HamKind::ExactExp;
  HamiltonianSubroutine hamsub;
  // One channel per step, built from the midpoint rates on [t, t + dt].
  std::vector<StochasticChannel> step_channels;
  RunMode mode = RunMode::DensityMatrixMode;
  std::optional<TrajectoryConfig> trajectory;

  static TimeDepPlan make(const HamiltonianSpec& h, const TimeDepDissipator& d,
                          double T, double epsilon, double c0, HamKind kind,
                          RunMode mode,
                          std::optional<TrajectoryConfig> traj = {});
};

DensityMatrix run_timedep_density(const TimeDepPlan& plan,
                                  const DensityMatrix& rho0,
                                  int cap = kSuperopQubitCap);

TrajectoryResult run_timedep_trajectories(const TimeDepPlan& plan,
                                          const PrepareOp& initial);

/// How dissipation branches are drawn across the r steps of one trajectory.
class CorrelationPolicy {
 public:
  enum class Kind { Independent, FullyCorrelated, MarkovChain };

  static CorrelationPolicy independent();
  static CorrelationPolicy fully_correlated();
  // Row-stochastic transition matrix over the explicit branch indices.
  static CorrelationPolicy markov_chain(
      std::vector<std::vector<double>> transition);

  Kind kind() const { return kind_; }
  const std::vector<std::vector<double>>& transition() const {
    return transition_;
  }

 private:
  CorrelationPolicy() = default;
  Kind kind_ = Kind::Independent;
  std::vector<std::vector<double>> transition_;
  std::vector<std::vector<double>> row_cum_;
  friend TrajectoryResult correlated_run(const SimulationPlan&,
                                         const PrepareOp&,
                                         const CorrelationPolicy&);
};

/// Trajectory run with cross-step branch correlations. Independent matches
/// run_trajectories; FullyCorrelated draws one branch at step 1 and replays
/// it; MarkovChain draws step k from the row of step k-1's branch (explicit
/// channels only).
TrajectoryResult correlated_run(const SimulationPlan& plan,
                                const PrepareOp& initial,
                                const CorrelationPolicy& policy);

}  // namespace lindsim
