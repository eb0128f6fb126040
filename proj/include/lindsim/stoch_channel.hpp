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
#include <utility>
#include <vector>

#include "lindsim/model.hpp"
#include "lindsim/rng.hpp"
#include "lindsim/states.hpp"
#include "lindsim/unitary_op.hpp"

namespace lindsim {

struct WeightedPureState {
  double weight;
  StateVector state;
};

/// Fixed-state preparation: replaces the current state with a sample from a
/// pure-state ensemble (trajectories) or with the ensemble average (density
/// matrices).
class PrepareOp {
 public:
  explicit PrepareOp(std::vector<WeightedPureState> ensemble);
  static PrepareOp pure(StateVector psi);

  int n_qubits() const { return n_; }
  const std::vector<WeightedPureState>& ensemble() const { return ensemble_; }
  DensityMatrix density() const;
  const StateVector& sample(RngStream& rng) const;

 private:
  int n_;
  std::vector<WeightedPureState> ensemble_;
  std::vector<double> cumulative_;
};

/// One branch of a stochastically simulatable channel: a unitary or a
/// fixed-state preparation.
class PrimitiveOperation {
 public:
  explicit PrimitiveOperation(UnitaryOp u) : op_(std::move(u)) {}
  explicit PrimitiveOperation(PrepareOp p) : op_(std::move(p)) {}

  bool is_unitary() const { return std::holds_alternative<UnitaryOp>(op_); }
  bool is_prepare() const { return !is_unitary(); }
  const UnitaryOp& unitary() const { return std::get<UnitaryOp>(op_); }
  const PrepareOp& prepare() const { return std::get<PrepareOp>(op_); }
  int n_qubits() const;

  void apply_to(StateVector& psi, RngStream& rng) const;
  ComplexMatrix apply_to_density_raw(const ComplexMatrix& rho) const;
  Superoperator to_superoperator() const;

 private:
  std::variant<UnitaryOp, PrepareOp> op_;
};

struct SampledOperation {
  PrimitiveOperation op;
  int composition_length;  // unitaries composed (0 for identity / prepare)
};

struct TaylorChannel;

/// Convex mixture of unitaries and at most one state preparation
/// (q * sum_i lambda_i U_i . U_i^dag + (1-q) * prep). Carries either an
/// explicit branch list or the lazy Poisson-composition family produced by
/// dissipator_to_stochastic, which is sampled without ever enumerating the
/// (m+1)^K combined branches.
class StochasticChannel {
 public:
  static StochasticChannel mixture(
      std::vector<std::pair<double, PrimitiveOperation>> branches);
  static StochasticChannel identity_channel(int n_qubits);

  int n_qubits() const { return n_; }
  bool is_explicit() const { return !poisson_.has_value(); }

  // Explicit-form accessors; throw for the lazy family.
  const std::vector<double>& probabilities() const;
  const std::vector<PrimitiveOperation>& operations() const;

  DensityMatrix apply_exact(const DensityMatrix& rho,
                            double tol = 1e-10) const;
  ComplexMatrix apply_exact_raw(const ComplexMatrix& rho) const;

  SampledOperation sample_detailed(RngStream& rng) const;
  PrimitiveOperation sample_operation(RngStream& rng) const;

  Superoperator to_superoperator() const;

  // Longest unitary composition a sample can return (histogram sizing).
  int max_composition_length() const;

 private:
  friend TaylorChannel dissipator_to_stochastic(
      int n_qubits, const std::vector<UnitaryJumpForm>& jumps, double dt,
      int truncation_order, bool renormalize);
  explicit StochasticChannel(int n_qubits) : n_(n_qubits) {}

  struct PoissonForm {
    std::vector<UnitaryOp> unitaries;
    std::vector<double> index_probs;     // |alpha_mu|^2 / a
    std::vector<double> index_cum;
    std::vector<double> length_weights;  // size K+1
    std::vector<double> length_cum;
    double a = 0.0;
    double dt = 0.0;
    int truncation = 0;
  };

  int n_;
  std::vector<double> probs_;
  std::vector<PrimitiveOperation> ops_;
  std::vector<double> cum_;
  std::optional<PoissonForm> poisson_;
};

/// Truncation parameters for the random-unitary expansion of e^{dt D};
/// requires a * dt <= 1 with a = sum |alpha_mu|^2.
struct TaylorConfig {
  TaylorConfig(int truncation_order, double a, double dt);
  int truncation_order;
  double a;
  double dt;
};

struct TaylorChannel {
  StochasticChannel channel;
  double err_bound;  // 2 * Poisson tail mass <= 2 (a dt)^{K+1} / (K+1)!
  double a;
  int truncation;
};

/// sum_{k > K} e^{-x} x^k / k!, accumulated term by term so tiny tails are
/// not lost to cancellation against 1.
double poisson_tail_mass(double x, int truncation);

/// Random-unitary channel approximating e^{dt D} for jump operators
/// L_mu = alpha_mu U_mu: composition length k carries Poisson weight
/// e^{-a dt}(a dt)^k / k!, and the k factors are drawn i.i.d. with
/// probability |alpha_mu|^2 / a. Retained weights are renormalized unless
/// renormalize is false (which reproduces the plain truncated series).
TaylorChannel dissipator_to_stochastic(int n_qubits,
                                       const std::vector<UnitaryJumpForm>& jumps,
                                       double dt, int truncation_order,
                                       bool renormalize = true);

/// sum_{k<=K} e^{-a dt}(dt^k/k!) R^k as a superoperator (the plain truncated
/// series, not trace preserving).
Superoperator truncated_taylor_superop(int n_qubits,
                                       const std::vector<UnitaryJumpForm>& jumps,
                                       double dt, int truncation_order,
                                       int cap = kSuperopQubitCap);

/// The discarded tail sum_{k>K} e^{-a dt}(dt^k/k!) R^k, built term by term so
/// tiny tails are not lost to cancellation. Equals
/// exp(dt D_hat) - truncated_taylor_superop exactly.
Superoperator taylor_tail_superop(int n_qubits,
                                  const std::vector<UnitaryJumpForm>& jumps,
                                  double dt, int truncation_order,
                                  int extra_terms = 80,
                                  int cap = kSuperopQubitCap);

// Example families from the cost analysis.

/// Global depolarizing: all 4^n - 1 non-identity strings with rate gamma/4^n,
/// i.e. L_mu = sqrt(gamma/4^n) V_mu.
std::vector<JumpSpec> depolarizing_jumps(int n_qubits, double gamma);

/// 1-local dephasing: L_mu = sqrt(Gamma/2) Z_mu for every qubit.
std::vector<JumpSpec> dephasing_jumps(int n_qubits, double Gamma);

/// Pauli twirl with per-string rates: L_i = sqrt(rate_i) P_i.
std::vector<JumpSpec> pauli_twirl_jumps(
    int n_qubits, const std::vector<std::pair<double, PauliString>>& rates);

/// Definition-1 reset channel: identity with weight q, preparation of the
/// ensemble with weight 1 - q.
StochasticChannel reset_channel(double q, PrepareOp ensemble);

}  // namespace lindsim
