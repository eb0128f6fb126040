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

#include "lindsim/stoch_channel.hpp"

#include <cmath>
#include <stdexcept>

#include "lindsim/errors.hpp"

namespace lindsim {

namespace {

std::vector<double> cumulative_of(const std::vector<double>& probs) {
  std::vector<double> cum(probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    cum[i] = acc;
  }
  return cum;
}

struct PoissonWeights {
  std::vector<double> kept;  // e^{-x} x^k / k!, k = 0..K
  double tail;               // sum over k > K, summed term by term
};

PoissonWeights poisson_weights(double x, int truncation) {
  PoissonWeights out;
  out.kept.resize(truncation + 1);
  double w = std::exp(-x);
  out.kept[0] = w;
  for (int k = 1; k <= truncation; ++k) {
    w *= x / static_cast<double>(k);
    out.kept[k] = w;
  }
  out.tail = poisson_tail_mass(x, truncation);
  return out;
}

}  // namespace

double poisson_tail_mass(double x, int truncation) {
  double w = std::exp(-x);
  for (int k = 1; k <= truncation; ++k) w *= x / static_cast<double>(k);
  double tail = 0.0;
  double term = w;
  for (int j = 1; j <= 400; ++j) {
    term *= x / static_cast<double>(truncation + j);
    tail += term;
    if (term < tail * 1e-18 + 1e-320) break;
  }
  return tail;
}

PrepareOp::PrepareOp(std::vector<WeightedPureState> ensemble)
    : ensemble_(std::move(ensemble)) {
  if (ensemble_.empty()) {
    throw std::invalid_argument("PrepareOp: empty ensemble");
  }
  n_ = ensemble_.front().state.n_qubits();
  double total = 0.0;
  std::vector<double> probs;
  probs.reserve(ensemble_.size());
  for (const auto& ws : ensemble_) {
    if (ws.weight < 0.0) {
      throw std::invalid_argument("PrepareOp: negative weight");
    }
    if (ws.state.n_qubits() != n_) {
      throw std::invalid_argument("PrepareOp: mixed qubit counts");
    }
    ws.state.validate();
    total += ws.weight;
    probs.push_back(ws.weight);
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("PrepareOp: weights must sum to 1");
  }
  cumulative_ = cumulative_of(probs);
}

PrepareOp PrepareOp::pure(StateVector psi) {
  std::vector<WeightedPureState> e;
  e.push_back({1.0, std::move(psi)});
  return PrepareOp(std::move(e));
}

DensityMatrix PrepareOp::density() const {
  const std::size_t d = std::size_t(1) << n_;
  ComplexMatrix m(d, d);
  for (const auto& ws : ensemble_) {
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        m(i, j) += ws.weight * ws.state.amplitude(i) *
                   std::conj(ws.state.amplitude(j));
      }
    }
  }
  return DensityMatrix(n_, std::move(m));
}

const StateVector& PrepareOp::sample(RngStream& rng) const {
  return ensemble_[rng.sample_cumulative(cumulative_)].state;
}

int PrimitiveOperation::n_qubits() const {
  if (is_unitary()) return unitary().n_qubits();
  return prepare().n_qubits();
}

void PrimitiveOperation::apply_to(StateVector& psi, RngStream& rng) const {
  if (is_unitary()) {
    unitary().apply_to(psi);
  } else {
    psi = prepare().sample(rng);
  }
}

ComplexMatrix PrimitiveOperation::apply_to_density_raw(
    const ComplexMatrix& rho) const {
  if (is_unitary()) return unitary().conjugate_raw(rho);
  // rho_f * tr(rho)
  ComplexMatrix out = prepare().density().matrix();
  out *= rho.trace();
  return out;
}

Superoperator PrimitiveOperation::to_superoperator() const {
  if (is_unitary()) return Superoperator::conjugation(unitary());
  return Superoperator::state_preparation(prepare().density());
}

StochasticChannel StochasticChannel::mixture(
    std::vector<std::pair<double, PrimitiveOperation>> branches) {
  if (branches.empty()) {
    throw std::invalid_argument("StochasticChannel: no branches");
  }
  const int n = branches.front().second.n_qubits();
  StochasticChannel ch(n);
  double total = 0.0;
  int prepare_branches = 0;
  for (auto& [p, op] : branches) {
    if (p < 0.0) {
      throw std::invalid_argument("StochasticChannel: negative probability");
    }
    if (op.n_qubits() != n) {
      throw std::invalid_argument("StochasticChannel: qubit count mismatch");
    }
    if (op.is_prepare()) ++prepare_branches;
    total += p;
    ch.probs_.push_back(p);
    ch.ops_.push_back(std::move(op));
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument(
        "StochasticChannel: probabilities must sum to 1");
  }
  if (prepare_branches > 1) {
    throw std::invalid_argument(
        "StochasticChannel: more than one aggregate Prepare branch");
  }
  ch.cum_ = cumulative_of(ch.probs_);
  return ch;
}

StochasticChannel StochasticChannel::identity_channel(int n_qubits) {
  std::vector<std::pair<double, PrimitiveOperation>> b;
  b.emplace_back(1.0,
                 PrimitiveOperation(UnitaryOp(PauliString::identity(n_qubits))));
  return mixture(std::move(b));
}

const std::vector<double>& StochasticChannel::probabilities() const {
  if (!is_explicit()) {
    throw std::invalid_argument(
        "StochasticChannel: lazy composition family has no explicit branch "
        "list");
  }
  return probs_;
}

const std::vector<PrimitiveOperation>& StochasticChannel::operations() const {
  if (!is_explicit()) {
    throw std::invalid_argument(
        "StochasticChannel: lazy composition family has no explicit branch "
        "list");
  }
  return ops_;
}

ComplexMatrix StochasticChannel::apply_exact_raw(const ComplexMatrix& rho) const {
  const std::size_t d = std::size_t(1) << n_;
  if (rho.rows() != d || rho.cols() != d) {
    throw std::invalid_argument("apply_exact: dimension mismatch");
  }
  ComplexMatrix out(d, d);
  if (is_explicit()) {
    for (std::size_t i = 0; i < ops_.size(); ++i) {
      if (probs_[i] == 0.0) continue;
      ComplexMatrix term = ops_[i].apply_to_density_raw(rho);
      term *= cplx(probs_[i], 0.0);
      out += term;
    }
    return out;
  }
  const auto& pf = *poisson_;
  ComplexMatrix cur = rho;
  for (int k = 0; k <= pf.truncation; ++k) {
    if (k > 0) {
      // One application of the normalized random-unitary map R / a.
      ComplexMatrix next(d, d);
      for (std::size_t mu = 0; mu < pf.unitaries.size(); ++mu) {
        const double p = pf.index_probs[mu];
        if (p == 0.0) continue;
        ComplexMatrix term = pf.unitaries[mu].conjugate_raw(cur);
        term *= cplx(p, 0.0);
        next += term;
      }
      cur = std::move(next);
    }
    ComplexMatrix weighted = cur;
    weighted *= cplx(pf.length_weights[k], 0.0);
    out += weighted;
  }
  return out;
}

DensityMatrix StochasticChannel::apply_exact(const DensityMatrix& rho,
                                             double tol) const {
  return DensityMatrix(n_, apply_exact_raw(rho.matrix()), tol);
}

SampledOperation StochasticChannel::sample_detailed(RngStream& rng) const {
  if (is_explicit()) {
    const std::size_t i = rng.sample_cumulative(cum_);
    const auto& op = ops_[i];
    return SampledOperation{op, op.is_unitary() ? 1 : 0};
  }
  const auto& pf = *poisson_;
  const int k = static_cast<int>(rng.sample_cumulative(pf.length_cum));
  if (k == 0) {
    return SampledOperation{
        PrimitiveOperation(UnitaryOp(PauliString::identity(n_))), 0};
  }
  UnitaryOp total = pf.unitaries[rng.sample_cumulative(pf.index_cum)];
  for (int j = 1; j < k; ++j) {
    total = pf.unitaries[rng.sample_cumulative(pf.index_cum)].compose_after(
        total);
  }
  return SampledOperation{PrimitiveOperation(std::move(total)), k};
}

PrimitiveOperation StochasticChannel::sample_operation(RngStream& rng) const {
  return sample_detailed(rng).op;
}

Superoperator StochasticChannel::to_superoperator() const {
  if (is_explicit()) {
    Superoperator out = Superoperator::zero(n_);
    for (std::size_t i = 0; i < ops_.size(); ++i) {
      if (probs_[i] == 0.0) continue;
      Superoperator term = ops_[i].to_superoperator();
      term *= cplx(probs_[i], 0.0);
      out += term;
    }
    return out;
  }
  const auto& pf = *poisson_;
  Superoperator mean = Superoperator::zero(n_);
  for (std::size_t mu = 0; mu < pf.unitaries.size(); ++mu) {
    const double p = pf.index_probs[mu];
    if (p == 0.0) continue;
    Superoperator term = Superoperator::conjugation(pf.unitaries[mu]);
    term *= cplx(p, 0.0);
    mean += term;
  }
  Superoperator out = Superoperator::zero(n_);
  Superoperator power = Superoperator::identity(n_);
  for (int k = 0; k <= pf.truncation; ++k) {
    if (k > 0) power = mean * power;
    Superoperator term = power;
    term *= cplx(pf.length_weights[k], 0.0);
    out += term;
  }
  return out;
}

int StochasticChannel::max_composition_length() const {
  if (is_explicit()) return 1;
  return poisson_->truncation;
}

TaylorConfig::TaylorConfig(int truncation_order_in, double a_in, double dt_in)
    : truncation_order(truncation_order_in), a(a_in), dt(dt_in) {
  if (truncation_order < 0) {
    throw std::invalid_argument("TaylorConfig: negative truncation order");
  }
  if (dt <= 0.0) {
    throw std::invalid_argument("TaylorConfig: dt must be positive");
  }
  if (a < 0.0) {
    throw std::invalid_argument("TaylorConfig: negative total rate");
  }
  if (a * dt > 1.0 + 1e-12) {
    throw std::invalid_argument(
        "TaylorConfig: a * dt must not exceed 1 (shrink the step)");
  }
}

TaylorChannel dissipator_to_stochastic(int n_qubits,
                                       const std::vector<UnitaryJumpForm>& jumps,
                                       double dt, int truncation_order,
                                       bool renormalize) {
  double a = 0.0;
  for (const auto& j : jumps) a += std::norm(j.alpha);
  const TaylorConfig config(truncation_order, a, dt);

  if (a == 0.0 || jumps.empty()) {
    return TaylorChannel{StochasticChannel::identity_channel(n_qubits), 0.0,
                         0.0, truncation_order};
  }

  const double x = a * dt;
  PoissonWeights pw = poisson_weights(x, truncation_order);
  const double kept_mass = 1.0 - pw.tail;
  StochasticChannel::PoissonForm form;
  form.a = a;
  form.dt = dt;
  form.truncation = truncation_order;
  form.length_weights = pw.kept;
  if (renormalize) {
    for (auto& w : form.length_weights) w /= kept_mass;
  }
  form.length_cum = cumulative_of(form.length_weights);

  for (const auto& j : jumps) {
    form.unitaries.push_back(j.u);
    form.index_probs.push_back(std::norm(j.alpha) / a);
  }
  form.index_cum = cumulative_of(form.index_probs);

  StochasticChannel ch(n_qubits);
  ch.poisson_ = std::move(form);
  return TaylorChannel{std::move(ch), 2.0 * pw.tail, a, truncation_order};
}

namespace {

Superoperator mean_unitary_superop(int n_qubits,
                                   const std::vector<UnitaryJumpForm>& jumps,
                                   double a) {
  Superoperator mean = Superoperator::zero(n_qubits);
  for (const auto& j : jumps) {
    const double p = std::norm(j.alpha) / a;
    if (p == 0.0) continue;
    Superoperator term = Superoperator::conjugation(j.u);
    term *= cplx(p, 0.0);
    mean += term;
  }
  return mean;
}

}  // namespace

Superoperator truncated_taylor_superop(int n_qubits,
                                       const std::vector<UnitaryJumpForm>& jumps,
                                       double dt, int truncation_order,
                                       int cap) {
  if (n_qubits > cap) {
    throw CapExceeded("truncated_taylor_superop: cap exceeded");
  }
  double a = 0.0;
  for (const auto& j : jumps) a += std::norm(j.alpha);
  if (a == 0.0 || jumps.empty()) return Superoperator::identity(n_qubits);
  const double x = a * dt;
  const PoissonWeights pw = poisson_weights(x, truncation_order);
  const Superoperator mean = mean_unitary_superop(n_qubits, jumps, a);
  Superoperator out = Superoperator::zero(n_qubits);
  Superoperator power = Superoperator::identity(n_qubits);
  for (int k = 0; k <= truncation_order; ++k) {
    if (k > 0) power = mean * power;
    Superoperator term = power;
    term *= cplx(pw.kept[k], 0.0);
    out += term;
  }
  return out;
}

Superoperator taylor_tail_superop(int n_qubits,
                                  const std::vector<UnitaryJumpForm>& jumps,
                                  double dt, int truncation_order,
                                  int extra_terms, int cap) {
  if (n_qubits > cap) {
    throw CapExceeded("taylor_tail_superop: cap exceeded");
  }
  double a = 0.0;
  for (const auto& j : jumps) a += std::norm(j.alpha);
  if (a == 0.0 || jumps.empty()) return Superoperator::zero(n_qubits);
  const double x = a * dt;
  const PoissonWeights pw = poisson_weights(x, truncation_order);
  const Superoperator mean = mean_unitary_superop(n_qubits, jumps, a);

  Superoperator out = Superoperator::zero(n_qubits);
  Superoperator power = Superoperator::identity(n_qubits);
  for (int k = 0; k < truncation_order + 1; ++k) power = mean * power;
  // power = mean^{K+1}; weights continue the Poisson recurrence.
  double w = pw.kept[truncation_order] * x / (truncation_order + 1);
  for (int j = 0; j < extra_terms; ++j) {
    Superoperator term = power;
    term *= cplx(w, 0.0);
    out += term;
    if (w < 1e-320) break;
    power = mean * power;
    w *= x / static_cast<double>(truncation_order + 2 + j);
  }
  return out;
}

std::vector<JumpSpec> depolarizing_jumps(int n_qubits, double gamma) {
  if (gamma < 0.0) {
    throw std::invalid_argument("depolarizing_jumps: negative rate");
  }
  const std::size_t n_paulis = std::size_t(1) << (2 * n_qubits);
  const double coeff =
      std::sqrt(gamma / static_cast<double>(n_paulis));
  std::vector<JumpSpec> jumps;
  jumps.reserve(n_paulis - 1);
  for (std::size_t code = 1; code < n_paulis; ++code) {
    std::vector<Pauli> letters(n_qubits);
    std::size_t c = code;
    for (int q = n_qubits - 1; q >= 0; --q) {
      letters[q] = static_cast<Pauli>(c & 3u);
      c >>= 2;
    }
    jumps.push_back(
        JumpSpec::from_unitary(coeff, PauliString(std::move(letters))));
  }
  return jumps;
}

std::vector<JumpSpec> dephasing_jumps(int n_qubits, double Gamma) {
  if (Gamma < 0.0) {
    throw std::invalid_argument("dephasing_jumps: negative rate");
  }
  const double coeff = std::sqrt(Gamma / 2.0);
  std::vector<JumpSpec> jumps;
  jumps.reserve(n_qubits);
  for (int q = 0; q < n_qubits; ++q) {
    jumps.push_back(JumpSpec::from_unitary(
        coeff, PauliString::single(n_qubits, q, Pauli::Z)));
  }
  return jumps;
}

std::vector<JumpSpec> pauli_twirl_jumps(
    int n_qubits, const std::vector<std::pair<double, PauliString>>& rates) {
  std::vector<JumpSpec> jumps;
  jumps.reserve(rates.size());
  for (const auto& [rate, p] : rates) {
    if (rate < 0.0) {
      throw std::invalid_argument("pauli_twirl_jumps: negative rate");
    }
    if (p.n_qubits() != n_qubits) {
      throw std::invalid_argument("pauli_twirl_jumps: qubit count mismatch");
    }
    if (rate == 0.0) continue;
    jumps.push_back(JumpSpec::from_unitary(std::sqrt(rate), p));
  }
  return jumps;
}

StochasticChannel reset_channel(double q, PrepareOp ensemble) {
  if (q < 0.0 || q > 1.0) {
    throw std::invalid_argument("reset_channel: q must lie in [0, 1]");
  }
  const int n = ensemble.n_qubits();
  std::vector<std::pair<double, PrimitiveOperation>> branches;
  branches.emplace_back(q,
                        PrimitiveOperation(UnitaryOp(PauliString::identity(n))));
  branches.emplace_back(1.0 - q, PrimitiveOperation(std::move(ensemble)));
  return StochasticChannel::mixture(std::move(branches));
}

}  // namespace lindsim
