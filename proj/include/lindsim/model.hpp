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
#include <vector>

#include "lindsim/complex_matrix.hpp"
#include "lindsim/pauli.hpp"
#include "lindsim/states.hpp"
#include "lindsim/unitary_op.hpp"

namespace lindsim {

// Dense 4^n x 4^n superoperators stop being "seconds on a laptop" past this.
constexpr int kSuperopQubitCap = 6;

/// One weighted Pauli term: coeff * string (coeff > 0; signs and i-factors
/// live in the string's phase).
struct PauliTerm {
  double coeff;
  PauliString string;
};

/// H = sum_k beta_k V_k as a positive-coefficient phased-Pauli sum. Also
/// reused for Pauli-sum observables, which obey the same constraints.
class HamiltonianSpec {
 public:
  HamiltonianSpec(int n_qubits, std::vector<PauliTerm> terms);

  static HamiltonianSpec zero(int n_qubits);

  int n_qubits() const { return n_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  ComplexMatrix to_matrix() const;
  double pauli_weight() const;  // sum of coefficients

 private:
  int n_;
  std::vector<PauliTerm> terms_;
};

using PauliObservable = HamiltonianSpec;

/// Jump operator L = sum_k beta_k V_k, optionally carrying the unitary form
/// L = alpha * U that the sampling construction needs.
class JumpSpec {
 public:
  JumpSpec(int n_qubits, std::vector<PauliTerm> terms,
           std::optional<UnitaryJumpForm> unitary_form = std::nullopt);

  static JumpSpec from_unitary(cplx alpha, PauliString u);
  static JumpSpec from_unitary(int n_qubits, cplx alpha, ComplexMatrix u);

  int n_qubits() const { return n_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  const std::optional<UnitaryJumpForm>& unitary_form() const {
    return unitary_form_;
  }

  ComplexMatrix to_matrix() const;
  double pauli_weight() const;  // sum_k beta_k

 private:
  int n_;
  std::vector<PauliTerm> terms_;
  std::optional<UnitaryJumpForm> unitary_form_;
};

class LindbladSpec {
 public:
  LindbladSpec(HamiltonianSpec hamiltonian, std::vector<JumpSpec> jumps);

  int n_qubits() const { return hamiltonian_.n_qubits(); }
  const HamiltonianSpec& hamiltonian() const { return hamiltonian_; }
  const std::vector<JumpSpec>& jumps() const { return jumps_; }

  // All jumps in unitary form, or nullopt if any jump lacks one.
  std::optional<std::vector<UnitaryJumpForm>> unitary_jumps() const;

 private:
  HamiltonianSpec hamiltonian_;
  std::vector<JumpSpec> jumps_;
};

/// Dense 4^n x 4^n matrix acting on column-stacked vec(rho),
/// vec(A rho B) = (B^T (x) A) vec(rho).
class Superoperator {
 public:
  Superoperator(int n_qubits, ComplexMatrix m);

  static Superoperator identity(int n_qubits);
  static Superoperator zero(int n_qubits);
  static Superoperator unitary_conjugation(int n_qubits,
                                           const ComplexMatrix& u);
  static Superoperator pauli_conjugation(const PauliString& p);
  static Superoperator conjugation(const UnitaryOp& u);
  // rho -> rho_f * tr(rho)
  static Superoperator state_preparation(const DensityMatrix& rho_f);

  int n_qubits() const { return n_; }
  std::size_t dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  ComplexMatrix& matrix() { return m_; }

  DensityMatrix apply(const DensityMatrix& rho, double tol = 1e-10) const;
  ComplexMatrix apply_raw(const ComplexMatrix& rho) const;

  Superoperator operator*(const Superoperator& other) const;  // composition
  Superoperator& operator+=(const Superoperator& other);
  Superoperator& operator-=(const Superoperator& other);
  Superoperator& operator*=(cplx scale);
  Superoperator pow(long exponent) const;

  /// Unnormalized Choi matrix sum_ij Phi(E_ij) (x) E_ij.
  ComplexMatrix choi() const;
  bool is_cptp(double psd_tol = 1e-9, double tp_tol = 1e-9) const;

 private:
  int n_;
  ComplexMatrix m_;
};

Superoperator operator-(Superoperator a, const Superoperator& b);
Superoperator operator+(Superoperator a, const Superoperator& b);

std::vector<cplx> vec(const ComplexMatrix& rho);
ComplexMatrix unvec(const std::vector<cplx>& v, std::size_t d);

/// L_hat = -i(I(x)H - H^T(x)I)
///         + sum_mu [conj(L)(x)L - 1/2 I(x)(L^dag L) - 1/2 (L^dag L)^T(x)I]
Superoperator build_liouvillian(const LindbladSpec& spec,
                                int cap = kSuperopQubitCap);
Superoperator hamiltonian_liouvillian(const HamiltonianSpec& h,
                                      int cap = kSuperopQubitCap);
Superoperator dissipator_liouvillian(int n_qubits,
                                     const std::vector<JumpSpec>& jumps,
                                     int cap = kSuperopQubitCap);

/// unvec(exp(T * L_hat) vec(rho)); output validated as a density matrix
/// within 1e-8.
DensityMatrix exact_propagate(const LindbladSpec& spec, const DensityMatrix& rho,
                              double T, int cap = kSuperopQubitCap);

/// sum_k beta_0k + sum_mu (sum_k beta_muk)^2
double pauli_norm(const LindbladSpec& spec);
double pauli_norm_dissipator(const std::vector<JumpSpec>& jumps);

/// Positive-coefficient phased-Pauli expansion of an arbitrary matrix;
/// terms with magnitude <= drop_tol are dropped.
std::vector<PauliTerm> pauli_decompose(int n_qubits, const ComplexMatrix& m,
                                       double drop_tol = 1e-14);

struct DiamondBounds {
  double lower;  // ||C||_1 / 2^n  <= ||Phi||_diamond
  double upper;  // ||Phi||_diamond <= ||C||_1
};

/// Two-sided Choi estimate of the diamond norm of a Hermiticity-preserving
/// map. Throws std::invalid_argument if the Choi matrix is not Hermitian
/// within herm_tol.
DiamondBounds diamond_bounds(const Superoperator& delta,
                             double herm_tol = 1e-8);

}  // namespace lindsim
