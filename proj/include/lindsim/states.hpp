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
#include <string>
#include <vector>

#include "lindsim/complex_matrix.hpp"
#include "lindsim/pauli.hpp"

namespace lindsim {

/// Pure state on n qubits; squared norm stays within 1e-10 of 1.
class StateVector {
 public:
  explicit StateVector(int n_qubits);  // |0...0>
  StateVector(int n_qubits, std::vector<cplx> amplitudes);

  static StateVector basis_state(int n_qubits, std::uint64_t index);
  // Label like "010": qubit 0 is the leftmost character.
  static StateVector basis_state(int n_qubits, const std::string& bits);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  cplx amplitude(std::size_t i) const { return amps_[i]; }

  void validate(double tol = 1e-10) const;

  void apply_pauli(const PauliString& p);
  // exp(-i * theta * P) for a Hermitian Pauli string (phase +1 or -1).
  void apply_pauli_rotation(const PauliString& p, double theta);
  void apply_unitary(const ComplexMatrix& u);

  cplx inner_product(const StateVector& other) const;  // <this|other>
  // <psi| coeff*P |psi>, real part (P expected Hermitian).
  double expectation_pauli(const PauliString& p) const;

 private:
  int n_qubits_;
  std::vector<cplx> amps_;
};

/// Mixed state on n qubits: Hermitian, unit trace, PSD (all within 1e-10
/// unless a looser tolerance is passed explicitly).
class DensityMatrix {
 public:
  DensityMatrix(int n_qubits, ComplexMatrix m, double tol = 1e-10);

  static DensityMatrix from_statevector(const StateVector& psi);
  static DensityMatrix basis_state(int n_qubits, std::uint64_t index);
  static DensityMatrix maximally_mixed(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }

  void validate(double tol = 1e-10) const;

  DensityMatrix conjugate_pauli(const PauliString& p) const;  // P rho P^dag
  DensityMatrix apply_unitary(const ComplexMatrix& u) const;  // U rho U^dag

  double expectation(const ComplexMatrix& observable) const;  // Re tr(O rho)

 private:
  int n_qubits_;
  ComplexMatrix m_;
};

}  // namespace lindsim
