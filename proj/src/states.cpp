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

#include "lindsim/states.hpp"

#include <cmath>
#include <stdexcept>

#include "lindsim/hermitian_eig.hpp"

namespace lindsim {

StateVector::StateVector(int n_qubits)
    : n_qubits_(n_qubits), amps_(std::size_t(1) << n_qubits, cplx(0.0, 0.0)) {
  if (n_qubits < 1 || n_qubits > 30) {
    throw std::invalid_argument("StateVector: unsupported qubit count");
  }
  amps_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, std::vector<cplx> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  if (amps_.size() != (std::size_t(1) << n_qubits)) {
    throw std::invalid_argument("StateVector: amplitude count != 2^n");
  }
  validate();
}

StateVector StateVector::basis_state(int n_qubits, std::uint64_t index) {
  StateVector psi(n_qubits);
  if (index >= psi.dim()) {
    throw std::invalid_argument("basis_state: index out of range");
  }
  psi.amps_[0] = 0.0;
  psi.amps_[index] = 1.0;
  return psi;
}

StateVector StateVector::basis_state(int n_qubits, const std::string& bits) {
  if (static_cast<int>(bits.size()) != n_qubits) {
    throw std::invalid_argument("basis_state: label length != n_qubits");
  }
  std::uint64_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("basis_state: label must be 0/1 characters");
    }
    index = (index << 1) | std::uint64_t(c - '0');
  }
  return basis_state(n_qubits, index);
}

void StateVector::validate(double tol) const {
  double norm2 = 0.0;
  for (const auto& a : amps_) norm2 += std::norm(a);
  if (std::abs(norm2 - 1.0) > tol) {
    throw std::invalid_argument("StateVector: norm deviates from 1");
  }
}

void StateVector::apply_pauli(const PauliString& p) {
  if (p.n_qubits() != n_qubits_) {
    throw std::invalid_argument("apply_pauli: qubit count mismatch");
  }
  const std::uint64_t x = p.x_mask();
  std::vector<cplx> out(amps_.size());
  for (std::uint64_t a = 0; a < amps_.size(); ++a) {
    const std::uint64_t src = a ^ x;
    out[a] = p.basis_coeff(src) * amps_[src];
  }
  amps_ = std::move(out);
}

void StateVector::apply_pauli_rotation(const PauliString& p, double theta) {
  if (std::abs(std::imag(p.phase())) > 1e-12) {
    throw std::invalid_argument("apply_pauli_rotation: non-Hermitian string");
  }
  // exp(-i theta P) psi = cos(theta) psi - i sin(theta) P psi
  StateVector ppsi = *this;
  ppsi.apply_pauli(p);
  const double c = std::cos(theta);
  const cplx mis(0.0, -std::sin(theta));
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    amps_[i] = c * amps_[i] + mis * ppsi.amps_[i];
  }
}

void StateVector::apply_unitary(const ComplexMatrix& u) {
  if (u.rows() != dim() || u.cols() != dim()) {
    throw std::invalid_argument("apply_unitary: shape mismatch");
  }
  amps_ = u.apply(amps_);
}

cplx StateVector::inner_product(const StateVector& other) const {
  if (other.dim() != dim()) {
    throw std::invalid_argument("inner_product: dimension mismatch");
  }
  cplx s(0.0, 0.0);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    s += std::conj(amps_[i]) * other.amps_[i];
  }
  return s;
}

double StateVector::expectation_pauli(const PauliString& p) const {
  StateVector ppsi = *this;
  ppsi.apply_pauli(p);
  return std::real(inner_product(ppsi));
}

DensityMatrix::DensityMatrix(int n_qubits, ComplexMatrix m, double tol)
    : n_qubits_(n_qubits), m_(std::move(m)) {
  const std::size_t d = std::size_t(1) << n_qubits;
  if (m_.rows() != d || m_.cols() != d) {
    throw std::invalid_argument("DensityMatrix: matrix is not 2^n x 2^n");
  }
  validate(tol);
}

DensityMatrix DensityMatrix::from_statevector(const StateVector& psi) {
  const std::size_t d = psi.dim();
  ComplexMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      m(i, j) = psi.amplitude(i) * std::conj(psi.amplitude(j));
    }
  }
  return DensityMatrix(psi.n_qubits(), std::move(m));
}

DensityMatrix DensityMatrix::basis_state(int n_qubits, std::uint64_t index) {
  return from_statevector(StateVector::basis_state(n_qubits, index));
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  const std::size_t d = std::size_t(1) << n_qubits;
  ComplexMatrix m = ComplexMatrix::identity(d);
  m *= cplx(1.0 / static_cast<double>(d), 0.0);
  return DensityMatrix(n_qubits, std::move(m));
}

void DensityMatrix::validate(double tol) const {
  if (!m_.is_hermitian(tol)) {
    throw std::invalid_argument("DensityMatrix: not Hermitian within tol");
  }
  if (std::abs(m_.trace() - cplx(1.0, 0.0)) > tol) {
    throw std::invalid_argument("DensityMatrix: trace deviates from 1");
  }
  const auto eigs = hermitian_eigenvalues(m_);
  if (!eigs.empty() && eigs.front() < -tol) {
    throw std::invalid_argument("DensityMatrix: negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::conjugate_pauli(const PauliString& p) const {
  if (p.n_qubits() != n_qubits_) {
    throw std::invalid_argument("conjugate_pauli: qubit count mismatch");
  }
  const std::uint64_t x = p.x_mask();
  const std::size_t d = dim();
  ComplexMatrix out(d, d);
  for (std::uint64_t a = 0; a < d; ++a) {
    const cplx ca = p.basis_coeff(a ^ x);
    for (std::uint64_t b = 0; b < d; ++b) {
      out(a, b) = ca * std::conj(p.basis_coeff(b ^ x)) * m_(a ^ x, b ^ x);
    }
  }
  return DensityMatrix(n_qubits_, std::move(out));
}

DensityMatrix DensityMatrix::apply_unitary(const ComplexMatrix& u) const {
  if (u.rows() != dim() || u.cols() != dim()) {
    throw std::invalid_argument("apply_unitary: shape mismatch");
  }
  return DensityMatrix(n_qubits_, u * m_ * u.adjoint());
}

double DensityMatrix::expectation(const ComplexMatrix& observable) const {
  if (observable.rows() != dim() || observable.cols() != dim()) {
    throw std::invalid_argument("expectation: shape mismatch");
  }
  cplx t(0.0, 0.0);
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t k = 0; k < dim(); ++k) {
      t += observable(i, k) * m_(k, i);
    }
  }
  return std::real(t);
}

}  // namespace lindsim
