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

#include "lindsim/unitary_op.hpp"

#include <stdexcept>

namespace lindsim {

UnitaryOp::UnitaryOp(PauliString p) : n_(p.n_qubits()), op_(std::move(p)) {}

UnitaryOp::UnitaryOp(int n_qubits, ComplexMatrix u, double tol)
    : n_(n_qubits), op_(std::move(u)) {
  const auto& m = std::get<ComplexMatrix>(op_);
  const std::size_t d = std::size_t(1) << n_qubits;
  if (m.rows() != d || m.cols() != d) {
    throw std::invalid_argument("UnitaryOp: matrix is not 2^n x 2^n");
  }
  if (!m.is_unitary(tol)) {
    throw std::invalid_argument("UnitaryOp: matrix is not unitary within tol");
  }
}

const PauliString& UnitaryOp::pauli() const {
  if (!is_pauli()) {
    throw std::invalid_argument("UnitaryOp: not a Pauli payload");
  }
  return std::get<PauliString>(op_);
}

ComplexMatrix UnitaryOp::to_matrix() const {
  if (is_pauli()) return std::get<PauliString>(op_).to_matrix();
  return std::get<ComplexMatrix>(op_);
}

void UnitaryOp::apply_to(StateVector& psi) const {
  if (is_pauli()) {
    psi.apply_pauli(std::get<PauliString>(op_));
  } else {
    psi.apply_unitary(std::get<ComplexMatrix>(op_));
  }
}

DensityMatrix UnitaryOp::conjugate(const DensityMatrix& rho) const {
  if (is_pauli()) return rho.conjugate_pauli(std::get<PauliString>(op_));
  return rho.apply_unitary(std::get<ComplexMatrix>(op_));
}

ComplexMatrix UnitaryOp::conjugate_raw(const ComplexMatrix& m) const {
  const std::size_t d = std::size_t(1) << n_;
  if (m.rows() != d || m.cols() != d) {
    throw std::invalid_argument("conjugate_raw: dimension mismatch");
  }
  if (!is_pauli()) {
    const auto& u = std::get<ComplexMatrix>(op_);
    return u * m * u.adjoint();
  }
  const auto& p = std::get<PauliString>(op_);
  const std::uint64_t x = p.x_mask();
  ComplexMatrix out(d, d);
  for (std::uint64_t a = 0; a < d; ++a) {
    const cplx ca = p.basis_coeff(a ^ x);
    for (std::uint64_t b = 0; b < d; ++b) {
      out(a, b) = ca * std::conj(p.basis_coeff(b ^ x)) * m(a ^ x, b ^ x);
    }
  }
  return out;
}

UnitaryOp UnitaryOp::compose_after(const UnitaryOp& first) const {
  if (n_ != first.n_) {
    throw std::invalid_argument("UnitaryOp composition: qubit count mismatch");
  }
  if (is_pauli() && first.is_pauli()) {
    return UnitaryOp(std::get<PauliString>(op_) *
                     std::get<PauliString>(first.op_));
  }
  return UnitaryOp(n_, to_matrix() * first.to_matrix());
}

}  // namespace lindsim
