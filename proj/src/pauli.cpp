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

#include "lindsim/pauli.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "lindsim/errors.hpp"

namespace lindsim {

namespace {

const cplx kI(0.0, 1.0);

// single_product[a][b] = (factor, letter) with sigma_a * sigma_b = factor * sigma_letter
struct SingleProduct {
  cplx factor;
  Pauli letter;
};

SingleProduct single_product(Pauli a, Pauli b) {
  if (a == Pauli::I) return {1.0, b};
  if (b == Pauli::I) return {1.0, a};
  if (a == b) return {1.0, Pauli::I};
  switch (a) {
    case Pauli::X:
      return (b == Pauli::Y) ? SingleProduct{kI, Pauli::Z}
                             : SingleProduct{-kI, Pauli::Y};  // X*Z
    case Pauli::Y:
      return (b == Pauli::Z) ? SingleProduct{kI, Pauli::X}
                             : SingleProduct{-kI, Pauli::Z};  // Y*X
    default:
      return (b == Pauli::X) ? SingleProduct{kI, Pauli::Y}
                             : SingleProduct{-kI, Pauli::X};  // Z*Y
  }
}

}  // namespace

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    default: return 'Z';
  }
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default:
      throw ParseError(std::string("invalid Pauli letter '") + c +
                       "' (expected one of I, X, Y, Z)");
  }
}

PauliString::PauliString(std::vector<Pauli> letters, cplx phase)
    : letters_(std::move(letters)), phase_(phase) {
  if (letters_.empty()) {
    throw std::invalid_argument("PauliString: needs at least one qubit");
  }
  const double m = std::abs(phase_);
  if (std::abs(m - 1.0) > 1e-12) {
    throw std::invalid_argument("PauliString: phase must have unit modulus");
  }
}

PauliString PauliString::parse(const std::string& s, cplx phase) {
  std::vector<Pauli> letters;
  letters.reserve(s.size());
  for (char c : s) letters.push_back(pauli_from_char(c));
  return PauliString(std::move(letters), phase);
}

PauliString PauliString::identity(int n_qubits) {
  return PauliString(std::vector<Pauli>(n_qubits, Pauli::I));
}

PauliString PauliString::single(int n_qubits, int qubit, Pauli p) {
  if (qubit < 0 || qubit >= n_qubits) {
    throw std::invalid_argument("PauliString::single: qubit out of range");
  }
  std::vector<Pauli> letters(n_qubits, Pauli::I);
  letters[qubit] = p;
  return PauliString(std::move(letters));
}

std::string PauliString::letters_str() const {
  std::string s;
  s.reserve(letters_.size());
  for (Pauli p : letters_) s.push_back(pauli_char(p));
  return s;
}

bool PauliString::is_identity_letters() const {
  for (Pauli p : letters_) {
    if (p != Pauli::I) return false;
  }
  return true;
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (n_qubits() != other.n_qubits()) {
    throw std::invalid_argument("commutes_with: qubit count mismatch");
  }
  int anti = 0;
  for (int q = 0; q < n_qubits(); ++q) {
    const Pauli a = letters_[q];
    const Pauli b = other.letters_[q];
    if (a != Pauli::I && b != Pauli::I && a != b) ++anti;
  }
  return (anti % 2) == 0;
}

PauliString PauliString::operator*(const PauliString& other) const {
  if (n_qubits() != other.n_qubits()) {
    throw std::invalid_argument("PauliString product: qubit count mismatch");
  }
  std::vector<Pauli> letters(letters_.size());
  cplx phase = phase_ * other.phase_;
  for (std::size_t q = 0; q < letters_.size(); ++q) {
    const auto prod = single_product(letters_[q], other.letters_[q]);
    letters[q] = prod.letter;
    phase *= prod.factor;
  }
  return PauliString(std::move(letters), phase);
}

const ComplexMatrix& pauli_matrix_1q(Pauli p) {
  static const std::array<ComplexMatrix, 4> mats = [] {
    std::array<ComplexMatrix, 4> m{ComplexMatrix(2, 2), ComplexMatrix(2, 2),
                                   ComplexMatrix(2, 2), ComplexMatrix(2, 2)};
    m[0](0, 0) = 1.0;
    m[0](1, 1) = 1.0;
    m[1](0, 1) = 1.0;
    m[1](1, 0) = 1.0;
    m[2](0, 1) = -kI;
    m[2](1, 0) = kI;
    m[3](0, 0) = 1.0;
    m[3](1, 1) = -1.0;
    return m;
  }();
  return mats[static_cast<std::size_t>(p)];
}

ComplexMatrix PauliString::to_matrix() const {
  ComplexMatrix out = pauli_matrix_1q(letters_[0]);
  for (std::size_t q = 1; q < letters_.size(); ++q) {
    out = kron(out, pauli_matrix_1q(letters_[q]));
  }
  out *= phase_;
  return out;
}

std::uint64_t PauliString::x_mask() const {
  const int n = n_qubits();
  std::uint64_t mask = 0;
  for (int q = 0; q < n; ++q) {
    if (letters_[q] == Pauli::X || letters_[q] == Pauli::Y) {
      mask |= std::uint64_t(1) << (n - 1 - q);
    }
  }
  return mask;
}

cplx PauliString::basis_coeff(std::uint64_t b) const {
  const int n = n_qubits();
  cplx coeff = phase_;
  for (int q = 0; q < n; ++q) {
    const int bit = static_cast<int>((b >> (n - 1 - q)) & 1u);
    switch (letters_[q]) {
      case Pauli::I:
      case Pauli::X:
        break;
      case Pauli::Y:
        coeff *= (bit == 0) ? kI : -kI;
        break;
      case Pauli::Z:
        if (bit == 1) coeff = -coeff;
        break;
    }
  }
  return coeff;
}

bool PauliString::operator==(const PauliString& other) const {
  return letters_ == other.letters_ &&
         std::abs(phase_ - other.phase_) < 1e-12;
}

ComplexMatrix pauli_to_matrix(const PauliString& p) { return p.to_matrix(); }

}  // namespace lindsim
