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

namespace lindsim {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);  // throws ParseError on anything but I/X/Y/Z

/// A phased n-qubit Pauli operator: phase * (sigma_1 (x) ... (x) sigma_n).
/// Qubit 0 is the leftmost letter and the most significant index bit.
/// Always unitary; composition stays inside the phased Pauli group.
class PauliString {
 public:
  PauliString(std::vector<Pauli> letters, cplx phase = 1.0);

  static PauliString parse(const std::string& s, cplx phase = 1.0);
  static PauliString identity(int n_qubits);
  // Single non-identity letter at `qubit`, identities elsewhere.
  static PauliString single(int n_qubits, int qubit, Pauli p);

  int n_qubits() const { return static_cast<int>(letters_.size()); }
  const std::vector<Pauli>& letters() const { return letters_; }
  cplx phase() const { return phase_; }
  std::string letters_str() const;

  bool is_identity_letters() const;  // all letters I (phase ignored)
  bool commutes_with(const PauliString& other) const;

  // Matrix-product composition: (a * b).to_matrix() == a.to_matrix() * b.to_matrix()
  PauliString operator*(const PauliString& other) const;

  ComplexMatrix to_matrix() const;

  // Basis action P|b> = basis_coeff(b) |b ^ x_mask()>.
  std::uint64_t x_mask() const;
  cplx basis_coeff(std::uint64_t b) const;

  bool operator==(const PauliString& other) const;

 private:
  std::vector<Pauli> letters_;
  cplx phase_;
};

/// pauli_to_matrix(p) = p.phase * kron of single-qubit Paulis.
ComplexMatrix pauli_to_matrix(const PauliString& p);

// 2x2 constants.
const ComplexMatrix& pauli_matrix_1q(Pauli p);

}  // namespace lindsim
