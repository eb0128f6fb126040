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

#include <variant>

#include "lindsim/complex_matrix.hpp"
#include "lindsim/pauli.hpp"
#include "lindsim/states.hpp"

namespace lindsim {

/// A unitary payload: either a phased Pauli string (composed symbolically, so
/// implementation cost never grows with composition depth) or an explicit
/// dense unitary.
class UnitaryOp {
 public:
  explicit UnitaryOp(PauliString p);
  UnitaryOp(int n_qubits, ComplexMatrix u, double tol = 1e-10);

  int n_qubits() const { return n_; }
  bool is_pauli() const { return std::holds_alternative<PauliString>(op_); }
  const PauliString& pauli() const;

  ComplexMatrix to_matrix() const;
  void apply_to(StateVector& psi) const;
  DensityMatrix conjugate(const DensityMatrix& rho) const;  // U rho U^dag
  ComplexMatrix conjugate_raw(const ComplexMatrix& m) const;

  // (*this) applied after `first`; Pauli-Pauli stays symbolic.
  UnitaryOp compose_after(const UnitaryOp& first) const;

 private:
  int n_;
  std::variant<PauliString, ComplexMatrix> op_;
};

/// Jump operator in unitary form: L = alpha * U.
struct UnitaryJumpForm {
  cplx alpha;
  UnitaryOp u;
};

}  // namespace lindsim
