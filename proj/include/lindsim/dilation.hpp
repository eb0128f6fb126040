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
#include "lindsim/states.hpp"

namespace lindsim {

/// K0 = diag(1, sqrt(1-p)), K1 = sqrt(p) |0><1|.
std::vector<ComplexMatrix> amplitude_damping_kraus(double p);

/// Unitary V on ancilla (x) system (ancilla-major index a*d + s) whose first
/// block column stacks the Kraus operators: V(|0>_anc (x) |psi>) =
/// sum_j |j>_anc (x) K_j |psi>. Completed by Gram-Schmidt over standard
/// basis vectors, so the result is deterministic.
ComplexMatrix stinespring_unitary(const std::vector<ComplexMatrix>& kraus,
                                  std::size_t ancilla_dim);

/// Single-qubit channel as a Kraus list; trace preservation checked to 1e-10.
class LocalChannel {
 public:
  explicit LocalChannel(std::vector<ComplexMatrix> kraus);
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

 private:
  std::vector<ComplexMatrix> kraus_;
};

enum class LocalNoiseMode {
  Kraus,     // direct Kraus sums qubit by qubit
  Dilation,  // one reusable ancilla, Stinespring unitary, trace out, reset
};

/// Apply per-qubit channels (nullopt = identity on that qubit) in ascending
/// qubit order. Both modes agree to 1e-10; Dilation appends a single ancilla
/// qubit, conjugates by the embedded Stinespring unitary, and traces it out
/// again between qubits.
DensityMatrix apply_local_noise(
    const DensityMatrix& rho,
    const std::vector<std::optional<LocalChannel>>& per_qubit,
    LocalNoiseMode mode);

/// Embed an operator acting on the ordered qubit subset `qubits` into the
/// full n-qubit space.
ComplexMatrix embed_operator(const ComplexMatrix& u,
                             const std::vector<int>& qubits, int n_total);

}  // namespace lindsim
