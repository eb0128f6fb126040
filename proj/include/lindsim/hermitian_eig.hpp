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

#include <vector>

#include "lindsim/complex_matrix.hpp"

namespace lindsim {

struct HermitianEig {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // columns, matching order
};

// Cyclic complex Jacobi diagonalization. Input must be Hermitian; the strict
// upper triangle is mirrored from the lower one, so tiny asymmetries from
// accumulated roundoff are tolerated. Fully deterministic (fixed sweep order,
// no threading), which the reproducibility contract relies on.
HermitianEig hermitian_eig(const ComplexMatrix& a);

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a);

// Sum of |eigenvalue|, i.e. the trace norm of a Hermitian matrix.
double trace_norm_hermitian(const ComplexMatrix& a);

}  // namespace lindsim
