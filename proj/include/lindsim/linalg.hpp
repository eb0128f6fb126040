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
#include "lindsim/states.hpp"

namespace lindsim {

/// exp(scale * a) by scaling-and-squaring: halve until the infinity norm is
/// <= 0.5, run a degree-16 Taylor series, then square back up.
ComplexMatrix matrix_exp(const ComplexMatrix& a, cplx scale = 1.0);

/// Trace out every qubit not in `keep` (a nonempty, duplicate-free subset of
/// {0..n-1}); the result orders the kept qubits ascending.
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep);

/// (1/2) * sum of singular values of rho - sigma.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace lindsim
