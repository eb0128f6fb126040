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

#include <complex>
#include <cstddef>

namespace lindsim::kernels {

using cplx = std::complex<double>;

// OpenMP kernels. Every output element is written by exactly one thread and
// accumulated in a fixed k-order, so results are bitwise identical to the
// serial reference for any thread count.

// c[m x n] = a[m x k] * b[k x n], row-major.
void matmul(cplx* c, const cplx* a, const cplx* b,
            std::size_t m, std::size_t k, std::size_t n);

// y[m] = a[m x n] * x[n]
void matvec(cplx* y, const cplx* a, const cplx* x,
            std::size_t m, std::size_t n);

// c[(ar*br) x (ac*bc)] = a (x) b
void kron(cplx* c, const cplx* a, std::size_t ar, std::size_t ac,
          const cplx* b, std::size_t br, std::size_t bc);

namespace serial {

// Reference implementations: same loop structure, no pragmas. Kept for the
// kernel tests and the serial/parallel benchmark.
void matmul(cplx* c, const cplx* a, const cplx* b,
            std::size_t m, std::size_t k, std::size_t n);
void matvec(cplx* y, const cplx* a, const cplx* x,
            std::size_t m, std::size_t n);
void kron(cplx* c, const cplx* a, std::size_t ar, std::size_t ac,
          const cplx* b, std::size_t br, std::size_t bc);

}  // namespace serial

}  // namespace lindsim::kernels
