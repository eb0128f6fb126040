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

#include "lindsim/kernels.hpp"

#include <algorithm>
#include <cstdint>

namespace lindsim::kernels {

namespace {
// Below this many output elements the parallel-for fork costs more than the
// arithmetic it saves.
constexpr std::size_t kParallelThreshold = 64 * 64;
}  // namespace

void matmul(cplx* c, const cplx* a, const cplx* b,
            std::size_t m, std::size_t k, std::size_t n) {
  const std::int64_t rows = static_cast<std::int64_t>(m);
#pragma omp parallel for schedule(static) if (m * n >= kParallelThreshold)
  for (std::int64_t i = 0; i < rows; ++i) {
    cplx* crow = c + static_cast<std::size_t>(i) * n;
    std::fill(crow, crow + n, cplx(0.0, 0.0));
    const cplx* arow = a + static_cast<std::size_t>(i) * k;
    for (std::size_t kk = 0; kk < k; ++kk) {
      const cplx aik = arow[kk];
      const cplx* brow = b + kk * n;
      for (std::size_t j = 0; j < n; ++j) {
        crow[j] += aik * brow[j];
      }
    }
  }
}

void matvec(cplx* y, const cplx* a, const cplx* x,
            std::size_t m, std::size_t n) {
  const std::int64_t rows = static_cast<std::int64_t>(m);
#pragma omp parallel for schedule(static) if (m * n >= kParallelThreshold)
  for (std::int64_t i = 0; i < rows; ++i) {
    const cplx* arow = a + static_cast<std::size_t>(i) * n;
    cplx acc(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      acc += arow[j] * x[j];
    }
    y[static_cast<std::size_t>(i)] = acc;
  }
}

void kron(cplx* c, const cplx* a, std::size_t ar, std::size_t ac,
          const cplx* b, std::size_t br, std::size_t bc) {
  const std::size_t cols = ac * bc;
  const std::int64_t rows = static_cast<std::int64_t>(ar * br);
#pragma omp parallel for schedule(static) if (ar * br * cols >= kParallelThreshold)
  for (std::int64_t row = 0; row < rows; ++row) {
    const std::size_t ia = static_cast<std::size_t>(row) / br;
    const std::size_t ib = static_cast<std::size_t>(row) % br;
    cplx* crow = c + static_cast<std::size_t>(row) * cols;
    const cplx* arow = a + ia * ac;
    const cplx* brow = b + ib * bc;
    for (std::size_t ja = 0; ja < ac; ++ja) {
      const cplx av = arow[ja];
      for (std::size_t jb = 0; jb < bc; ++jb) {
        crow[ja * bc + jb] = av * brow[jb];
      }
    }
  }
}

namespace serial {

void matmul(cplx* c, const cplx* a, const cplx* b,
            std::size_t m, std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    cplx* crow = c + i * n;
    std::fill(crow, crow + n, cplx(0.0, 0.0));
    const cplx* arow = a + i * k;
    for (std::size_t kk = 0; kk < k; ++kk) {
      const cplx aik = arow[kk];
      const cplx* brow = b + kk * n;
      for (std::size_t j = 0; j < n; ++j) {
        crow[j] += aik * brow[j];
      }
    }
  }
}

void matvec(cplx* y, const cplx* a, const cplx* x,
            std::size_t m, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    const cplx* arow = a + i * n;
    cplx acc(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      acc += arow[j] * x[j];
    }
    y[i] = acc;
  }
}

void kron(cplx* c, const cplx* a, std::size_t ar, std::size_t ac,
          const cplx* b, std::size_t br, std::size_t bc) {
  const std::size_t cols = ac * bc;
  for (std::size_t row = 0; row < ar * br; ++row) {
    const std::size_t ia = row / br;
    const std::size_t ib = row % br;
    cplx* crow = c + row * cols;
    const cplx* arow = a + ia * ac;
    const cplx* brow = b + ib * bc;
    for (std::size_t ja = 0; ja < ac; ++ja) {
      const cplx av = arow[ja];
      for (std::size_t jb = 0; jb < bc; ++jb) {
        crow[ja * bc + jb] = av * brow[jb];
      }
    }
  }
}

}  // namespace serial

}  // namespace lindsim::kernels
