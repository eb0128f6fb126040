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

#include "lindsim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lindsim/hermitian_eig.hpp"

namespace lindsim {

ComplexMatrix matrix_exp(const ComplexMatrix& a, cplx scale) {
  if (!a.is_square()) {
    throw std::invalid_argument("matrix_exp: non-square matrix");
  }
  const std::size_t n = a.rows();
  ComplexMatrix b = a;
  b *= scale;

  int squarings = 0;
  double norm = b.inf_norm();
  while (norm > 0.5 && squarings < 64) {
    norm *= 0.5;
    ++squarings;
  }
  b *= cplx(std::ldexp(1.0, -squarings), 0.0);

  ComplexMatrix result = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k <= 16; ++k) {
    term = term * b;
    term *= cplx(1.0 / static_cast<double>(k), 0.0);
    result += term;
  }
  for (int s = 0; s < squarings; ++s) {
    result = result * result;
  }
  return result;
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep) {
  const int n = rho.n_qubits();
  if (keep.empty()) {
    throw std::invalid_argument("partial_trace: keep set is empty");
  }
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw std::invalid_argument("partial_trace: duplicate qubit in keep set");
  }
  if (kept.front() < 0 || kept.back() >= n) {
    throw std::invalid_argument("partial_trace: qubit index out of range");
  }

  std::vector<int> traced;
  {
    std::size_t ki = 0;
    for (int q = 0; q < n; ++q) {
      if (ki < kept.size() && kept[ki] == q) {
        ++ki;
      } else {
        traced.push_back(q);
      }
    }
  }

  const int nk = static_cast<int>(kept.size());
  const int nt = static_cast<int>(traced.size());
  const std::size_t dk = std::size_t(1) << nk;
  const std::size_t dt = std::size_t(1) << nt;

  // Map a compact index over a qubit subset to the full-index bits. Qubit q
  // occupies full-index bit (n - 1 - q); compact qubit order is ascending.
  auto scatter = [n](const std::vector<int>& qubits, std::size_t compact) {
    std::size_t full = 0;
    const int m = static_cast<int>(qubits.size());
    for (int i = 0; i < m; ++i) {
      const std::size_t bit = (compact >> (m - 1 - i)) & 1u;
      full |= bit << (n - 1 - qubits[i]);
    }
    return full;
  };

  ComplexMatrix out(dk, dk);
  for (std::size_t i = 0; i < dk; ++i) {
    const std::size_t fi = scatter(kept, i);
    for (std::size_t j = 0; j < dk; ++j) {
      const std::size_t fj = scatter(kept, j);
      cplx s(0.0, 0.0);
      for (std::size_t t = 0; t < dt; ++t) {
        const std::size_t ft = scatter(traced, t);
        s += rho.matrix()(fi | ft, fj | ft);
      }
      out(i, j) = s;
    }
  }
  return DensityMatrix(nk, std::move(out));
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw std::invalid_argument("trace_distance: dimension mismatch");
  }
  ComplexMatrix diff = rho.matrix() - sigma.matrix();
  return 0.5 * trace_norm_hermitian(diff);
}

}  // namespace lindsim
