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

#include "lindsim/hermitian_eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lindsim {

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  const std::size_t n = a.rows();
  double s = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      s += std::norm(a(p, q));
    }
  }
  return std::sqrt(s);
}

HermitianEig jacobi(const ComplexMatrix& input, bool want_vectors) {
  if (!input.is_square()) {
    throw std::invalid_argument("hermitian_eig: non-square matrix");
  }
  const std::size_t n = input.rows();

  // Work on the Hermitian part; diagonal imaginary parts are dropped.
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = cplx(std::real(input(i, i)), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx v = 0.5 * (input(i, j) + std::conj(input(j, i)));
      a(i, j) = v;
      a(j, i) = std::conj(v);
    }
  }

  ComplexMatrix v;
  if (want_vectors) v = ComplexMatrix::identity(n);

  const double scale = std::max(a.frobenius_norm(), 1e-300);
  constexpr int kMaxSweeps = 64;
  constexpr double kTol = 1e-15;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= kTol * scale) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= 1e-300) continue;
        const cplx phase = apq / mag;  // a(p,q) = mag * phase

        const double app = std::real(a(p, p));
        const double aqq = std::real(a(q, q));
        const double tau = (aqq - app) / (2.0 * mag);
        double t;
        if (tau >= 0.0) {
          t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
        } else {
          t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // Unitary plane rotation G = [[c, s], [-s*conj(phase), c*conj(phase)]]
        // on the (p, q) plane; zeroes the rotated (p, q) entry.
        const cplx s_phibar = s * std::conj(phase);
        const cplx c_phibar = c * std::conj(phase);
        const cplx s_phi = s * phase;
        const cplx c_phi = c * phase;
        // Column update: A <- A * G
        for (std::size_t i = 0; i < n; ++i) {
          const cplx aip = a(i, p);
          const cplx aiq = a(i, q);
          a(i, p) = c * aip - s_phibar * aiq;
          a(i, q) = s * aip + c_phibar * aiq;
        }
        // Row update: A <- G^dagger * A
        for (std::size_t j = 0; j < n; ++j) {
          const cplx apj = a(p, j);
          const cplx aqj = a(q, j);
          a(p, j) = c * apj - s_phi * aqj;
          a(q, j) = s * apj + c_phi * aqj;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = cplx(std::real(a(p, p)), 0.0);
        a(q, q) = cplx(std::real(a(q, q)), 0.0);

        if (want_vectors) {
          for (std::size_t i = 0; i < n; ++i) {
            const cplx vip = v(i, p);
            const cplx viq = v(i, q);
            v(i, p) = c * vip - s_phibar * viq;
            v(i, q) = s * vip + c_phibar * viq;
          }
        }
      }
    }
  }

  HermitianEig out;
  out.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.eigenvalues[i] = std::real(a(i, i));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (out.eigenvalues[x] != out.eigenvalues[y]) {
      return out.eigenvalues[x] < out.eigenvalues[y];
    }
    return x < y;
  });

  std::vector<double> sorted(n);
  for (std::size_t i = 0; i < n; ++i) sorted[i] = out.eigenvalues[order[i]];
  out.eigenvalues = std::move(sorted);

  if (want_vectors) {
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        out.eigenvectors(i, j) = v(i, order[j]);
      }
    }
  }
  return out;
}

}  // namespace

HermitianEig hermitian_eig(const ComplexMatrix& a) { return jacobi(a, true); }

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a) {
  return jacobi(a, false).eigenvalues;
}

double trace_norm_hermitian(const ComplexMatrix& a) {
  double s = 0.0;
  for (double e : hermitian_eigenvalues(a)) s += std::abs(e);
  return s;
}

}  // namespace lindsim
