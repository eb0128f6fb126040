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

#include "lindsim/dilation.hpp"

#include <cmath>
#include <stdexcept>

#include "lindsim/linalg.hpp"

namespace lindsim {

std::vector<ComplexMatrix> amplitude_damping_kraus(double p) {
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument(
        "amplitude_damping_kraus: p must lie in [0, 1]");
  }
  ComplexMatrix k0(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - p);
  ComplexMatrix k1(2, 2);
  k1(0, 1) = std::sqrt(p);
  return {std::move(k0), std::move(k1)};
}

namespace {

void check_completeness(const std::vector<ComplexMatrix>& kraus,
                        std::size_t d) {
  ComplexMatrix acc(d, d);
  for (const auto& k : kraus) {
    if (k.rows() != d || k.cols() != d) {
      throw std::invalid_argument("Kraus operators must be square and equal "
                                  "sized");
    }
    acc += k.adjoint() * k;
  }
  acc -= ComplexMatrix::identity(d);
  if (acc.max_abs() > 1e-10) {
    throw std::invalid_argument(
        "Kraus set is not trace preserving (sum K^dag K != I within 1e-10)");
  }
}

}  // namespace

ComplexMatrix stinespring_unitary(const std::vector<ComplexMatrix>& kraus,
                                  std::size_t ancilla_dim) {
  if (kraus.empty()) {
    throw std::invalid_argument("stinespring_unitary: empty Kraus set");
  }
  if (kraus.size() > ancilla_dim) {
    throw std::invalid_argument(
        "stinespring_unitary: more Kraus operators than the ancilla holds");
  }
  const std::size_t d = kraus.front().rows();
  check_completeness(kraus, d);

  const std::size_t big = d * ancilla_dim;
  ComplexMatrix v(big, big);
  // Isometry block: column s holds sum_j |j>_anc (x) K_j |s>.
  for (std::size_t j = 0; j < kraus.size(); ++j) {
    for (std::size_t row = 0; row < d; ++row) {
      for (std::size_t s = 0; s < d; ++s) {
        v(j * d + row, s) = kraus[j](row, s);
      }
    }
  }

  // Complete with orthonormal vectors drawn from the standard basis.
  std::size_t next_col = d;
  for (std::size_t cand = 0; cand < big && next_col < big; ++cand) {
    std::vector<cplx> w(big, cplx(0.0, 0.0));
    w[cand] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t c = 0; c < next_col; ++c) {
        cplx overlap(0.0, 0.0);
        for (std::size_t i = 0; i < big; ++i) {
          overlap += std::conj(v(i, c)) * w[i];
        }
        for (std::size_t i = 0; i < big; ++i) {
          w[i] -= overlap * v(i, c);
        }
      }
    }
    double norm2 = 0.0;
    for (const auto& x : w) norm2 += std::norm(x);
    if (norm2 < 1e-12) continue;
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t i = 0; i < big; ++i) v(i, next_col) = w[i] * inv;
    ++next_col;
  }
  if (next_col != big) {
    throw std::invalid_argument("stinespring_unitary: completion failed");
  }
  if (!v.is_unitary(1e-10)) {
    throw std::invalid_argument("stinespring_unitary: completion is not "
                                "unitary within 1e-10");
  }
  return v;
}

LocalChannel::LocalChannel(std::vector<ComplexMatrix> kraus)
    : kraus_(std::move(kraus)) {
  if (kraus_.empty()) {
    throw std::invalid_argument("LocalChannel: empty Kraus set");
  }
  check_completeness(kraus_, 2);
}

ComplexMatrix embed_operator(const ComplexMatrix& u,
                             const std::vector<int>& qubits, int n_total) {
  const std::size_t k = qubits.size();
  const std::size_t dsub = std::size_t(1) << k;
  if (u.rows() != dsub || u.cols() != dsub) {
    throw std::invalid_argument("embed_operator: operator size mismatch");
  }
  std::uint64_t used = 0;
  for (int q : qubits) {
    if (q < 0 || q >= n_total) {
      throw std::invalid_argument("embed_operator: qubit out of range");
    }
    const std::uint64_t bit = std::uint64_t(1) << (n_total - 1 - q);
    if (used & bit) {
      throw std::invalid_argument("embed_operator: duplicate qubit");
    }
    used |= bit;
  }

  std::vector<int> rest;
  for (int q = 0; q < n_total; ++q) {
    const std::uint64_t bit = std::uint64_t(1) << (n_total - 1 - q);
    if (!(used & bit)) rest.push_back(q);
  }

  auto scatter = [n_total](const std::vector<int>& qs, std::size_t compact) {
    std::size_t full = 0;
    const int m = static_cast<int>(qs.size());
    for (int i = 0; i < m; ++i) {
      const std::size_t bit = (compact >> (m - 1 - i)) & 1u;
      full |= bit << (n_total - 1 - qs[i]);
    }
    return full;
  };

  const std::size_t d = std::size_t(1) << n_total;
  const std::size_t drest = std::size_t(1) << rest.size();
  ComplexMatrix out(d, d);
  for (std::size_t env = 0; env < drest; ++env) {
    const std::size_t base = scatter(rest, env);
    for (std::size_t si = 0; si < dsub; ++si) {
      const std::size_t fi = base | scatter(qubits, si);
      for (std::size_t sj = 0; sj < dsub; ++sj) {
        out(fi, base | scatter(qubits, sj)) = u(si, sj);
      }
    }
  }
  return out;
}

DensityMatrix apply_local_noise(
    const DensityMatrix& rho,
    const std::vector<std::optional<LocalChannel>>& per_qubit,
    LocalNoiseMode mode) {
  const int n = rho.n_qubits();
  if (static_cast<int>(per_qubit.size()) != n) {
    throw std::invalid_argument(
        "apply_local_noise: need one channel slot per qubit");
  }
  DensityMatrix state = rho;
  for (int q = 0; q < n; ++q) {
    if (!per_qubit[q]) continue;
    const auto& kraus = per_qubit[q]->kraus();
    if (mode == LocalNoiseMode::Kraus) {
      const std::size_t d = state.dim();
      ComplexMatrix acc(d, d);
      for (const auto& k : kraus) {
        const ComplexMatrix e = embed_operator(k, {q}, n);
        acc += e * state.matrix() * e.adjoint();
      }
      state = DensityMatrix(n, std::move(acc));
    } else {
      if (kraus.size() > 2) {
        throw std::invalid_argument(
            "apply_local_noise: one ancilla qubit fits at most two Kraus "
            "operators (supply an extremal decomposition)");
      }
      const ComplexMatrix v = stinespring_unitary(kraus, 2);
      // Ancilla appended as the last (least significant) qubit in |0>.
      ComplexMatrix joint_mat = kron(state.matrix(), [] {
        ComplexMatrix p0(2, 2);
        p0(0, 0) = 1.0;
        return p0;
      }());
      const ComplexMatrix full = embed_operator(v, {n, q}, n + 1);
      joint_mat = full * joint_mat * full.adjoint();
      DensityMatrix joint(n + 1, std::move(joint_mat));
      std::vector<int> keep(n);
      for (int i = 0; i < n; ++i) keep[i] = i;
      state = partial_trace(joint, keep);
    }
  }
  return state;
}

}  // namespace lindsim
