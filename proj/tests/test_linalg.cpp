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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "lindsim/hermitian_eig.hpp"
#include "lindsim/kernels.hpp"
#include "lindsim/linalg.hpp"
#include "lindsim/pauli.hpp"
#include "lindsim/rng.hpp"
#include "lindsim/states.hpp"
#include "test_util.hpp"

using namespace lindsim;
using namespace lindsim::testutil;

namespace {

std::vector<cplx> random_buffer(std::size_t count, RngStream& rng) {
  std::vector<cplx> out(count);
  for (auto& v : out) v = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
  return out;
}

}  // namespace

TEST_CASE("parallel kernels match the serial reference bitwise") {
  RngStream rng(11);
  for (std::size_t n : {3, 17, 64, 129}) {
    const auto a = random_buffer(n * n, rng);
    const auto b = random_buffer(n * n, rng);
    const auto x = random_buffer(n, rng);

    std::vector<cplx> c1(n * n), c2(n * n), y1(n), y2(n);
    kernels::serial::matmul(c1.data(), a.data(), b.data(), n, n, n);
    kernels::matmul(c2.data(), a.data(), b.data(), n, n, n);
    CHECK(std::memcmp(c1.data(), c2.data(), n * n * sizeof(cplx)) == 0);

    kernels::serial::matvec(y1.data(), a.data(), x.data(), n, n);
    kernels::matvec(y2.data(), a.data(), x.data(), n, n);
    CHECK(std::memcmp(y1.data(), y2.data(), n * sizeof(cplx)) == 0);

    std::vector<cplx> k1(n * n * 4), k2(n * n * 4);
    const auto small = random_buffer(4, rng);
    kernels::serial::kron(k1.data(), a.data(), n, n, small.data(), 2, 2);
    kernels::kron(k2.data(), a.data(), n, n, small.data(), 2, 2);
    CHECK(std::memcmp(k1.data(), k2.data(), k1.size() * sizeof(cplx)) == 0);
  }
}

TEST_CASE("kron agrees with the nested-loop definition") {
  RngStream rng(5);
  const auto abuf = random_buffer(6, rng);
  const auto bbuf = random_buffer(6, rng);
  ComplexMatrix a(2, 3), b(3, 2);
  for (std::size_t i = 0; i < 6; ++i) {
    a.data()[i] = abuf[i];
    b.data()[i] = bbuf[i];
  }
  const ComplexMatrix c = kron(a, b);
  REQUIRE(c.rows() == 6);
  REQUIRE(c.cols() == 6);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t k = 0; k < 3; ++k) {
        for (std::size_t l = 0; l < 2; ++l) {
          CHECK(std::abs(c(i * 3 + k, j * 2 + l) - a(i, j) * b(k, l)) == 0.0);
        }
      }
    }
  }
}

TEST_CASE("hermitian_eig diagonalizes random Hermitian matrices") {
  RngStream rng(7);
  for (std::size_t d : {2, 3, 8, 16}) {
    const ComplexMatrix a = random_hermitian(d, rng);
    const HermitianEig eig = hermitian_eig(a);
    REQUIRE(eig.eigenvalues.size() == d);
    CHECK(eig.eigenvectors.is_unitary(1e-11));
    // A V = V diag(lambda)
    ComplexMatrix av = a * eig.eigenvectors;
    ComplexMatrix vd = eig.eigenvectors;
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t i = 0; i < d; ++i) {
        vd(i, j) *= eig.eigenvalues[j];
      }
    }
    CHECK(max_abs_diff(av, vd) < 1e-11 * (1.0 + a.frobenius_norm()));
    for (std::size_t i = 0; i + 1 < d; ++i) {
      CHECK(eig.eigenvalues[i] <= eig.eigenvalues[i + 1]);
    }
  }
}

TEST_CASE("2x2 eigenvalues match the characteristic polynomial") {
  RngStream rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix a = random_hermitian(2, rng);
    const double tr = std::real(a.trace());
    const double det = std::real(a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0));
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    const double lo = tr / 2.0 - disc;
    const double hi = tr / 2.0 + disc;
    const auto eigs = hermitian_eigenvalues(a);
    CHECK(std::abs(eigs[0] - lo) < 1e-12 * (1.0 + std::abs(lo)));
    CHECK(std::abs(eigs[1] - hi) < 1e-12 * (1.0 + std::abs(hi)));
  }
}

TEST_CASE("matrix_exp basics") {
  const ComplexMatrix zero(3, 3);
  CHECK(max_abs_diff(matrix_exp(zero), ComplexMatrix::identity(3)) < 1e-15);

  // exp(-i (pi/2) X) = -i X
  const ComplexMatrix x = PauliString::parse("X").to_matrix();
  ComplexMatrix expected = x;
  expected *= cplx(0.0, -1.0);
  const ComplexMatrix got = matrix_exp(x, cplx(0.0, -M_PI / 2.0));
  CHECK(max_abs_diff(got, expected) < 1e-12);
}

TEST_CASE("matrix_exp matches the eigendecomposition oracle") {
  RngStream rng(3);
  const ComplexMatrix a = random_hermitian(8, rng);
  const HermitianEig eig = hermitian_eig(a);
  // V exp(diag) V^dag
  ComplexMatrix expd(8, 8);
  for (std::size_t i = 0; i < 8; ++i) expd(i, i) = std::exp(eig.eigenvalues[i]);
  const ComplexMatrix oracle =
      eig.eigenvectors * expd * eig.eigenvectors.adjoint();
  const ComplexMatrix got = matrix_exp(a);
  ComplexMatrix diff = got;
  diff -= oracle;
  CHECK(diff.frobenius_norm() < 1e-9 * oracle.frobenius_norm());
}

TEST_CASE("matrix_exp is multiplicative on commuting (diagonal) pairs") {
  RngStream rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix a(4, 4), b(4, 4);
    for (std::size_t i = 0; i < 4; ++i) {
      a(i, i) = cplx(gaussian(rng) * 0.3, gaussian(rng) * 0.3);
      b(i, i) = cplx(gaussian(rng) * 0.3, gaussian(rng) * 0.3);
    }
    const ComplexMatrix lhs = matrix_exp(a + b);
    const ComplexMatrix rhs = matrix_exp(a) * matrix_exp(b);
    CHECK(max_abs_diff(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("matrix_exp of anti-Hermitian input is unitary") {
  RngStream rng(23);
  ComplexMatrix h = random_hermitian(8, rng);
  const ComplexMatrix u = matrix_exp(h, cplx(0.0, -1.0));
  CHECK(u.is_unitary(1e-10));
  CHECK_THROWS_AS(matrix_exp(ComplexMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("pauli_to_matrix on fixed strings") {
  const ComplexMatrix z = pauli_to_matrix(PauliString::parse("Z"));
  CHECK(std::abs(z(0, 0) - cplx(1, 0)) < 1e-15);
  CHECK(std::abs(z(1, 1) - cplx(-1, 0)) < 1e-15);
  CHECK(std::abs(z(0, 1)) < 1e-15);

  CHECK(max_abs_diff(pauli_to_matrix(PauliString::parse("II")),
                     ComplexMatrix::identity(4)) < 1e-15);

  // XZ against an explicit 4x4 table built by nested loops.
  const ComplexMatrix x1 = pauli_matrix_1q(Pauli::X);
  const ComplexMatrix z1 = pauli_matrix_1q(Pauli::Z);
  ComplexMatrix table(4, 4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
          table(i * 2 + k, j * 2 + l) = x1(i, j) * z1(k, l);
        }
      }
    }
  }
  CHECK(max_abs_diff(pauli_to_matrix(PauliString::parse("XZ")), table) <
        1e-15);
}

TEST_CASE("random Pauli strings realize unitary matrices") {
  RngStream rng(29);
  const cplx phases[4] = {cplx(1, 0), cplx(-1, 0), cplx(0, 1), cplx(0, -1)};
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_u64() % 6);
    PauliString base = random_pauli_string(n, rng, true);
    PauliString p(base.letters(), phases[rng.next_u64() % 4]);
    const ComplexMatrix m = p.to_matrix();
    ComplexMatrix prod = m * m.adjoint();
    prod -= ComplexMatrix::identity(m.rows());
    CHECK(prod.max_abs() < 1e-12);
  }
}

TEST_CASE("Pauli composition matches matrix products") {
  RngStream rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_u64() % 3);
    const PauliString a = random_pauli_string(n, rng, true);
    const PauliString b = random_pauli_string(n, rng, true);
    const PauliString c = a * b;
    CHECK(max_abs_diff(c.to_matrix(), a.to_matrix() * b.to_matrix()) < 1e-13);
  }
}

TEST_CASE("StateVector Pauli application matches the dense matrix") {
  RngStream rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_u64() % 3);
    const PauliString p = random_pauli_string(n, rng, true);
    StateVector psi = random_state(n, rng);
    StateVector via_pauli = psi;
    via_pauli.apply_pauli(p);
    StateVector via_matrix = psi;
    via_matrix.apply_unitary(p.to_matrix());
    for (std::size_t i = 0; i < psi.dim(); ++i) {
      CHECK(std::abs(via_pauli.amplitude(i) - via_matrix.amplitude(i)) <
            1e-13);
    }
  }
}

TEST_CASE("pauli rotation equals the exact exponential") {
  RngStream rng(41);
  const PauliString p = random_pauli_string(2, rng);
  const double theta = 0.37;
  StateVector psi = random_state(2, rng);
  StateVector rotated = psi;
  rotated.apply_pauli_rotation(p, theta);
  StateVector dense = psi;
  dense.apply_unitary(matrix_exp(p.to_matrix(), cplx(0.0, -theta)));
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    CHECK(std::abs(rotated.amplitude(i) - dense.amplitude(i)) < 1e-12);
  }
}

TEST_CASE("partial_trace on product and Bell states") {
  RngStream rng(43);
  const DensityMatrix rho_a = random_density(1, rng);
  const DensityMatrix rho_b = random_density(1, rng);
  const DensityMatrix joint(2, kron(rho_a.matrix(), rho_b.matrix()));
  CHECK(trace_distance(partial_trace(joint, {0}), rho_a) < 1e-12);
  CHECK(trace_distance(partial_trace(joint, {1}), rho_b) < 1e-12);

  const double s = 1.0 / std::sqrt(2.0);
  const StateVector bell(2, {cplx(s, 0), cplx(0, 0), cplx(0, 0), cplx(s, 0)});
  const DensityMatrix bell_rho = DensityMatrix::from_statevector(bell);
  for (int keep : {0, 1}) {
    const DensityMatrix reduced = partial_trace(bell_rho, {keep});
    CHECK(trace_distance(reduced, DensityMatrix::maximally_mixed(1)) < 1e-12);
  }
}

TEST_CASE("partial_trace agrees with the index-summation brute force") {
  RngStream rng(47);
  const DensityMatrix rho = random_density(3, rng);
  // keep qubits {0, 2}: sum over qubit 1. Qubit q sits at bit (2 - q).
  ComplexMatrix expected(4, 4);
  for (int i0 = 0; i0 < 2; ++i0) {
    for (int i2 = 0; i2 < 2; ++i2) {
      for (int j0 = 0; j0 < 2; ++j0) {
        for (int j2 = 0; j2 < 2; ++j2) {
          cplx s(0, 0);
          for (int t = 0; t < 2; ++t) {
            const int row = i0 * 4 + t * 2 + i2;
            const int col = j0 * 4 + t * 2 + j2;
            s += rho.matrix()(row, col);
          }
          expected(i0 * 2 + i2, j0 * 2 + j2) = s;
        }
      }
    }
  }
  const DensityMatrix got = partial_trace(rho, {0, 2});
  CHECK(max_abs_diff(got.matrix(), expected) < 1e-12);

  // trace preservation
  CHECK(std::abs(got.matrix().trace() - cplx(1, 0)) < 1e-12);
  CHECK_THROWS_AS(partial_trace(rho, {}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(rho, {3}), std::invalid_argument);
}

TEST_CASE("trace_distance basics and the 2x2 eigenvalue oracle") {
  const DensityMatrix zero_state = DensityMatrix::basis_state(1, 0);
  const DensityMatrix one_state = DensityMatrix::basis_state(1, 1);
  CHECK(trace_distance(zero_state, zero_state) == doctest::Approx(0.0));
  CHECK(trace_distance(zero_state, one_state) == doctest::Approx(1.0));

  RngStream rng(53);
  for (int trial = 0; trial < 30; ++trial) {
    const DensityMatrix rho = random_density(1, rng);
    const DensityMatrix sigma = random_density(1, rng);
    ComplexMatrix d = rho.matrix() - sigma.matrix();
    // Characteristic polynomial of the 2x2 Hermitian difference.
    const double tr = std::real(d.trace());
    const double det = std::real(d(0, 0) * d(1, 1) - d(0, 1) * d(1, 0));
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    const double oracle =
        0.5 * (std::abs(tr / 2.0 + disc) + std::abs(tr / 2.0 - disc));
    CHECK(trace_distance(rho, sigma) == doctest::Approx(oracle).epsilon(1e-10));
    CHECK(trace_distance(rho, sigma) >= 0.0);
    CHECK(trace_distance(rho, sigma) <= 1.0 + 1e-12);
  }
}

TEST_CASE("trace_distance rejects dimension mismatches") {
  const DensityMatrix a = DensityMatrix::basis_state(1, 0);
  const DensityMatrix b = DensityMatrix::basis_state(2, 0);
  CHECK_THROWS_AS(trace_distance(a, b), std::invalid_argument);
}

TEST_CASE("trace_distance satisfies the triangle inequality") {
  RngStream rng(59);
  for (int trial = 0; trial < 25; ++trial) {
    const DensityMatrix a = random_density(2, rng);
    const DensityMatrix b = random_density(2, rng);
    const DensityMatrix c = random_density(2, rng);
    CHECK(trace_distance(a, c) <=
          trace_distance(a, b) + trace_distance(b, c) + 1e-10);
  }
}

TEST_CASE("matrix predicates are consistent") {
  RngStream rng(61);
  const ComplexMatrix h = random_hermitian(4, rng);
  CHECK(h.is_hermitian(1e-12));
  const ComplexMatrix u = matrix_exp(h, cplx(0.0, -1.0));
  CHECK(u.is_unitary(1e-10));
  // unitary implies normal: U U^dag == U^dag U
  CHECK(max_abs_diff(u * u.adjoint(), u.adjoint() * u) < 1e-10);

  const DensityMatrix rho = random_density(2, rng);
  CHECK(rho.matrix().is_psd(1e-10));
  ComplexMatrix not_psd = ComplexMatrix::identity(2);
  not_psd(1, 1) = -1.0;
  CHECK(!not_psd.is_psd(1e-10));
}

TEST_CASE("state and density validation catch bad inputs") {
  CHECK_THROWS_AS(StateVector(1, {cplx(1, 0), cplx(1, 0)}),
                  std::invalid_argument);
  ComplexMatrix bad = ComplexMatrix::identity(2);  // trace 2
  CHECK_THROWS_AS(DensityMatrix(1, bad), std::invalid_argument);
}
