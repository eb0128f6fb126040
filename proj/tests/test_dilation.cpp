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

#include "lindsim/dilation.hpp"
#include "lindsim/linalg.hpp"
#include "lindsim/rng.hpp"
#include "lindsim/stoch_channel.hpp"
#include "test_util.hpp"

using namespace lindsim;
using namespace lindsim::testutil;

namespace {

DensityMatrix kraus_apply_1q(const std::vector<ComplexMatrix>& kraus,
                             const DensityMatrix& rho) {
  ComplexMatrix acc(2, 2);
  for (const auto& k : kraus) {
    acc += k * rho.matrix() * k.adjoint();
  }
  return DensityMatrix(1, std::move(acc));
}

}  // namespace

TEST_CASE("amplitude damping endpoints and direct Kraus sum") {
  RngStream rng(3);
  const DensityMatrix rho = random_density(1, rng);

  const auto identity_kraus = amplitude_damping_kraus(0.0);
  CHECK(trace_distance(kraus_apply_1q(identity_kraus, rho), rho) < 1e-14);

  const auto full = amplitude_damping_kraus(1.0);
  CHECK(trace_distance(kraus_apply_1q(full, rho),
                       DensityMatrix::basis_state(1, 0)) < 1e-14);

  // p = 0.3 on |+><+| against a hand loop.
  const double p = 0.3;
  const auto kraus = amplitude_damping_kraus(p);
  const double s = 1.0 / std::sqrt(2.0);
  const DensityMatrix plus = DensityMatrix::from_statevector(
      StateVector(1, {cplx(s, 0.0), cplx(s, 0.0)}));
  ComplexMatrix byhand(2, 2);
  for (const auto& k : kraus) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        cplx acc(0, 0);
        for (int a = 0; a < 2; ++a) {
          for (int b = 0; b < 2; ++b) {
            acc += k(i, a) * plus.matrix()(a, b) * std::conj(k(j, b));
          }
        }
        byhand(i, j) += acc;
      }
    }
  }
  CHECK(max_abs_diff(kraus_apply_1q(kraus, plus).matrix(), byhand) < 1e-12);

  CHECK_THROWS_AS(amplitude_damping_kraus(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(amplitude_damping_kraus(1.1), std::invalid_argument);
}

TEST_CASE("stinespring unitary reproduces channels through the ancilla") {
  RngStream rng(5);

  // Single unitary Kraus operator: block-diagonal embedding.
  const ComplexMatrix u = matrix_exp(random_hermitian(2, rng), cplx(0, -1));
  const ComplexMatrix v1 = stinespring_unitary({u}, 2);
  CHECK(v1.is_unitary(1e-11));

  for (double p : {0.0, 0.3, 1.0}) {
    const auto kraus = amplitude_damping_kraus(p);
    const ComplexMatrix v = stinespring_unitary(kraus, 2);
    CHECK(v.is_unitary(1e-10));

    // First block column stacks the Kraus operators.
    for (std::size_t j = 0; j < kraus.size(); ++j) {
      for (std::size_t row = 0; row < 2; ++row) {
        for (std::size_t col = 0; col < 2; ++col) {
          CHECK(std::abs(v(j * 2 + row, col) - kraus[j](row, col)) < 1e-12);
        }
      }
    }

    // Tracing the ancilla after V (rho (x) |0><0|) V^dag recovers the
    // channel. Ancilla-major layout: the ancilla is qubit 0 of the pair.
    const DensityMatrix rho = random_density(1, rng);
    ComplexMatrix p0(2, 2);
    p0(0, 0) = 1.0;
    const DensityMatrix joint(2, kron(p0, rho.matrix()));
    const DensityMatrix evolved = joint.apply_unitary(v);
    const DensityMatrix reduced = partial_trace(evolved, {1});
    CHECK(trace_distance(reduced, kraus_apply_1q(kraus, rho)) < 1e-10);
  }

  // Completely dephasing channel via projector Kraus operators.
  ComplexMatrix k0(2, 2);
  k0(0, 0) = 1.0;
  ComplexMatrix k1(2, 2);
  k1(1, 1) = 1.0;
  const std::vector<ComplexMatrix> proj{k0, k1};
  const ComplexMatrix v = stinespring_unitary(proj, 2);
  const DensityMatrix rho = random_density(1, rng);
  ComplexMatrix p0(2, 2);
  p0(0, 0) = 1.0;
  const DensityMatrix joint(2, kron(p0, rho.matrix()));
  const DensityMatrix reduced = partial_trace(joint.apply_unitary(v), {1});
  CHECK(trace_distance(reduced, kraus_apply_1q(proj, rho)) < 1e-12);

  // Error paths: too many Kraus operators, incomplete sets.
  CHECK_THROWS_AS(stinespring_unitary({k0, k1, k0}, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(stinespring_unitary({k0}, 2), std::invalid_argument);
}

TEST_CASE("apply_local_noise identity slots do nothing") {
  RngStream rng(7);
  const DensityMatrix rho = random_density(2, rng);
  const std::vector<std::optional<LocalChannel>> none(2, std::nullopt);
  CHECK(trace_distance(apply_local_noise(rho, none, LocalNoiseMode::Kraus),
                       rho) < 1e-13);
  CHECK(trace_distance(apply_local_noise(rho, none, LocalNoiseMode::Dilation),
                       rho) < 1e-13);
}

TEST_CASE("unital local channels match the unitary-mixture path") {
  // Dephasing as a Kraus pair vs the (1/2)(I,Z) stochastic mixture.
  const double lam = 0.5;  // completely dephasing
  ComplexMatrix k0 = ComplexMatrix::identity(2);
  k0 *= cplx(std::sqrt(1.0 - lam), 0.0);
  ComplexMatrix k1 = PauliString::parse("Z").to_matrix();
  k1 *= cplx(std::sqrt(lam), 0.0);
  const LocalChannel channel({k0, k1});

  RngStream rng(9);
  const DensityMatrix rho = random_density(1, rng);
  const DensityMatrix via_kraus =
      apply_local_noise(rho, {channel}, LocalNoiseMode::Kraus);

  const StochasticChannel mixture = StochasticChannel::mixture(
      {{1.0 - lam, PrimitiveOperation(UnitaryOp(PauliString::identity(1)))},
       {lam, PrimitiveOperation(UnitaryOp(PauliString::parse("Z")))}});
  CHECK(trace_distance(via_kraus, mixture.apply_exact(rho)) < 1e-12);
}

TEST_CASE("Kraus and dilation modes agree on a GHZ state") {
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<cplx> amps(8, cplx(0, 0));
  amps[0] = cplx(s, 0);
  amps[7] = cplx(s, 0);
  const DensityMatrix ghz =
      DensityMatrix::from_statevector(StateVector(3, std::move(amps)));

  const LocalChannel damp(amplitude_damping_kraus(0.3));
  std::vector<std::optional<LocalChannel>> slots(3, std::nullopt);
  slots[0] = damp;
  const DensityMatrix a = apply_local_noise(ghz, slots, LocalNoiseMode::Kraus);
  const DensityMatrix b =
      apply_local_noise(ghz, slots, LocalNoiseMode::Dilation);
  CHECK(trace_distance(a, b) < 1e-12);
}

TEST_CASE("sequential application order does not matter on disjoint qubits") {
  RngStream rng(11);
  const DensityMatrix rho = random_density(3, rng);
  const LocalChannel damp(amplitude_damping_kraus(0.4));
  const LocalChannel deph({[] {
                             ComplexMatrix k(2, 2);
                             k(0, 0) = 1.0;
                             return k;
                           }(),
                           [] {
                             ComplexMatrix k(2, 2);
                             k(1, 1) = 1.0;
                             return k;
                           }()});

  // All at once (ascending order inside).
  std::vector<std::optional<LocalChannel>> slots(3, std::nullopt);
  slots[0] = damp;
  slots[2] = deph;
  const DensityMatrix combined =
      apply_local_noise(rho, slots, LocalNoiseMode::Dilation);

  // Reversed manual order: qubit 2 first, then qubit 0.
  std::vector<std::optional<LocalChannel>> only2(3, std::nullopt);
  only2[2] = deph;
  std::vector<std::optional<LocalChannel>> only0(3, std::nullopt);
  only0[0] = damp;
  const DensityMatrix reversed = apply_local_noise(
      apply_local_noise(rho, only2, LocalNoiseMode::Dilation), only0,
      LocalNoiseMode::Dilation);
  CHECK(trace_distance(combined, reversed) < 1e-12);
}

TEST_CASE("apply_local_noise needs one slot per qubit") {
  RngStream rng(15);
  const DensityMatrix rho = random_density(2, rng);
  const std::vector<std::optional<LocalChannel>> one_slot(1, std::nullopt);
  CHECK_THROWS_AS(apply_local_noise(rho, one_slot, LocalNoiseMode::Kraus),
                  std::invalid_argument);
}

TEST_CASE("local channel validation") {
  ComplexMatrix not_complete(2, 2);
  not_complete(0, 0) = 1.0;
  CHECK_THROWS_AS(LocalChannel({not_complete}), std::invalid_argument);

  // Dilation mode rejects decompositions needing a bigger ancilla.
  ComplexMatrix half = ComplexMatrix::identity(2);
  half *= cplx(std::sqrt(1.0 / 3.0), 0.0);
  ComplexMatrix hx = PauliString::parse("X").to_matrix();
  hx *= cplx(std::sqrt(1.0 / 3.0), 0.0);
  ComplexMatrix hz = PauliString::parse("Z").to_matrix();
  hz *= cplx(std::sqrt(1.0 / 3.0), 0.0);
  const LocalChannel three({half, hx, hz});
  RngStream rng(13);
  const DensityMatrix rho = random_density(1, rng);
  CHECK_THROWS_AS(
      apply_local_noise(rho, {three}, LocalNoiseMode::Dilation),
      std::invalid_argument);
  // Kraus mode handles it fine.
  const DensityMatrix out =
      apply_local_noise(rho, {three}, LocalNoiseMode::Kraus);
  CHECK(std::abs(out.matrix().trace() - cplx(1, 0)) < 1e-12);
}
