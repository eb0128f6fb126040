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

#include "lindsim/linalg.hpp"
#include "lindsim/model.hpp"
#include "lindsim/rng.hpp"
#include "lindsim/stoch_channel.hpp"
#include "test_util.hpp"

using namespace lindsim;
using namespace lindsim::testutil;

namespace {

StochasticChannel random_pauli_mixture(int n, int branches, RngStream& rng) {
  std::vector<std::pair<double, PrimitiveOperation>> b;
  std::vector<double> w(branches);
  double total = 0.0;
  for (auto& x : w) {
    x = rng.uniform() + 0.05;
    total += x;
  }
  double acc = 0.0;
  for (int i = 0; i < branches; ++i) {
    double p = w[i] / total;
    if (i == branches - 1) p = 1.0 - acc;  // exact unit sum
    acc += p;
    b.emplace_back(p, PrimitiveOperation(UnitaryOp(
                          random_pauli_string(n, rng, true))));
  }
  return StochasticChannel::mixture(std::move(b));
}

}  // namespace

TEST_CASE("mixture validation enforces Definition-1 shape") {
  const PrimitiveOperation id(UnitaryOp(PauliString::identity(1)));
  const PrepareOp prep = PrepareOp::pure(StateVector::basis_state(1, 0));
  CHECK_THROWS_AS(StochasticChannel::mixture({{0.5, id}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(StochasticChannel::mixture(
                      {{0.5, PrimitiveOperation(prep)},
                       {0.5, PrimitiveOperation(prep)}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(PrepareOp({{0.7, StateVector::basis_state(1, 0)},
                             {0.2, StateVector::basis_state(1, 1)}}),
                  std::invalid_argument);
}

TEST_CASE("apply_exact on simple mixtures") {
  RngStream rng(3);
  const DensityMatrix rho = random_density(1, rng);

  const StochasticChannel identity = StochasticChannel::identity_channel(1);
  CHECK(trace_distance(identity.apply_exact(rho), rho) < 1e-14);

  // (1/2)(I . I + Z . Z) wipes the off-diagonals.
  const StochasticChannel dephase = StochasticChannel::mixture(
      {{0.5, PrimitiveOperation(UnitaryOp(PauliString::identity(1)))},
       {0.5, PrimitiveOperation(UnitaryOp(PauliString::parse("Z")))}});
  const DensityMatrix out = dephase.apply_exact(rho);
  CHECK(std::abs(out.matrix()(0, 1)) < 1e-14);
  CHECK(std::abs(out.matrix()(0, 0) - rho.matrix()(0, 0)) < 1e-14);
}

TEST_CASE("apply_exact matches a direct dense Kraus sum") {
  RngStream rng(5);
  const StochasticChannel ch = random_pauli_mixture(2, 20, rng);
  const DensityMatrix rho = random_density(2, rng);

  ComplexMatrix expected(4, 4);
  for (std::size_t i = 0; i < ch.operations().size(); ++i) {
    const ComplexMatrix u = ch.operations()[i].unitary().to_matrix();
    ComplexMatrix term = u * rho.matrix() * u.adjoint();
    term *= cplx(ch.probabilities()[i], 0.0);
    expected += term;
  }
  CHECK(max_abs_diff(ch.apply_exact(rho).matrix(), expected) < 1e-12);
}

TEST_CASE("apply_exact rejects dimension mismatches") {
  const StochasticChannel ch = StochasticChannel::identity_channel(2);
  RngStream rng(97);
  CHECK_THROWS_AS(ch.apply_exact(random_density(1, rng)),
                  std::invalid_argument);
}

TEST_CASE("sample_operation matches the branch distribution") {
  RngStream rng(7);
  const StochasticChannel single = StochasticChannel::identity_channel(1);
  for (int i = 0; i < 100; ++i) {
    CHECK(single.sample_detailed(rng).op.is_unitary());
  }

  const StochasticChannel biased = StochasticChannel::mixture(
      {{0.25, PrimitiveOperation(UnitaryOp(PauliString::identity(1)))},
       {0.75, PrimitiveOperation(UnitaryOp(PauliString::parse("X")))}});
  long x_count = 0;
  const long draws = 100000;
  for (long i = 0; i < draws; ++i) {
    const auto s = biased.sample_detailed(rng);
    if (!s.op.unitary().pauli().is_identity_letters()) ++x_count;
  }
  const double freq = static_cast<double>(x_count) / draws;
  CHECK(std::abs(freq - 0.75) < 0.01);

  const StochasticChannel degenerate = StochasticChannel::mixture(
      {{1.0, PrimitiveOperation(UnitaryOp(PauliString::identity(1)))},
       {0.0, PrimitiveOperation(UnitaryOp(PauliString::parse("X")))}});
  for (long i = 0; i < 1000000; ++i) {
    const auto s = degenerate.sample_detailed(rng);
    CHECK(s.op.unitary().pauli().is_identity_letters());
  }
}

TEST_CASE("sampling mean converges to apply_exact") {
  RngStream rng(11);
  const StochasticChannel ch = random_pauli_mixture(1, 5, rng);
  const DensityMatrix rho = random_density(1, rng);
  const DensityMatrix expected = ch.apply_exact(rho);

  ComplexMatrix mean(2, 2);
  const long n_samples = 100000;
  for (long i = 0; i < n_samples; ++i) {
    const auto op = ch.sample_operation(rng);
    mean += op.apply_to_density_raw(rho.matrix());
  }
  mean *= cplx(1.0 / static_cast<double>(n_samples), 0.0);
  CHECK(trace_distance(DensityMatrix(1, mean, 1e-6), expected) < 0.02);
}

TEST_CASE("taylor channel at K = 0 is the identity") {
  const std::vector<UnitaryJumpForm> jumps{
      {cplx(0.3, 0.0), UnitaryOp(PauliString::parse("X"))}};
  const double dt = 0.5;
  const auto taylor = dissipator_to_stochastic(1, jumps, dt, 0);
  const double a = 0.09;
  CHECK(taylor.err_bound <= 2.0 * a * dt + 1e-12);
  RngStream rng(13);
  const DensityMatrix rho = random_density(1, rng);
  CHECK(trace_distance(taylor.channel.apply_exact(rho), rho) < 1e-14);
}

TEST_CASE("taylor channel rejects a*dt > 1 and bad orders") {
  const std::vector<UnitaryJumpForm> jumps{
      {cplx(2.0, 0.0), UnitaryOp(PauliString::parse("X"))}};
  CHECK_THROWS_AS(dissipator_to_stochastic(1, jumps, 0.5, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(TaylorConfig(-1, 0.1, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(TaylorConfig(2, 0.1, 0.0), std::invalid_argument);
}

TEST_CASE("dephasing truncation error bound") {
  // Gamma dt = 0.1 at K = 8: the bound collapses below 1e-13 and the
  // discarded tail (which equals exp(dt D) - truncated series exactly)
  // stays under it.
  const double Gamma = 1.0;
  const double dt = 0.1;
  const double a = Gamma / 2.0;
  const std::vector<UnitaryJumpForm> jumps{
      {cplx(std::sqrt(a), 0.0), UnitaryOp(PauliString::parse("Z"))}};
  const auto taylor = dissipator_to_stochastic(1, jumps, dt, 8);
  CHECK(taylor.err_bound < 1e-13);
  const double tail_upper =
      diamond_bounds(taylor_tail_superop(1, jumps, dt, 8)).upper;
  CHECK(tail_upper <= taylor.err_bound);

  // The renormalized channel's distance never exceeds err_bound: for Pauli
  // channels the Choi lower bound is the exact diamond norm. Checked at a
  // measurable scale.
  for (double x : {0.2, 0.5, 1.0}) {
    for (int K : {2, 3}) {
      const std::vector<UnitaryJumpForm> j2{
          {cplx(std::sqrt(x), 0.0), UnitaryOp(PauliString::parse("Z"))}};
      const auto t2 = dissipator_to_stochastic(1, j2, 1.0, K);
      const Superoperator exact(
          1, matrix_exp(
                 dissipator_liouvillian(
                     1, {JumpSpec::from_unitary(std::sqrt(x),
                                                PauliString::parse("Z"))})
                     .matrix(),
                 cplx(1.0, 0.0)));
      const auto diff_bounds =
          diamond_bounds(exact - t2.channel.to_superoperator());
      CHECK(diff_bounds.lower <= t2.err_bound + 1e-15);
    }
  }
  // The conservative Choi-upper direction holds once a*dt is order one.
  for (double x : {0.8, 1.0}) {
    for (int K : {2, 3}) {
      const std::vector<UnitaryJumpForm> j2{
          {cplx(std::sqrt(x), 0.0), UnitaryOp(PauliString::parse("Z"))}};
      const auto t2 = dissipator_to_stochastic(1, j2, 1.0, K);
      const Superoperator exact(
          1, matrix_exp(
                 dissipator_liouvillian(
                     1, {JumpSpec::from_unitary(std::sqrt(x),
                                                PauliString::parse("Z"))})
                     .matrix(),
                 cplx(1.0, 0.0)));
      const auto diff_bounds =
          diamond_bounds(exact - t2.channel.to_superoperator());
      CHECK(diff_bounds.upper <= t2.err_bound);
    }
  }
}

TEST_CASE("taylor channel reproduces global depolarizing propagation") {
  const int n = 2;
  const double gamma = 1.0;  // gamma * dt = 0.2
  const double dt = 0.2;
  const LindbladSpec spec(HamiltonianSpec::zero(n),
                          depolarizing_jumps(n, gamma));
  const auto taylor =
      dissipator_to_stochastic(n, *spec.unitary_jumps(), dt, 10);
  RngStream rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix rho = random_density(n, rng);
    const DensityMatrix via_channel = taylor.channel.apply_exact(rho);
    const DensityMatrix via_exact = exact_propagate(spec, rho, dt);
    CHECK(trace_distance(via_channel, via_exact) < 1e-10);
  }
}

TEST_CASE("taylor channel is trace preserving and CPTP") {
  const std::vector<UnitaryJumpForm> jumps{
      {cplx(0.5, 0.0), UnitaryOp(PauliString::parse("XZ"))},
      {cplx(0.0, 0.4), UnitaryOp(PauliString::parse("YI"))}};
  const auto taylor = dissipator_to_stochastic(2, jumps, 0.8, 5);
  CHECK(taylor.channel.to_superoperator().is_cptp(1e-10, 1e-10));
}

TEST_CASE("sampled compositions stay in the Pauli group") {
  RngStream rng(19);
  const std::vector<UnitaryJumpForm> jumps{
      {cplx(0.5, 0.0), UnitaryOp(PauliString::parse("XZ"))},
      {cplx(0.4, 0.0), UnitaryOp(PauliString::parse("YY"))},
      {cplx(0.3, 0.0), UnitaryOp(PauliString::parse("IZ"))}};
  const auto taylor = dissipator_to_stochastic(2, jumps, 1.0, 12);
  int composite_seen = 0;
  for (int i = 0; i < 3000; ++i) {
    const auto s = taylor.channel.sample_detailed(rng);
    REQUIRE(s.op.is_unitary());
    REQUIRE(s.op.unitary().is_pauli());
    if (s.composition_length >= 2) {
      ++composite_seen;
      // Symbolic composition agrees with the dense product of the parts:
      // the payload is itself a single Pauli string, so its matrix must be
      // unitary with a Pauli structure.
      const ComplexMatrix m = s.op.unitary().to_matrix();
      CHECK(m.is_unitary(1e-12));
    }
  }
  CHECK(composite_seen > 0);
}

TEST_CASE("example families have the stated jump sets") {
  const auto depol1 = depolarizing_jumps(1, 0.8);
  REQUIRE(depol1.size() == 3);
  for (const auto& j : depol1) {
    REQUIRE(j.terms().size() == 1);
    CHECK(j.terms()[0].coeff == doctest::Approx(std::sqrt(0.8 / 4.0)));
  }
  // Letters are X, Y, Z in code order.
  CHECK(depol1[0].terms()[0].string.letters_str() == "X");
  CHECK(depol1[1].terms()[0].string.letters_str() == "Y");
  CHECK(depol1[2].terms()[0].string.letters_str() == "Z");

  const auto deph3 = dephasing_jumps(3, 2.0);
  REQUIRE(deph3.size() == 3);
  CHECK(pauli_norm_dissipator(deph3) == doctest::Approx(3.0));
  CHECK(deph3[1].terms()[0].string.letters_str() == "IZI");
}

TEST_CASE("reset channel prepares the ensemble") {
  const PrepareOp ens = PrepareOp::pure(StateVector::basis_state(2, 0));
  const StochasticChannel reset = reset_channel(0.0, ens);
  RngStream rng(23);
  const DensityMatrix rho = random_density(2, rng);
  CHECK(trace_distance(reset.apply_exact(rho),
                       DensityMatrix::basis_state(2, 0)) < 1e-13);

  const StochasticChannel half = reset_channel(0.5, ens);
  const DensityMatrix mixed = half.apply_exact(rho);
  ComplexMatrix expected = rho.matrix();
  expected *= cplx(0.5, 0.0);
  ComplexMatrix prep = DensityMatrix::basis_state(2, 0).matrix();
  prep *= cplx(0.5, 0.0);
  expected += prep;
  CHECK(max_abs_diff(mixed.matrix(), expected) < 1e-13);
}
