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

// Times the OpenMP kernels against the serial references and checks that the
// two produce bitwise-identical results, then does the same for a trajectory
// batch.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <vector>

#include <omp.h>

#include "lindsim/engine.hpp"
#include "lindsim/kernels.hpp"
#include "lindsim/rng.hpp"
#include "lindsim/stoch_channel.hpp"

using namespace lindsim;

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::vector<cplx> random_matrix(std::size_t n, RngStream& rng) {
  std::vector<cplx> m(n * n);
  for (auto& v : m) v = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
  return m;
}

bool bitwise_equal(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(cplx)) == 0;
}

void bench_matmul() {
  RngStream rng(42);
  std::printf("%-10s %8s %12s %12s %9s %8s\n", "kernel", "dim", "serial[s]",
              "openmp[s]", "speedup", "bitwise");
  for (std::size_t n : {64, 128, 256, 512}) {
    const auto a = random_matrix(n, rng);
    const auto b = random_matrix(n, rng);
    std::vector<cplx> c_serial(n * n);
    std::vector<cplx> c_parallel(n * n);

    const int reps = n <= 128 ? 20 : 4;
    double t0 = now_seconds();
    for (int i = 0; i < reps; ++i) {
      kernels::serial::matmul(c_serial.data(), a.data(), b.data(), n, n, n);
    }
    const double serial = (now_seconds() - t0) / reps;

    t0 = now_seconds();
    for (int i = 0; i < reps; ++i) {
      kernels::matmul(c_parallel.data(), a.data(), b.data(), n, n, n);
    }
    const double parallel = (now_seconds() - t0) / reps;

    std::printf("%-10s %8zu %12.6f %12.6f %8.2fx %8s\n", "matmul", n, serial,
                parallel, serial / parallel,
                bitwise_equal(c_serial, c_parallel) ? "yes" : "NO");
  }
}

void bench_trajectories() {
  const HamiltonianSpec h(2, {{0.7, PauliString::parse("XZ")},
                              {0.4, PauliString::parse("ZI")}});
  const LindbladSpec spec(h, depolarizing_jumps(2, 0.3));
  const PauliObservable obs(2, {{1.0, PauliString::parse("ZI")}});
  const PrepareOp initial = PrepareOp::pure(StateVector::basis_state(2, 0));

  const long n_traj = 20000;
  const SimulationPlan plan = SimulationPlan::from_spec(
      spec, 1.0, 1e-3, 0.1, HamKind::ExactExp, RunMode::TrajectoriesMode,
      TrajectoryConfig{n_traj, obs, 7});

  const int max_threads = omp_get_max_threads();
  omp_set_num_threads(1);
  double t0 = now_seconds();
  const TrajectoryResult serial = run_trajectories(plan, initial);
  const double t_serial = now_seconds() - t0;

  omp_set_num_threads(max_threads);
  t0 = now_seconds();
  const TrajectoryResult parallel = run_trajectories(plan, initial);
  const double t_parallel = now_seconds() - t0;

  const bool same = std::memcmp(&serial.estimate, &parallel.estimate,
                                sizeof(double)) == 0;
  std::printf("%-10s %8ld %12.6f %12.6f %8.2fx %8s  (threads=%d)\n",
              "trajbatch", n_traj, t_serial, t_parallel,
              t_serial / t_parallel, same ? "yes" : "NO", max_threads);
}

}  // namespace

int main() {
  bench_matmul();
  bench_trajectories();
  return 0;
}
