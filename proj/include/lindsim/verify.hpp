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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace lindsim {

struct VerifyRow {
  std::string instance;
  double measured;
  double bound;  // bound or reference value, depending on the suite
  double ratio;
  bool pass;
};

struct VerifyReport {
  std::string suite;
  std::vector<VerifyRow> rows;
  bool all_pass() const;
};

// One row per instance: instance,measured,bound,ratio,pass with floats at 17
// significant digits.
void write_csv(const VerifyReport& report, std::ostream& out);

/// Gadget order study: one-qubit H = 0.7 X + 0.2 Z with unit-rate dephasing,
/// T = 1, r in {4,...,256}; the "slope" row must land in [1.8, 2.2].
VerifyReport verify_converge();

/// Random two-qubit specs against the end-to-end error bound
/// (8/3) r (1+6c0) (pnorm dt)^3 + 2 r eps_H, measured by the Choi lower bound.
VerifyReport verify_bounds(std::uint64_t seed = 0, int n_instances = 20);

/// Time-dependent splitting: sinusoidal dephasing with H = X. Grid rows check
/// measured <= bound, the "slope" row must land in [2.7, 3.3], and the
/// commuting rows must vanish.
VerifyReport verify_thm3();

/// Truncated-series tail against 2 (a dt)^{K+1} / (K+1)! for
/// a*dt in {0.05, 0.2, 0.5} x K in {2, 4, 8}, plus closure rows tying the
/// construction to the exact exponential.
VerifyReport verify_taylor();

/// Trajectory estimate vs density-matrix expectation on the one-qubit
/// depolarizing + X-field model; must agree within 4 standard errors.
VerifyReport verify_modes(std::uint64_t seed = 0);

}  // namespace lindsim
