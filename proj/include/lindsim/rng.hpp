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
#include <span>

namespace lindsim {

/// xoshiro256++ with splitmix64 seeding and hand-rolled uniforms, so streams
/// are reproducible across platforms and standard-library versions. Trajectory
/// j always uses substream(master_seed, j): results do not depend on how
/// trajectories are scheduled across threads.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  static RngStream substream(std::uint64_t master_seed, std::uint64_t index);

  std::uint64_t next_u64();
  double uniform();  // [0, 1)

  // Inverse-CDF draw: first index i with u < cumulative[i]. The last entry is
  // treated as +inf so roundoff in the final cumulative cannot fall through.
  std::size_t sample_cumulative(std::span<const double> cumulative);

 private:
  std::uint64_t s_[4];
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace lindsim
