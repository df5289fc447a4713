// Copyright 2026 The SWLE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "swle/params.hpp"

#include <algorithm>
#include <string>

namespace swle {

ScoringConstants ScoringConstants::defaults(std::uint32_t n) {
  const auto point = static_cast<ScoreUnits>(n);
  return ScoringConstants{
      .leader_entered = -point,
      .leader_timed_out = -point * point,
      .proposal_finalized = point,
      .promoter = 1,
      .normalization = point,
  };
}

std::uint64_t default_theta(std::uint32_t n) {
  return std::max<std::uint64_t>(300, 10 * static_cast<std::uint64_t>(n));
}

Params Params::make(std::uint32_t n, std::optional<std::uint64_t> t_f,
                    std::optional<std::uint64_t> theta,
                    std::optional<ScoringConstants> alpha) {
  if (n < 4 || (n - 1) % 3 != 0) {
    throw ParamsError("replica count must be 3f+1 with f >= 1, got " + std::to_string(n));
  }
  Params p;
  p.n = n;
  p.f = (n - 1) / 3;
  p.t_f = t_f.value_or(n - 1);
  if (p.t_f == 0) throw ParamsError("t_f must be positive");
  p.t_z = (p.t_f + n - 1) / n * n;
  p.theta = theta.value_or(default_theta(n));
  if (p.theta < n) throw ParamsError("theta must be at least n");
  p.alpha = alpha.value_or(ScoringConstants::defaults(n));
  if (p.alpha.normalization <= 0) throw ParamsError("normalization delta must be positive");
  if (p.alpha.leader_entered >= 0) throw ParamsError("view-entry delta must be negative");
  return p;
}

ScoreUnits Params::eligibility_threshold() const {
  return -alpha.leader_entered;
}

}  // namespace swle
