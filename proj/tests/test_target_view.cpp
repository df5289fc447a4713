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


#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

#include "support.hpp"
#include "swle/target_view.hpp"

namespace swle {
namespace {

TEST(TargetView, SmallWindowExamples) {
  EXPECT_EQ(target_view(1, 4, 4), 9u);
  EXPECT_EQ(target_view(4, 4, 4), 12u);
  EXPECT_EQ(target_view(8, 4, 4), 13u);
}

TEST(TargetView, RejectsViewZero) {
  EXPECT_THROW(target_view(0, 4, 4), std::invalid_argument);
  EXPECT_THROW(target_view(1, 0, 4), std::invalid_argument);
}

TEST(TargetView, ParamsOverloadMatches) {
  const auto p = Params::make(7, 13);
  ASSERT_EQ(p.t_z, 14u);
  for (View v = 1; v < 200; ++v) EXPECT_EQ(target_view(v, p), target_view(v, 7, 14));
}

TEST(TargetView, BlocksMapOntoNextBlock) {
  for (std::uint32_t n : {4u, 7u, 10u, 16u, 100u}) {
    for (std::uint64_t tz : {std::uint64_t{n}, std::uint64_t{2} * n}) {
      EXPECT_EQ(testing::bijection_violations(n, tz, 3 * n), 0u) << "n=" << n << " tz=" << tz;
    }
  }
}

TEST(TargetView, GapAtLeastWindowCore) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20000; ++i) {
    const auto n = static_cast<std::uint32_t>(3 * (1 + rng() % 40) + 1);
    const auto p = Params::make(n, 1 + rng() % (4 * n));
    const View v = 1 + rng() % 100000;
    ASSERT_GE(target_view(v, p) - (v + 1), p.t_z) << "v=" << v << " n=" << n;
  }
}

TEST(TargetView, InitialLeaderIsViewModN) {
  EXPECT_EQ(initial_leader(9, 4), 1u);
  EXPECT_EQ(initial_leader(12, 4), 0u);
  EXPECT_EQ(initial_leader(7, 4), 3u);
}

}  // namespace
}  // namespace swle
