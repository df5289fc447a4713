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

#include "swle/target_view.hpp"

#include <stdexcept>

namespace swle {

View target_view(View v, std::uint32_t n, std::uint64_t t_z) {
  if (v < 1) throw std::invalid_argument("target_view: view must be >= 1");
  if (n == 0) throw std::invalid_argument("target_view: n must be positive");
  const std::uint64_t block = (v - 1) / n;
  const std::uint64_t r = v - block * n;  // in [1, n]
  const std::uint64_t a = block % n;
  if (r + a <= n) return v + n + a + t_z;
  return v + a + t_z;
}

}  // namespace swle
