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

#include "swle/sim/strategy.hpp"

#include <algorithm>

namespace swle::sim {

std::vector<Outbound> byzantine_step(const FaultSpec& spec, View view,
                                     std::vector<Outbound> outbox) {
  switch (spec.kind) {
    case FaultKind::Correct:
      return outbox;
    case FaultKind::Crash:
      if (view >= spec.from_view) outbox.clear();
      return outbox;
    case FaultKind::Byzantine:
      break;
  }
  if (spec.strategy == Strategy::Mute) {
    outbox.clear();
    return outbox;
  }
  std::erase_if(outbox, [](const Outbound& o) {
    return std::holds_alternative<engine::Proposal>(*o.msg);
  });
  return outbox;
}

bool processes_input(const FaultSpec* spec, View view) {
  return !(spec && spec->kind == FaultKind::Crash && view >= spec->from_view);
}

SimTime processing_delay(const FaultSpec* spec, SimTime default_us) {
  if (spec && spec->kind == FaultKind::Byzantine && spec->strategy == Strategy::ReputationBuilder) {
    return 0;
  }
  return default_us;
}

}  // namespace swle::sim
