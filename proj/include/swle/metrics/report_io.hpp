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

#pragma once

#include <ostream>
#include <span>
#include <string>

#include <json.hpp>

#include "swle/metrics/metrics.hpp"

namespace swle::metrics {

/// Per-view CSV: view, leader, unified, leader_correct, finalized,
/// timed_out, entry_us, decide_us, ops. Missing values are left empty.
void write_views_csv(std::ostream& out, std::span<const ViewRecord> records);
std::string views_csv(std::span<const ViewRecord> records);

/// Summary object with keys throughput_avg, latency_avg, faulty_leader_pct,
/// timeout_pct, gamma_report and v_c (plus a few run totals). Key order is
/// fixed so the text form is stable.
nlohmann::ordered_json summary_json(const Summary& summary);

}  // namespace swle::metrics
