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

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "swle/params.hpp"
#include "swle/types.hpp"

namespace swle::metrics {

struct ViewRecord {
  View view = 0;
  /// Final determined leader at each replica; nullopt for faulty replicas
  /// and for correct replicas that never reached the view.
  std::vector<std::optional<ReplicaId>> leaders;
  std::optional<ReplicaId> leader;  // majority among correct replicas
  bool unified = false;             // every correct replica determined `leader`
  bool leader_correct = false;
  bool finalized = false;           // the view's own proposal was decided in the view
  bool timed_out = true;            // always !finalized
  bool timely = true;               // every correct entry had an elected leader
  SimTime entry_us = -1;            // earliest correct entry
  SimTime decide_us = -1;           // decision at the (2f+1)-th correct replica
  std::uint64_t ops = 0;            // operations whose decision happened in this view
  std::uint64_t latency_us_total = 0;  // sum of per-operation latencies for `ops`
};

/// Most frequent value; ties go to the smallest id. nullopt if all empty.
std::optional<ReplicaId> majority(std::span<const std::optional<ReplicaId>> leaders);

/// Percentage of views whose majority leader is faulty.
double faulty_leader_rate(std::span<const ViewRecord> records, const std::vector<bool>& faulty);
/// Percentage of views that timed out.
double timeout_rate(std::span<const ViewRecord> records);

/// First view entered at or after `gst_us`; nullopt if none was.
std::optional<View> gst_view(std::span<const ViewRecord> records, SimTime gst_us);

/// max(GST view, last view with an untimely entry). nullopt when no view
/// after that point was recorded.
std::optional<View> measure_v_c(std::span<const ViewRecord> records, SimTime gst_us);

class InsufficientHorizon : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GammaReport {
  std::uint64_t window = 0;  // T = n
  View v_c = 0;
  std::vector<std::uint32_t> counts;  // unified-correct views per window
  double mean_c = 0;
  double gamma = 0;    // (2f+1)/n
  double gamma_t = 0;  // gamma * T
  double sup = 0;      // n - (n/theta * f)(1 + t_z/n)
};

/// Upper bound on the expected unified-correct count per n-view window.
double gamma_sup(const Params& params);

/// Consecutive n-view windows starting right after `v_c`. Throws
/// InsufficientHorizon if not even one full window was recorded.
GammaReport gamma_windows(std::span<const ViewRecord> records, const Params& params, View v_c);

struct SeriesPoint {
  SimTime start_us = 0;
  SimTime end_us = 0;
  double ops_per_sec = 0;
  std::optional<double> latency_ms;  // nullopt when nothing finished in the window
};

struct Series {
  std::vector<SeriesPoint> points;
  double throughput_avg = 0;             // ops per simulated second
  std::optional<double> latency_avg_ms;  // nullopt when nothing finished
};

/// Time windows of `window_us`, advanced by `step_us` (defaults to the
/// window width). Empty when nothing was finalized.
Series instantaneous_series(std::span<const ViewRecord> records, SimTime window_us,
                            std::optional<SimTime> step_us = std::nullopt);

/// Same, over windows of `window_views` consecutive views.
Series instantaneous_series_views(std::span<const ViewRecord> records,
                                  std::uint64_t window_views = 50);

struct Summary {
  std::uint64_t views = 0;
  std::uint64_t ops_total = 0;
  SimTime end_us = 0;
  double throughput_avg = 0;
  std::optional<double> latency_avg_ms;
  double faulty_leader_pct = 0;
  double timeout_pct = 0;
  std::optional<View> gst_view;
  std::optional<View> v_c;
  std::optional<GammaReport> gamma;
};

Summary summarize(std::span<const ViewRecord> records, const Params& params,
                  const std::vector<bool>& faulty, SimTime gst_us);

}  // namespace swle::metrics
