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

#include "swle/metrics/metrics.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace swle::metrics {

namespace {

SimTime last_time(std::span<const ViewRecord> records) {
  SimTime t = 0;
  for (const auto& r : records) t = std::max({t, r.entry_us, r.decide_us});
  return t;
}

std::optional<double> mean_latency_ms(std::uint64_t ops, std::uint64_t latency_total) {
  if (ops == 0) return std::nullopt;
  return static_cast<double>(latency_total) / static_cast<double>(ops) / 1000.0;
}

double per_second(std::uint64_t ops, SimTime span_us) {
  if (span_us <= 0) return 0;
  return static_cast<double>(ops) * 1e6 / static_cast<double>(span_us);
}

}  // namespace

std::optional<ReplicaId> majority(std::span<const std::optional<ReplicaId>> leaders) {
  std::map<ReplicaId, std::size_t> count;
  for (const auto& l : leaders) {
    if (l) ++count[*l];
  }
  std::optional<ReplicaId> best;
  std::size_t best_count = 0;
  for (const auto& [id, c] : count) {
    if (c > best_count) {
      best = id;
      best_count = c;
    }
  }
  return best;
}

double faulty_leader_rate(std::span<const ViewRecord> records, const std::vector<bool>& faulty) {
  if (records.empty()) return 0;
  std::size_t bad = 0;
  for (const auto& r : records) {
    if (r.leader && *r.leader < faulty.size() && faulty[*r.leader]) ++bad;
  }
  return 100.0 * static_cast<double>(bad) / static_cast<double>(records.size());
}

double timeout_rate(std::span<const ViewRecord> records) {
  if (records.empty()) return 0;
  const auto n = std::count_if(records.begin(), records.end(),
                               [](const ViewRecord& r) { return r.timed_out; });
  return 100.0 * static_cast<double>(n) / static_cast<double>(records.size());
}

std::optional<View> gst_view(std::span<const ViewRecord> records, SimTime gst_us) {
  for (const auto& r : records) {
    if (r.entry_us >= gst_us) return r.view;
  }
  return std::nullopt;
}

std::optional<View> measure_v_c(std::span<const ViewRecord> records, SimTime gst_us) {
  const auto g = gst_view(records, gst_us);
  if (!g || records.empty()) return std::nullopt;
  View v_c = *g;
  for (const auto& r : records) {
    if (!r.timely) v_c = std::max(v_c, r.view);
  }
  if (v_c >= records.back().view) return std::nullopt;
  return v_c;
}

double gamma_sup(const Params& params) {
  const double n = params.n;
  return n - (n / static_cast<double>(params.theta) * params.f) *
                 (1.0 + static_cast<double>(params.t_z) / n);
}

GammaReport gamma_windows(std::span<const ViewRecord> records, const Params& params, View v_c) {
  GammaReport g;
  g.window = params.n;
  g.v_c = v_c;
  g.gamma = static_cast<double>(params.quorum()) / params.n;
  g.gamma_t = g.gamma * static_cast<double>(g.window);
  g.sup = gamma_sup(params);

  std::uint32_t in_window = 0;
  std::uint32_t count = 0;
  for (const auto& r : records) {
    if (r.view <= v_c) continue;
    if (r.unified && r.leader_correct) ++count;
    if (++in_window == g.window) {
      g.counts.push_back(count);
      in_window = 0;
      count = 0;
    }
  }
  if (g.counts.empty()) {
    throw InsufficientHorizon("no complete " + std::to_string(g.window) +
                              "-view window after view " + std::to_string(v_c));
  }
  std::uint64_t total = 0;
  for (auto c : g.counts) total += c;
  g.mean_c = static_cast<double>(total) / static_cast<double>(g.counts.size());
  return g;
}

Series instantaneous_series(std::span<const ViewRecord> records, SimTime window_us,
                            std::optional<SimTime> step_us) {
  if (window_us <= 0) throw std::invalid_argument("series window must be positive");
  const SimTime step = step_us.value_or(window_us);
  if (step <= 0) throw std::invalid_argument("series step must be positive");
  Series s;
  std::uint64_t ops = 0;
  std::uint64_t lat = 0;
  for (const auto& r : records) {
    ops += r.ops;
    lat += r.latency_us_total;
  }
  if (ops == 0) return s;
  const SimTime end = last_time(records);
  s.throughput_avg = per_second(ops, end);
  s.latency_avg_ms = mean_latency_ms(ops, lat);
  for (SimTime start = 0; start < end; start += step) {
    SeriesPoint p{start, start + window_us, 0, std::nullopt};
    std::uint64_t w_ops = 0;
    std::uint64_t w_lat = 0;
    for (const auto& r : records) {
      if (r.ops > 0 && r.decide_us >= p.start_us && r.decide_us < p.end_us) {
        w_ops += r.ops;
        w_lat += r.latency_us_total;
      }
    }
    p.ops_per_sec = per_second(w_ops, window_us);
    p.latency_ms = mean_latency_ms(w_ops, w_lat);
    s.points.push_back(p);
  }
  return s;
}

Series instantaneous_series_views(std::span<const ViewRecord> records,
                                  std::uint64_t window_views) {
  if (window_views == 0) throw std::invalid_argument("series window must be positive");
  Series s;
  std::uint64_t ops = 0;
  std::uint64_t lat = 0;
  for (const auto& r : records) {
    ops += r.ops;
    lat += r.latency_us_total;
  }
  if (ops == 0) return s;
  s.throughput_avg = per_second(ops, last_time(records));
  s.latency_avg_ms = mean_latency_ms(ops, lat);
  for (std::size_t i = 0; i + window_views <= records.size(); i += window_views) {
    const auto window = records.subspan(i, window_views);
    std::uint64_t w_ops = 0;
    std::uint64_t w_lat = 0;
    for (const auto& r : window) {
      w_ops += r.ops;
      w_lat += r.latency_us_total;
    }
    const SimTime start = std::max<SimTime>(window.front().entry_us, 0);
    const SimTime end = i + window_views < records.size() && records[i + window_views].entry_us >= 0
                            ? records[i + window_views].entry_us
                            : last_time(window);
    s.points.push_back({start, end, per_second(w_ops, end - start), mean_latency_ms(w_ops, w_lat)});
  }
  return s;
}

Summary summarize(std::span<const ViewRecord> records, const Params& params,
                  const std::vector<bool>& faulty, SimTime gst_us) {
  Summary s;
  s.views = records.size();
  std::uint64_t lat = 0;
  for (const auto& r : records) {
    s.ops_total += r.ops;
    lat += r.latency_us_total;
  }
  s.end_us = last_time(records);
  s.throughput_avg = per_second(s.ops_total, s.end_us);
  s.latency_avg_ms = mean_latency_ms(s.ops_total, lat);
  s.faulty_leader_pct = faulty_leader_rate(records, faulty);
  s.timeout_pct = timeout_rate(records);
  s.gst_view = gst_view(records, gst_us);
  s.v_c = measure_v_c(records, gst_us);
  if (s.v_c) {
    try {
      s.gamma = gamma_windows(records, params, *s.v_c);
    } catch (const InsufficientHorizon&) {
      s.gamma.reset();
    }
  }
  return s;
}

}  // namespace swle::metrics
