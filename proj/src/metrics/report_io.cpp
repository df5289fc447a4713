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

#include "swle/metrics/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace swle::metrics {

namespace {

// Six decimals is plenty and keeps the JSON text short and stable.
double rounded(double x) { return std::round(x * 1e6) / 1e6; }

template <class T>
nlohmann::ordered_json opt(const std::optional<T>& v) {
  if (!v) return nullptr;
  return *v;
}

}  // namespace

void write_views_csv(std::ostream& out, std::span<const ViewRecord> records) {
  out << "view,leader,unified,leader_correct,finalized,timed_out,entry_us,decide_us,ops\n";
  for (const auto& r : records) {
    out << r.view << ',';
    if (r.leader) out << *r.leader;
    out << ',' << (r.unified ? 1 : 0) << ',' << (r.leader_correct ? 1 : 0) << ','
        << (r.finalized ? 1 : 0) << ',' << (r.timed_out ? 1 : 0) << ',';
    if (r.entry_us >= 0) out << r.entry_us;
    out << ',';
    if (r.decide_us >= 0) out << r.decide_us;
    out << ',' << r.ops << '\n';
  }
}

std::string views_csv(std::span<const ViewRecord> records) {
  std::ostringstream ss;
  write_views_csv(ss, records);
  return ss.str();
}

nlohmann::ordered_json summary_json(const Summary& s) {
  nlohmann::ordered_json j;
  j["throughput_avg"] = rounded(s.throughput_avg);
  j["latency_avg"] = s.latency_avg_ms ? nlohmann::ordered_json(rounded(*s.latency_avg_ms))
                                      : nlohmann::ordered_json(nullptr);
  j["faulty_leader_pct"] = rounded(s.faulty_leader_pct);
  j["timeout_pct"] = rounded(s.timeout_pct);
  if (s.gamma) {
    const auto& g = *s.gamma;
    nlohmann::ordered_json gj;
    gj["window"] = g.window;
    gj["windows"] = g.counts.size();
    gj["mean_c"] = rounded(g.mean_c);
    gj["min_c"] = *std::min_element(g.counts.begin(), g.counts.end());
    gj["gamma"] = rounded(g.gamma);
    gj["gamma_t"] = rounded(g.gamma_t);
    gj["sup"] = rounded(g.sup);
    gj["v_c"] = g.v_c;
    j["gamma_report"] = gj;
  } else {
    j["gamma_report"] = nullptr;
  }
  j["v_c"] = opt(s.v_c);
  j["gst_view"] = opt(s.gst_view);
  j["views"] = s.views;
  j["ops_total"] = s.ops_total;
  j["end_us"] = s.end_us;
  return j;
}

}  // namespace swle::metrics
