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

#include "swle/sim/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace swle::sim {

namespace {

using nlohmann::json;

void require_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                  const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::uint64_t get_uint(const json& obj, const char* key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw ConfigError(where + ": '" + key + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

SimTime ms_to_us(const json& v, const std::string& what) {
  if (!v.is_number()) throw ConfigError(what + " must be a number");
  const double ms = v.get<double>();
  if (!std::isfinite(ms) || ms < 0) throw ConfigError(what + " must be finite and >= 0");
  return static_cast<SimTime>(std::llround(ms * 1000.0));
}

SimTime get_ms(const json& obj, const char* key, const std::string& where) {
  return ms_to_us(obj.at(key), where + ": '" + key + "'");
}

FaultSpec parse_fault(const json& j, std::size_t index) {
  const std::string where = "faults[" + std::to_string(index) + "]";
  require_keys(j, {"replica", "kind", "strategy", "from_view"}, where);
  if (!j.contains("replica") || !j.contains("kind")) {
    throw ConfigError(where + ": 'replica' and 'kind' are required");
  }
  FaultSpec spec;
  spec.replica = static_cast<ReplicaId>(get_uint(j, "replica", where));
  const auto kind = lower(j.at("kind").get<std::string>());
  if (kind == "crash") {
    spec.kind = FaultKind::Crash;
    if (j.contains("strategy")) throw ConfigError(where + ": crash faults take no strategy");
    if (j.contains("from_view")) spec.from_view = get_uint(j, "from_view", where);
    if (spec.from_view == 0) throw ConfigError(where + ": from_view must be >= 1");
  } else if (kind == "byzantine") {
    spec.kind = FaultKind::Byzantine;
    if (j.contains("from_view")) throw ConfigError(where + ": from_view applies to crash faults");
    if (!j.contains("strategy")) throw ConfigError(where + ": byzantine faults need a strategy");
    const auto s = lower(j.at("strategy").get<std::string>());
    if (s == "silent_leader") {
      spec.strategy = Strategy::SilentLeader;
    } else if (s == "reputation_builder") {
      spec.strategy = Strategy::ReputationBuilder;
    } else if (s == "mute") {
      spec.strategy = Strategy::Mute;
    } else {
      throw ConfigError(where + ": unknown strategy '" + s + "'");
    }
  } else {
    throw ConfigError(where + ": kind must be 'crash' or 'byzantine'");
  }
  return spec;
}

std::vector<std::vector<SimTime>> parse_square(const json& j, std::size_t size,
                                               const std::string& where) {
  if (!j.is_array() || j.size() != size) {
    throw ConfigError(where + ": expected a " + std::to_string(size) + "x" +
                      std::to_string(size) + " array");
  }
  std::vector<std::vector<SimTime>> out(size, std::vector<SimTime>(size, 0));
  for (std::size_t i = 0; i < size; ++i) {
    if (!j[i].is_array() || j[i].size() != size) {
      throw ConfigError(where + ": row " + std::to_string(i) + " has the wrong length");
    }
    for (std::size_t k = 0; k < size; ++k) {
      out[i][k] = ms_to_us(j[i][k], where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
  }
  return out;
}

// Faulty replicas go to the group with the lowest mean latency; correct
// replicas are spread round-robin over all groups in id order.
std::vector<std::uint32_t> default_assignment(std::uint32_t n, std::size_t groups,
                                              const std::vector<std::vector<SimTime>>& m,
                                              const std::vector<FaultSpec>& faults) {
  std::size_t fastest = 0;
  SimTime best = -1;
  for (std::size_t g = 0; g < groups; ++g) {
    SimTime sum = 0;
    for (auto v : m[g]) sum += v;
    if (best < 0 || sum < best) {
      best = sum;
      fastest = g;
    }
  }
  std::vector<std::uint32_t> out(n, 0);
  std::uint32_t next = 0;
  for (ReplicaId r = 0; r < n; ++r) {
    const bool faulty = std::any_of(faults.begin(), faults.end(),
                                    [r](const FaultSpec& s) { return s.replica == r; });
    if (faulty) {
      out[r] = static_cast<std::uint32_t>(fastest);
    } else {
      out[r] = next % static_cast<std::uint32_t>(groups);
      ++next;
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(FaultKind kind) {
  switch (kind) {
    case FaultKind::Correct: return "correct";
    case FaultKind::Crash: return "crash";
    case FaultKind::Byzantine: return "byzantine";
  }
  return "unknown";
}

std::string_view to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::SilentLeader: return "silent_leader";
    case Strategy::ReputationBuilder: return "reputation_builder";
    case Strategy::Mute: return "mute";
  }
  return "unknown";
}

Params ScenarioConfig::params() const {
  auto p = Params::make(n, t_f, theta_override);
  if (p.f != f) throw ConfigError("f must satisfy n = 3f + 1");
  return p;
}

const FaultSpec* ScenarioConfig::fault_of(ReplicaId replica) const {
  for (const auto& s : faults) {
    if (s.replica == replica && s.kind != FaultKind::Correct) return &s;
  }
  return nullptr;
}

std::vector<bool> ScenarioConfig::faulty_mask() const {
  std::vector<bool> mask(n, false);
  for (ReplicaId r = 0; r < n; ++r) mask[r] = is_faulty(r);
  return mask;
}

SimTime ScenarioConfig::effective_time_cap() const {
  if (time_cap_us) return *time_cap_us;
  return gst_us + static_cast<SimTime>(views + 10) * (timeout_us + 4 * delta_us) * 2;
}

void validate(const ScenarioConfig& c) {
  if (c.n < 4 || (c.n - 1) % 3 != 0) throw ConfigError("n must be 3f + 1 with f >= 1");
  if (c.f != (c.n - 1) / 3) throw ConfigError("f must satisfy n = 3f + 1");
  if (c.views < 1 || c.views > kMaxViews) {
    throw ConfigError("views must be in [1, " + std::to_string(kMaxViews) + "]");
  }
  if (c.timeout_us <= 0) throw ConfigError("timeout_ms must be positive");
  if (c.delta_us <= 0) throw ConfigError("delta_ms must be positive");
  if (c.batch_size == 0) throw ConfigError("batch_size must be positive");
  if (c.bandwidth_mbps < 0) throw ConfigError("bandwidth_mbps must be >= 0");
  std::set<ReplicaId> seen;
  for (const auto& s : c.faults) {
    if (s.replica >= c.n) throw ConfigError("fault replica id out of range");
    if (!seen.insert(s.replica).second) throw ConfigError("replica listed twice in faults");
  }
  if (seen.size() > c.f) throw ConfigError("more faulty replicas than f allows");
  for (auto v : c.pre_gst.victims) {
    if (v >= c.n) throw ConfigError("pre_gst victim id out of range");
  }
  if (c.latency_us.size() != c.n) throw ConfigError("latency matrix must be n x n");
  for (const auto& row : c.latency_us) {
    if (row.size() != c.n) throw ConfigError("latency matrix must be n x n");
  }
  try {
    (void)c.params();
  } catch (const ParamsError& e) {
    throw ConfigError(e.what());
  }
}

ScenarioConfig parse_config_text(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  ScenarioConfig c;
  try {
    require_keys(j,
                 {"name", "n", "f", "views", "seed", "gst_ms", "delta_ms", "timeout_ms",
                  "batch_size", "payload_bytes", "mechanism", "faults", "latency_matrix",
                  "latency_groups", "theta_override", "t_f", "jitter_ms", "pre_gst",
                  "processing_us", "bandwidth_mbps", "time_cap_ms"},
                 "config");
    if (!j.contains("n")) throw ConfigError("config: 'n' is required");
    c.n = static_cast<std::uint32_t>(get_uint(j, "n", "config"));
    c.f = j.contains("f") ? static_cast<std::uint32_t>(get_uint(j, "f", "config")) : (c.n - 1) / 3;
    if (j.contains("name")) c.name = j.at("name").get<std::string>();
    if (j.contains("views")) c.views = get_uint(j, "views", "config");
    if (j.contains("seed")) c.seed = get_uint(j, "seed", "config");
    if (j.contains("gst_ms")) c.gst_us = get_ms(j, "gst_ms", "config");
    if (j.contains("delta_ms")) c.delta_us = get_ms(j, "delta_ms", "config");
    if (j.contains("timeout_ms")) c.timeout_us = get_ms(j, "timeout_ms", "config");
    if (j.contains("batch_size")) c.batch_size = static_cast<std::uint32_t>(get_uint(j, "batch_size", "config"));
    if (j.contains("payload_bytes")) {
      c.payload_bytes = static_cast<std::uint32_t>(get_uint(j, "payload_bytes", "config"));
    }
    if (j.contains("mechanism")) {
      try {
        c.mechanism = engine::parse_mechanism(j.at("mechanism").get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
      }
    }
    if (j.contains("faults")) {
      const auto& arr = j.at("faults");
      if (!arr.is_array()) throw ConfigError("config: 'faults' must be an array");
      for (std::size_t i = 0; i < arr.size(); ++i) c.faults.push_back(parse_fault(arr[i], i));
    }
    if (j.contains("theta_override")) c.theta_override = get_uint(j, "theta_override", "config");
    if (j.contains("t_f")) c.t_f = get_uint(j, "t_f", "config");
    if (j.contains("jitter_ms")) c.jitter_us = get_ms(j, "jitter_ms", "config");
    if (j.contains("processing_us")) {
      c.processing_us = static_cast<SimTime>(get_uint(j, "processing_us", "config"));
    }
    if (j.contains("bandwidth_mbps")) {
      if (!j.at("bandwidth_mbps").is_number()) throw ConfigError("config: 'bandwidth_mbps' must be a number");
      c.bandwidth_mbps = j.at("bandwidth_mbps").get<double>();
    }
    if (j.contains("time_cap_ms")) c.time_cap_us = get_ms(j, "time_cap_ms", "config");
    if (j.contains("pre_gst")) {
      const auto& p = j.at("pre_gst");
      require_keys(p, {"policy", "max_ms", "victims", "delay_ms"}, "pre_gst");
      const auto policy = p.contains("policy") ? lower(p.at("policy").get<std::string>()) : "random";
      if (policy == "random") {
        c.pre_gst.kind = PreGstPolicy::Kind::Random;
        if (p.contains("victims") || p.contains("delay_ms")) {
          throw ConfigError("pre_gst: random policy takes only max_ms");
        }
        if (p.contains("max_ms")) c.pre_gst.max_us = get_ms(p, "max_ms", "pre_gst");
      } else if (policy == "targeting") {
        c.pre_gst.kind = PreGstPolicy::Kind::Targeting;
        if (p.contains("max_ms")) throw ConfigError("pre_gst: targeting policy takes victims and delay_ms");
        if (!p.contains("victims") || !p.at("victims").is_array()) {
          throw ConfigError("pre_gst: targeting policy needs a victims array");
        }
        for (const auto& v : p.at("victims")) {
          if (!v.is_number_unsigned()) throw ConfigError("pre_gst: victims must be replica ids");
          c.pre_gst.victims.push_back(v.get<ReplicaId>());
        }
        if (p.contains("delay_ms")) c.pre_gst.delay_us = get_ms(p, "delay_ms", "pre_gst");
      } else {
        throw ConfigError("pre_gst: policy must be 'random' or 'targeting'");
      }
    }

    if (j.contains("latency_matrix") && j.contains("latency_groups")) {
      throw ConfigError("config: give latency_matrix or latency_groups, not both");
    }
    if (j.contains("latency_matrix")) {
      c.latency_us = parse_square(j.at("latency_matrix"), c.n, "latency_matrix");
    } else if (j.contains("latency_groups")) {
      const auto& g = j.at("latency_groups");
      require_keys(g, {"matrix_ms", "assignment"}, "latency_groups");
      if (!g.contains("matrix_ms") || !g.at("matrix_ms").is_array() || g.at("matrix_ms").empty()) {
        throw ConfigError("latency_groups: 'matrix_ms' is required");
      }
      const auto groups = g.at("matrix_ms").size();
      const auto m = parse_square(g.at("matrix_ms"), groups, "latency_groups.matrix_ms");
      if (g.contains("assignment")) {
        const auto& a = g.at("assignment");
        if (!a.is_array() || a.size() != c.n) {
          throw ConfigError("latency_groups: 'assignment' must list a group per replica");
        }
        for (const auto& x : a) {
          if (!x.is_number_unsigned() || x.get<std::size_t>() >= groups) {
            throw ConfigError("latency_groups: assignment entry out of range");
          }
          c.latency_group.push_back(x.get<std::uint32_t>());
        }
      } else {
        c.latency_group = default_assignment(c.n, groups, m, c.faults);
      }
      c.latency_us.assign(c.n, std::vector<SimTime>(c.n, 0));
      for (ReplicaId a = 0; a < c.n; ++a) {
        for (ReplicaId b = 0; b < c.n; ++b) {
          c.latency_us[a][b] = m[c.latency_group[a]][c.latency_group[b]];
        }
      }
    } else {
      c.latency_us.assign(c.n, std::vector<SimTime>(c.n, 1000));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config has a field of the wrong type: ") + e.what());
  }
  validate(c);
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace swle::sim
