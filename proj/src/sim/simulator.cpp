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

#include "swle/sim/simulator.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <queue>
#include <sstream>

#include "swle/authenticator.hpp"
#include "swle/engine/replica.hpp"
#include "swle/metrics/report_io.hpp"
#include "swle/sim/network.hpp"
#include "swle/sim/strategy.hpp"

namespace swle::sim {

void GlobalChecker::on_claim(ReplicaId replica, View view, ReplicaId proposer) {
  const auto [it, fresh] = claims_.try_emplace(view, Seen{proposer, replica});
  if (!fresh && it->second.value != proposer) {
    throw CheckFailure("conflicting leadership claims in view " + std::to_string(view) +
                       ": replica " + std::to_string(it->second.first_reporter) +
                       " accepted proposer " + std::to_string(it->second.value) + ", replica " +
                       std::to_string(replica) + " accepted proposer " + std::to_string(proposer));
  }
}

void GlobalChecker::on_commit(ReplicaId replica, View node_view, Digest digest) {
  const auto [it, fresh] = commits_.try_emplace(node_view, digest, replica);
  if (!fresh && it->second.first != digest) {
    throw CheckFailure("two different nodes finalized for view " + std::to_string(node_view) +
                       " (replicas " + std::to_string(it->second.second) + " and " +
                       std::to_string(replica) + ")");
  }
}

void GlobalChecker::check_leader_list(ReplicaId replica, const LeaderList& list) const {
  bool gap = false;
  for (const auto& s : list.slots()) {
    if (!s.elected_leader) {
      gap = true;
    } else if (gap) {
      throw CheckFailure("leader window of replica " + std::to_string(replica) +
                         " has an elected slot after an empty one (view " +
                         std::to_string(s.view) + ")");
    }
  }
}

namespace {

enum class EventType : std::uint8_t { Deliver, Timer, Inject };

struct Event {
  SimTime time;
  std::uint64_t seq;
  EventType type;
  ReplicaId to;
  ReplicaId from;
  View view;  // timers only
  engine::MessagePtr msg;
};

struct Later {
  bool operator()(const Event& a, const Event& b) const {
    return a.time != b.time ? a.time > b.time : a.seq > b.seq;
  }
};

struct TraceEntry {
  SimTime time;
  EventType type;
  ReplicaId from;
  ReplicaId to;
  View view;
  std::string_view kind;
};

struct NodeAccum {
  View view = 0;
  View decided_in = 0;
  std::uint32_t batch = 0;
  SimTime created_us = 0;
  std::vector<SimTime> commit_times;
};

struct ViewAccum {
  std::vector<std::optional<ReplicaId>> leaders;
  bool timely = true;
  SimTime entry_us = -1;
};

class World final : public engine::ReplicaEnv, public engine::ReplicaObserver {
 public:
  World(const ScenarioConfig& config, const SimOptions& options)
      : config_(config),
        options_(options),
        params_(config.params()),
        network_(config, config.seed ^ 0x6e6574776f726bULL),
        faulty_(config.faulty_mask()),
        accum_(config.views + 1) {
    if (options.permissive_auth) {
      auth_ = std::make_unique<PermissiveAuthenticator>();
    } else {
      auth_ = std::make_unique<SimAuthenticator>(config.seed, config.n);
    }
    engine::EngineConfig ec{config.timeout_us, config.batch_size, config.payload_bytes};
    for (ReplicaId r = 0; r < config.n; ++r) {
      specs_.push_back(config.fault_of(r));
      replicas_.push_back(std::make_unique<engine::Replica>(
          r, params_, ec, engine::make_election(config.mechanism, params_, r, *auth_), *auth_,
          *this, faulty_[r] ? nullptr : this));
    }
    for (auto& a : accum_) a.leaders.assign(config.n, std::nullopt);
    correct_ = static_cast<std::size_t>(std::count(faulty_.begin(), faulty_.end(), false));
    passed_.assign(config.n, false);
  }

  SimulationReport run() {
    const SimTime cap = config_.effective_time_cap();
    guarded([&] {
      for (ReplicaId r = 0; r < config_.n; ++r) {
        if (!processes_input(specs_[r], 1)) continue;
        active_ = r;
        replicas_[r]->start();
        flush();
      }
    });
    for (const auto& inj : options_.injections) {
      push(Event{inj.at, 0, EventType::Inject, inj.to, inj.to, 0, inj.msg});
    }

    while (!queue_.empty() && passed_count_ < correct_) {
      Event ev = queue_.top();
      queue_.pop();
      if (ev.time > cap) break;
      now_ = ev.time;
      ++events_;
      record_trace(ev);
      auto& replica = *replicas_[ev.to];
      if (!processes_input(specs_[ev.to], replica.current_view())) continue;
      guarded([&] {
        active_ = ev.to;
        if (ev.type == EventType::Timer) {
          replica.on_timer(ev.view);
        } else {
          replica.on_message(ev.msg);
        }
        flush();
      });
    }

    SimulationReport report;
    report.config = config_;
    report.params = params_;
    report.events = events_;
    report.end_us = now_;
    report.horizon_reached = passed_count_ >= correct_;
    report.records = build_records();
    report.summary = metrics::summarize(report.records, params_, faulty_, config_.gst_us);
    report.final_scores.resize(config_.n);
    for (ReplicaId r = 0; r < config_.n; ++r) {
      if (faulty_[r]) continue;
      if (const auto* m = replicas_[r]->election().reputation()) {
        report.final_scores[r].assign(m->scores().begin(), m->scores().end());
      }
    }
    return report;
  }

  // ReplicaEnv
  SimTime now() const override { return now_; }
  void send(ReplicaId from, ReplicaId to, engine::MessagePtr msg) override {
    (void)from;
    outbox_.push_back({to, std::move(msg)});
  }
  void broadcast(ReplicaId from, engine::MessagePtr msg) override {
    (void)from;
    outbox_.push_back({std::nullopt, std::move(msg)});
  }
  void set_timer(ReplicaId owner, View view, SimTime at) override {
    push(Event{at, 0, EventType::Timer, owner, owner, view, nullptr});
  }

  // ReplicaObserver (correct replicas only)
  void on_enter(ReplicaId r, View v, ReplicaId leader, bool elected_known) override {
    if (const auto* list = replicas_[r]->election().leader_list()) checker_.check_leader_list(r, *list);
    mark_passed(r, v);
    if (v > config_.views) return;
    auto& a = accum_[v];
    a.leaders[r] = leader;
    if (!elected_known) a.timely = false;
    if (a.entry_us < 0 || now_ < a.entry_us) a.entry_us = now_;
  }
  void on_skip(ReplicaId r, View v, ReplicaId leader) override {
    mark_passed(r, v);
    if (v <= config_.views && !accum_[v].leaders[r]) accum_[v].leaders[r] = leader;
  }
  void on_claim(ReplicaId r, View v, ReplicaId proposer) override {
    checker_.on_claim(r, v, proposer);
    if (v <= config_.views) accum_[v].leaders[r] = proposer;
  }
  void on_commit(ReplicaId r, const engine::Proposal& node, View decided_in) override {
    checker_.on_commit(r, node.view, node.digest);
    auto [it, fresh] = nodes_.try_emplace(node.digest);
    if (fresh) {
      it->second.view = node.view;
      it->second.decided_in = decided_in;
      it->second.batch = node.batch;
      it->second.created_us = node.created_us;
    }
    it->second.commit_times.push_back(now_);
  }

 private:
  template <class F>
  void guarded(F&& body) {
    try {
      body();
    } catch (const CheckFailure& e) {
      throw InvariantViolation(e.what(), format_trace());
    } catch (const engine::SafetyViolation& e) {
      throw InvariantViolation(e.what(), format_trace());
    } catch (const std::logic_error& e) {
      throw InvariantViolation(std::string("replica state invariant: ") + e.what(), format_trace());
    }
  }

  void push(Event ev) {
    ev.seq = next_seq_++;
    queue_.push(std::move(ev));
  }

  void flush() {
    if (outbox_.empty()) return;
    auto out = std::move(outbox_);
    outbox_.clear();
    const ReplicaId from = active_;
    const auto* spec = specs_[from];
    if (spec) out = byzantine_step(*spec, replicas_[from]->current_view(), std::move(out));
    const SimTime proc = processing_delay(spec, config_.processing_us);
    for (auto& o : out) {
      const auto bytes = engine::message_size(*o.msg);
      if (o.to) {
        deliver(from, *o.to, bytes, proc, o.msg);
      } else {
        for (ReplicaId to = 0; to < config_.n; ++to) deliver(from, to, bytes, proc, o.msg);
      }
    }
  }

  void deliver(ReplicaId from, ReplicaId to, std::size_t bytes, SimTime proc,
               const engine::MessagePtr& msg) {
    const SimTime at = network_.delivery_time(from, to, bytes, now_, proc);
    push(Event{at, 0, EventType::Deliver, to, from, 0, msg});
  }

  void mark_passed(ReplicaId r, View v) {
    if (v > config_.views && !passed_[r]) {
      passed_[r] = true;
      ++passed_count_;
    }
  }

  void record_trace(const Event& ev) {
    if (options_.trace_capacity == 0) return;
    if (trace_.size() == options_.trace_capacity) trace_.pop_front();
    trace_.push_back(TraceEntry{ev.time, ev.type, ev.from, ev.to,
                                ev.msg ? engine::message_view(*ev.msg) : ev.view,
                                ev.msg ? engine::message_kind(*ev.msg) : std::string_view("timer")});
  }

  std::vector<std::string> format_trace() const {
    std::vector<std::string> out;
    for (const auto& t : trace_) {
      std::ostringstream ss;
      ss << "t=" << t.time << "us ";
      switch (t.type) {
        case EventType::Deliver: ss << "deliver " << t.kind << " v=" << t.view << ' ' << t.from << "->" << t.to; break;
        case EventType::Inject: ss << "inject " << t.kind << " v=" << t.view << " ->" << t.to; break;
        case EventType::Timer: ss << "timer v=" << t.view << " @" << t.to; break;
      }
      out.push_back(ss.str());
    }
    return out;
  }

  std::vector<metrics::ViewRecord> build_records() const {
    std::vector<metrics::ViewRecord> records(config_.views);
    const std::size_t q = params_.quorum();
    auto qth = [q](std::vector<SimTime> times) {
      std::sort(times.begin(), times.end());
      return times[std::min(q, times.size()) - 1];
    };
    for (View v = 1; v <= config_.views; ++v) {
      auto& r = records[v - 1];
      const auto& a = accum_[v];
      r.view = v;
      r.leaders = a.leaders;
      r.leader = metrics::majority(r.leaders);
      r.unified = r.leader.has_value();
      for (ReplicaId id = 0; id < config_.n; ++id) {
        if (!faulty_[id] && r.leaders[id] != r.leader) r.unified = false;
      }
      r.leader_correct = r.leader && !faulty_[*r.leader];
      r.timely = a.timely;
      r.entry_us = a.entry_us;
    }
    // Iterate nodes in view order so the output does not depend on hashing.
    std::map<View, const NodeAccum*> ordered;
    for (const auto& [digest, node] : nodes_) ordered.emplace(node.view, &node);
    for (const auto& [view, node] : ordered) {
      const SimTime done = qth(node->commit_times);
      if (node->view == node->decided_in && view <= config_.views) {
        auto& r = records[view - 1];
        r.finalized = true;
        r.decide_us = done;
      }
      if (node->decided_in >= 1 && node->decided_in <= config_.views) {
        auto& r = records[node->decided_in - 1];
        r.ops += node->batch;
        r.latency_us_total += static_cast<std::uint64_t>(done - node->created_us) * node->batch;
      }
    }
    for (auto& r : records) r.timed_out = !r.finalized;
    return records;
  }

  ScenarioConfig config_;
  SimOptions options_;
  Params params_;
  std::unique_ptr<Authenticator> auth_;
  NetworkModel network_;
  std::vector<bool> faulty_;
  std::vector<const FaultSpec*> specs_;
  std::vector<std::unique_ptr<engine::Replica>> replicas_;
  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  std::uint64_t next_seq_ = 0;
  SimTime now_ = 0;
  std::uint64_t events_ = 0;
  ReplicaId active_ = 0;
  std::vector<Outbound> outbox_;
  std::deque<TraceEntry> trace_;
  GlobalChecker checker_;
  std::vector<ViewAccum> accum_;
  std::unordered_map<Digest, NodeAccum> nodes_;
  std::vector<bool> passed_;
  std::size_t passed_count_ = 0;
  std::size_t correct_ = 0;
};

}  // namespace

SimulationReport simulate(const ScenarioConfig& config, const SimOptions& options) {
  validate(config);
  World world(config, options);
  return world.run();
}

nlohmann::ordered_json report_json(const SimulationReport& report) {
  nlohmann::ordered_json j;
  j["scenario"] = report.config.name;
  j["mechanism"] = std::string(engine::to_string(report.config.mechanism));
  j["seed"] = report.config.seed;
  j["n"] = report.config.n;
  j["f"] = report.config.f;
  j["horizon_reached"] = report.horizon_reached;
  const auto summary = metrics::summary_json(report.summary);
  for (const auto& [key, value] : summary.items()) j[key] = value;
  return j;
}

}  // namespace swle::sim
