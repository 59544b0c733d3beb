// Copyright 2026 The qalloc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qalloc/metrics.h"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace qalloc {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string Describe(const SimEvent& e) { return EventToJson(e); }

ordered_json CellJson(Cell c) { return ordered_json::array({c.x, c.y}); }

ordered_json ScenarioJson(const ScenarioConfig& c) {
  ordered_json j;
  j["name"] = c.name;
  j["map"] = c.map_text;
  j["risk"] = {{"inflation_radius", c.risk.inflation_radius}, {"weight", c.risk.weight}};
  j["stations"] = ordered_json::array();
  for (const StationConfig& s : c.stations) {
    j["stations"].push_back({{"location", CellJson(s.location)},
                             {"arrival_prob", s.arrival_prob},
                             {"initial_tasks", s.initial_tasks},
                             {"capacity", s.capacity_m}});
  }
  j["dropoffs"] = ordered_json::array();
  for (const Cell& d : c.dropoffs) j["dropoffs"].push_back(CellJson(d));
  j["agents"] = ordered_json::array();
  for (const AgentConfig& a : c.agents) {
    j["agents"].push_back({{"home", CellJson(a.home)}, {"speed", a.speed}});
  }
  j["penalty"] = {{"q", c.penalty.q},
                  {"tau", c.penalty.tau},
                  {"tau_mode", std::string(ToString(c.penalty.tau_mode))}};
  j["global_task_cap"] = c.global_task_cap;
  j["horizon"] = c.horizon;
  return j;
}

std::ofstream OpenOut(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void CloseOut(std::ofstream& out, const std::filesystem::path& path) {
  out.close();
  if (!out) throw std::runtime_error("error writing " + path.string());
}

}  // namespace

std::string EventToJson(const SimEvent& e) {
  ordered_json j;
  j["time"] = e.time;
  j["kind"] = std::string(ToString(e.kind));
  if (e.task) j["task"] = e.task->value();
  if (e.agent) j["agent"] = e.agent->value();
  if (e.station) j["station"] = e.station->value();
  if (e.previous_agent) j["previous_agent"] = e.previous_agent->value();
  return j.dump();
}

std::string ScenarioEchoJson(const ScenarioConfig& config) {
  return ScenarioJson(config).dump();
}

QueueSeries ComputeQueueSeries(const SimTrace& trace) {
  QueueSeries series;
  series.station_count = trace.station_count;
  std::vector<int> current(static_cast<std::size_t>(trace.station_count), 0);
  std::map<TaskId, StationId> station_of;
  std::size_t next = 0;
  Tick last_time = 0;
  for (Tick t = 0; t < trace.horizon; ++t) {
    for (; next < trace.events.size() && trace.events[next].time <= t; ++next) {
      const SimEvent& e = trace.events[next];
      if (e.time < last_time) throw MalformedTrace("event out of time order: " + Describe(e));
      last_time = e.time;
      if (e.kind == EventKind::kTaskSpawned) {
        if (!e.task || !e.station || e.station->value() < 0 ||
            e.station->value() >= trace.station_count) {
          throw MalformedTrace("spawn without a valid task and station: " + Describe(e));
        }
        if (!station_of.emplace(*e.task, *e.station).second) {
          throw MalformedTrace("task spawned twice: " + Describe(e));
        }
        ++current[static_cast<std::size_t>(e.station->value())];
        continue;
      }
      if (!e.task) continue;
      auto it = station_of.find(*e.task);
      if (it == station_of.end()) {
        throw MalformedTrace("event for a task never spawned: " + Describe(e));
      }
      if (e.kind == EventKind::kTaskPickedUp) {
        int& len = current[static_cast<std::size_t>(it->second.value())];
        if (--len < 0) throw MalformedTrace("queue length below zero: " + Describe(e));
      }
    }
    series.lengths.push_back(current);
  }
  if (next < trace.events.size()) {
    throw MalformedTrace("event after the horizon: " + Describe(trace.events[next]));
  }
  return series;
}

WaitStats ComputeWaitStats(const SimTrace& trace, Tick bin_width) {
  if (bin_width <= 0) throw std::invalid_argument("histogram bin width must be > 0");
  WaitStats stats;
  stats.bin_width = bin_width;
  std::map<TaskId, std::pair<StationId, Tick>> spawned;
  std::map<TaskId, Tick> delivered_at;
  for (const SimEvent& e : trace.events) {
    if (!e.task) continue;
    if (e.kind == EventKind::kTaskSpawned) {
      if (!e.station) throw MalformedTrace("spawn without a station: " + Describe(e));
      spawned.emplace(*e.task, std::make_pair(*e.station, e.time));
      continue;
    }
    if (!spawned.count(*e.task)) {
      throw MalformedTrace("event for a task never spawned: " + Describe(e));
    }
    if (e.kind == EventKind::kTaskDelivered) delivered_at[*e.task] = e.time;
  }
  for (const auto& [task, info] : spawned) {
    const auto& [station, arrival] = info;
    if (auto it = delivered_at.find(task); it != delivered_at.end()) {
      stats.delivered.push_back(TaskWait{task, station, arrival, it->second, it->second - arrival});
    } else {
      stats.censored.push_back(CensoredWait{task, station, arrival, trace.horizon - arrival});
    }
  }
  if (stats.delivered.empty()) return stats;

  std::vector<Tick> waits;
  for (const TaskWait& w : stats.delivered) waits.push_back(w.wait);
  std::sort(waits.begin(), waits.end());
  const std::size_t n = waits.size();
  double sum = 0.0;
  for (Tick w : waits) sum += static_cast<double>(w);
  stats.mean = sum / static_cast<double>(n);
  stats.median = n % 2 == 1 ? static_cast<double>(waits[n / 2])
                            : 0.5 * static_cast<double>(waits[n / 2 - 1] + waits[n / 2]);
  double sq = 0.0;
  for (Tick w : waits) sq += (static_cast<double>(w) - stats.mean) * (static_cast<double>(w) - stats.mean);
  stats.stddev = std::sqrt(sq / static_cast<double>(n));
  stats.max = waits.back();
  stats.histogram.assign(static_cast<std::size_t>(stats.max / bin_width) + 1, 0);
  for (Tick w : waits) ++stats.histogram[static_cast<std::size_t>(w / bin_width)];
  return stats;
}

void ExportTrace(const SimTrace& trace, const std::filesystem::path& out_dir, Tick bin_width) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create " + out_dir.string() + ": " + ec.message());

  const QueueSeries series = ComputeQueueSeries(trace);
  const WaitStats waits = ComputeWaitStats(trace, bin_width);

  const auto queues_path = out_dir / "queues.csv";
  std::ofstream queues = OpenOut(queues_path);
  queues << "tick,station,length\n";
  for (std::size_t t = 0; t < series.lengths.size(); ++t) {
    for (std::size_t s = 0; s < series.lengths[t].size(); ++s) {
      queues << t << ',' << s << ',' << series.lengths[t][s] << '\n';
    }
  }
  CloseOut(queues, queues_path);

  const auto waits_path = out_dir / "waits.csv";
  std::ofstream waits_out = OpenOut(waits_path);
  waits_out << "task,station,arrival,completion,wait\n";
  for (const TaskWait& w : waits.delivered) {
    waits_out << w.task << ',' << w.station << ',' << w.arrival << ',' << w.completion << ','
              << w.wait << '\n';
  }
  CloseOut(waits_out, waits_path);

  const auto events_path = out_dir / "events.jsonl";
  std::ofstream events = OpenOut(events_path);
  for (const SimEvent& e : trace.events) events << EventToJson(e) << '\n';
  CloseOut(events, events_path);

  ordered_json summary;
  summary["scenario"] = trace.config.name;
  summary["seed"] = trace.config.rng_seed;
  summary["horizon"] = trace.horizon;
  summary["spawned"] = waits.delivered.size() + waits.censored.size();
  summary["delivered"] = waits.delivered.size();
  summary["undelivered"] = waits.censored.size();
  summary["mean_wait"] = waits.mean;
  summary["median_wait"] = waits.median;
  summary["max_wait"] = waits.max;
  summary["stddev_wait"] = waits.stddev;
  summary["histogram"] = {{"bin_width", waits.bin_width}, {"counts", waits.histogram}};
  summary["final_queue_lengths"] =
      series.lengths.empty() ? std::vector<int>(static_cast<std::size_t>(series.station_count), 0)
                             : series.lengths.back();
  summary["censored"] = ordered_json::array();
  for (const CensoredWait& c : waits.censored) {
    summary["censored"].push_back({{"task", c.task.value()},
                                   {"station", c.station.value()},
                                   {"arrival", c.arrival},
                                   {"censored_wait", c.censored_wait}});
  }
  summary["config"] = ScenarioJson(trace.config);
  const auto summary_path = out_dir / "summary.json";
  std::ofstream summary_out = OpenOut(summary_path);
  summary_out << summary.dump(2) << '\n';
  CloseOut(summary_out, summary_path);
}

QueueSeries ReadQueuesCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "tick,station,length") {
    throw std::runtime_error(path.string() + ": missing header row");
  }
  QueueSeries series;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    std::istringstream fields(line);
    long long tick = 0;
    int station = 0;
    int length = 0;
    char c1 = 0;
    char c2 = 0;
    if (!(fields >> tick >> c1 >> station >> c2 >> length) || c1 != ',' || c2 != ',' ||
        tick < 0 || station < 0) {
      throw std::runtime_error(path.string() + ": malformed row " + std::to_string(row));
    }
    const auto t = static_cast<std::size_t>(tick);
    if (series.lengths.size() <= t) series.lengths.resize(t + 1);
    auto& sample = series.lengths[t];
    if (sample.size() <= static_cast<std::size_t>(station)) {
      sample.resize(static_cast<std::size_t>(station) + 1, 0);
    }
    sample[static_cast<std::size_t>(station)] = length;
    series.station_count = std::max(series.station_count, station + 1);
  }
  for (auto& sample : series.lengths) {
    sample.resize(static_cast<std::size_t>(series.station_count), 0);
  }
  return series;
}

}  // namespace qalloc
