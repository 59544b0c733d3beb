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

// Post-processing of simulation traces. All metrics are rebuilt from the
// event log alone.
//
// Export file set (UTF-8, LF line endings, header row first):
//   queues.csv   tick,station,length          one row per tick per station
//   waits.csv    task,station,arrival,completion,wait   delivered tasks
//   events.jsonl one JSON object per event
//   summary.json aggregates plus the scenario echo

#ifndef QALLOC_METRICS_H_
#define QALLOC_METRICS_H_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "qalloc/sim_trace.h"

namespace qalloc {

class MalformedTrace : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QueueSeries {
  int station_count = 0;
  std::vector<std::vector<int>> lengths;  // [tick][station]
};

// Replays TaskSpawned (+1) and TaskPickedUp (-1) per station and samples
// after each tick. Throws MalformedTrace on an event for an unknown task or
// events out of time order.
QueueSeries ComputeQueueSeries(const SimTrace& trace);

struct TaskWait {
  TaskId task;
  StationId station;
  Tick arrival = 0;
  Tick completion = 0;
  Tick wait = 0;
};

struct CensoredWait {
  TaskId task;
  StationId station;
  Tick arrival = 0;
  Tick censored_wait = 0;  // horizon - arrival
};

inline constexpr Tick kDefaultHistogramBin = 20;

struct WaitStats {
  std::vector<TaskWait> delivered;  // ascending task id
  std::vector<CensoredWait> censored;
  double mean = 0.0;
  double median = 0.0;
  double stddev = 0.0;  // population standard deviation
  Tick max = 0;
  Tick bin_width = kDefaultHistogramBin;
  std::vector<int> histogram;  // bin k counts waits in [k*w, (k+1)*w)
};

// Waits run from arrival to delivery.
WaitStats ComputeWaitStats(const SimTrace& trace, Tick bin_width = kDefaultHistogramBin);

// One JSON object, no trailing newline.
std::string EventToJson(const SimEvent& event);

// Writes the four export files into `out_dir`, creating it if needed.
// Throws std::runtime_error naming the path on IO failure.
void ExportTrace(const SimTrace& trace, const std::filesystem::path& out_dir,
                 Tick bin_width = kDefaultHistogramBin);

// Reads a queues.csv back into a series.
QueueSeries ReadQueuesCsv(const std::filesystem::path& path);

// Scenario as JSON, without the RNG seed.
std::string ScenarioEchoJson(const ScenarioConfig& config);

}  // namespace qalloc

#endif  // QALLOC_METRICS_H_
