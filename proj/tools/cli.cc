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

#include "cli.h"

#ifdef QALLOC_CLI11_PACKAGE
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>

#include "qalloc/assignment.h"
#include "qalloc/metrics.h"
#include "qalloc/scenario.h"
#include "qalloc/simulator.h"

namespace qalloc::cli {
namespace {

// Thrown for problems the user can fix from the command line.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<Tick> horizon;
  std::optional<double> q;
  std::optional<double> tau;
  std::optional<std::string> tau_mode;
  std::optional<int> m;
  std::string out_dir;
};

void AddOverrideFlags(CLI::App& cmd, Overrides& o) {
  cmd.add_option("--seed", o.seed, "RNG seed");
  cmd.add_option("--horizon", o.horizon, "Ticks to simulate")->check(CLI::PositiveNumber);
  cmd.add_option("--q", o.q, "Queue penalty weight")->check(CLI::NonNegativeNumber);
  cmd.add_option("--tau", o.tau, "Waiting penalty weight")->check(CLI::NonNegativeNumber);
  cmd.add_option("--tau-mode", o.tau_mode, "elapsed_time or total_count")
      ->check(CLI::IsMember({"elapsed_time", "total_count"}));
  cmd.add_option("--m", o.m, "Tasks per station allocated at once")->check(CLI::PositiveNumber);
}

void ApplyOverrides(ScenarioConfig& c, const Overrides& o) {
  if (o.seed) c.rng_seed = *o.seed;
  if (o.horizon) c.horizon = *o.horizon;
  if (o.q) c.penalty.q = *o.q;
  if (o.tau) c.penalty.tau = *o.tau;
  if (o.tau_mode) c.penalty.tau_mode = *ParseTauMode(*o.tau_mode);
  if (o.m) {
    for (StationConfig& s : c.stations) s.capacity_m = *o.m;
  }
}

ScenarioConfig LoadTarget(const std::string& target) {
  const auto& presets = ScenarioPresets();
  if (auto it = presets.find(target); it != presets.end()) return it->second;
  const std::filesystem::path path(target);
  if (path.extension() != ".yaml" && path.extension() != ".yml" &&
      !std::filesystem::exists(path)) {
    throw UsageError("unknown preset '" + target + "' (expected S1..S5 or a config file)");
  }
  if (!std::filesystem::exists(path)) throw UsageError("config file not found: " + target);
  try {
    return LoadScenarioFile(path);
  } catch (const ConfigError& e) {
    throw UsageError(target + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(target + ": " + e.what());
  }
}

// Shortest form that still round-trips typical inputs: 10000, 0.15, 2.5.
std::string Num(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

std::string JoinInts(const std::vector<int>& v) {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  return s.str();
}

int DoRun(const std::string& target, const Overrides& o, std::ostream& out) {
  ScenarioConfig config = LoadTarget(target);
  ApplyOverrides(config, o);
  if (auto problems = ValidateScenario(config); !problems.empty()) {
    std::string msg = target + ": invalid scenario";
    for (const auto& p : problems) msg += "; " + p;
    throw UsageError(msg);
  }
  const SimTrace trace = RunScenario(config);
  const std::filesystem::path out_dir =
      o.out_dir.empty() ? std::filesystem::path("out") / config.name
                       : std::filesystem::path(o.out_dir);
  ExportTrace(trace, out_dir);
  const WaitStats waits = ComputeWaitStats(trace);
  const QueueSeries series = ComputeQueueSeries(trace);
  std::ostringstream mean;
  mean << std::fixed << std::setprecision(2) << waits.mean;
  out << config.name << " seed=" << config.rng_seed << " delivered=" << waits.delivered.size()
      << " mean_wait=" << mean.str() << " max_wait=" << waits.max
      << " final_queues=" << (series.lengths.empty() ? "" : JoinInts(series.lengths.back()))
      << " q=" << Num(config.penalty.q) << " tau=" << Num(config.penalty.tau)
      << " tau_mode=" << ToString(config.penalty.tau_mode) << " out=" << out_dir.string()
      << '\n';
  return kExitOk;
}

int DoSolve(const std::string& file, std::optional<int> m, std::ostream& out) {
  std::ifstream in(file);
  if (!in) throw UsageError("instance file not found: " + file);
  CostInstance instance;
  try {
    instance = ReadInstance(in);
  } catch (const std::invalid_argument& e) {
    throw UsageError(file + ": " + e.what());
  }
  if (m) {
    for (const EdgeCost& e : instance.edges) instance.caps[e.station] = *m;
  }
  AssignmentProblem problem;
  try {
    problem = AssignmentProblem::FromEdgeCosts(instance.edges, instance.caps);
  } catch (const std::invalid_argument& e) {
    throw UsageError(file + ": " + e.what());
  }
  const Assignment a = Solve(problem);
  for (const auto& [agent, task] : a.pairs) out << "agent " << agent << " -> task " << task << '\n';
  out << "pairs=" << a.cardinality() << " objective=" << a.objective
      << " total_cost=" << Num(a.total_cost) << '\n';
  return kExitOk;
}

int DoPresets(std::ostream& out) {
  for (const auto& [name, c] : ScenarioPresets()) {
    out << name << ":";
    out << " initial=";
    for (std::size_t i = 0; i < c.stations.size(); ++i) {
      out << (i ? "/" : "") << c.stations[i].initial_tasks;
    }
    out << " arrival=";
    for (std::size_t i = 0; i < c.stations.size(); ++i) {
      out << (i ? "/" : "") << Num(c.stations[i].arrival_prob);
    }
    out << " agents=" << c.agents.size() << " q=" << Num(c.penalty.q)
        << " tau=" << Num(c.penalty.tau)
        << " tau_mode=" << ToString(c.penalty.tau_mode) << " cap=" << c.global_task_cap
        << " horizon=" << c.horizon << '\n';
  }
  return kExitOk;
}

int DoValidate(const std::string& file, const Overrides& o, std::ostream& out) {
  if (!std::filesystem::exists(file)) throw UsageError("config file not found: " + file);
  ScenarioConfig config = LoadTarget(file);
  ApplyOverrides(config, o);
  const auto problems = ValidateScenario(config);
  if (!problems.empty()) {
    std::string msg = file + ": invalid scenario";
    for (const auto& p : problems) msg += "; " + p;
    throw UsageError(msg);
  }
  out << file << ": ok (" << config.stations.size() << " stations, " << config.agents.size()
      << " agents)\n";
  return kExitOk;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-robot pick-up and delivery with queue-aware auctions", "qalloc"};
  app.require_subcommand(1);

  Overrides run_flags;
  std::string run_target;
  CLI::App* run = app.add_subcommand("run", "Run a preset (S1..S5) or a YAML scenario");
  run->add_option("scenario", run_target, "Preset name or config file")->required();
  AddOverrideFlags(*run, run_flags);
  run->add_option("--out", run_flags.out_dir, "Output directory (default out/<name>)");

  std::string solve_file;
  std::optional<int> solve_m;
  CLI::App* solve = app.add_subcommand("solve", "Solve one assignment instance file");
  solve->add_option("instance", solve_file, "Instance file")->required();
  solve->add_option("--m", solve_m, "Cap for every station")->check(CLI::PositiveNumber);

  CLI::App* presets = app.add_subcommand("presets", "List the built-in scenarios");

  Overrides validate_flags;
  std::string validate_file;
  CLI::App* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("config", validate_file, "Config file")->required();
  AddOverrideFlags(*validate, validate_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help_out;
    std::ostringstream err_out;
    const int code = app.exit(e, help_out, err_out);
    out << help_out.str();
    err << err_out.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) return DoRun(run_target, run_flags, out);
    if (*solve) return DoSolve(solve_file, solve_m, out);
    if (*presets) return DoPresets(out);
    if (*validate) return DoValidate(validate_file, validate_flags, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "runtime failure: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace qalloc::cli
