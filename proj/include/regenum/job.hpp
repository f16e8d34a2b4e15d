// Copyright 2026 The regenum Authors.
//
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

#pragma once

// One enumeration/search job end to end: configuration, execution in the
// chosen mode, output files and the final report.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "regenum/error.hpp"
#include "regenum/generator.hpp"
#include "regenum/graph6.hpp"
#include "regenum/ledger.hpp"
#include "regenum/metrics.hpp"
#include "regenum/scheduler.hpp"
#include "regenum/search.hpp"

namespace regenum {

enum class Mode { kLocal, kMaster, kWorker, kMono };

inline std::optional<Mode> parse_mode(std::string_view s) {
  if (s == "local") return Mode::kLocal;
  if (s == "master") return Mode::kMaster;
  if (s == "worker") return Mode::kWorker;
  if (s == "mono") return Mode::kMono;
  return std::nullopt;
}

struct JobConfig {
  DegreeSpec spec;
  std::optional<int> split_level;
  Mode mode = Mode::kLocal;
  int worker_count = 1;
  std::string listen;  // master mode
  std::string master;  // worker mode
  FilterSpec filter;
  std::optional<std::filesystem::path> checkpoint;
  std::optional<std::filesystem::path> champions;
  std::optional<std::filesystem::path> histogram;
  std::optional<std::filesystem::path> graphs;  // every generated graph, graph6 per line
  std::optional<double> task_timeout_secs;

  void validate() const {
    spec.validate();
    filter.validate();
    if (worker_count < 1) throw Error(ErrorCode::kInvalidArgument, "--workers must be at least 1");
    if (split_level) check_split_level(spec, *split_level);
    if (mode == Mode::kMaster && listen.empty()) throw Error(ErrorCode::kInvalidArgument, "master mode needs --listen");
    if (mode == Mode::kWorker && master.empty()) throw Error(ErrorCode::kInvalidArgument, "worker mode needs --master");
    if ((mode == Mode::kMaster || mode == Mode::kWorker) && !split_level) {
      throw Error(ErrorCode::kInvalidArgument, "master and worker modes need an explicit --split-level");
    }
    if (checkpoint && mode != Mode::kMaster) {
      throw Error(ErrorCode::kInvalidArgument, "--checkpoint is only used in master mode");
    }
    if (graphs && mode != Mode::kLocal && mode != Mode::kMono) {
      throw Error(ErrorCode::kInvalidArgument, "--graphs needs local or mono mode");
    }
  }

  int resolved_split_level() const {
    if (mode == Mode::kMono) return 0;
    return split_level ? *split_level : default_split_level(spec, worker_count);
  }

  JobIdentity identity(std::uint64_t task_count) const {
    return {spec, resolved_split_level(), task_count, filter.digest()};
  }
};

inline std::string with_commas(std::uint64_t value) {
  std::string digits = std::to_string(value);
  std::string out;
  const int lead = static_cast<int>(digits.size() % 3);
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i != 0 && (static_cast<int>(i) - lead) % 3 == 0) out.push_back(',');
    out.push_back(digits[i]);
  }
  return out;
}

struct JobReport {
  DegreeSpec spec;
  int split_level = 0;
  std::uint64_t task_count = 0;
  std::string mode;
  SearchResult result;
  std::optional<AsplValue> lower_bound;
  std::optional<std::filesystem::path> champions_path;
  double elapsed_seconds = 0;
  std::optional<MasterStats> master_stats;

  // Everything except timing; equal for equal jobs however they ran.
  std::string summary() const {
    std::ostringstream os;
    os << "order\t" << spec.n << '\n' << "degree\t" << spec.k << '\n';
    os << "split level\t" << split_level << '\n' << "tasks\t" << task_count << '\n';
    os << "total\t" << result.total_count << '\t' << with_commas(result.total_count) << '\n';
    if (result.raw_count_known && result.raw_count != result.total_count) {
      os << "raw leaves\t" << result.raw_count << '\t' << with_commas(result.raw_count) << '\n';
    }
    if (result.best_aspl) {
      const AsplValue r = result.best_aspl->reduced();
      os << "best aspl\t" << r.to_string() << '\t' << std::fixed << std::setprecision(6) << r.to_double() << '\n';
      os << "champions\t" << result.champion_total << '\t' << "kept " << result.champions.size() << '\n';
      for (const auto& c : result.champions) os << "champion\t" << c.graph6 << '\n';
    }
    if (lower_bound) {
      const AsplValue r = lower_bound->reduced();
      os << "aspl lower bound\t" << r.to_string() << '\t' << std::fixed << std::setprecision(6) << r.to_double() << '\n';
    }
    return os.str();
  }

  std::string text() const {
    std::ostringstream os;
    os << "mode\t" << mode << '\n' << summary();
    if (champions_path) os << "champion file\t" << champions_path->string() << '\n';
    const double rate = elapsed_seconds > 0 ? static_cast<double>(result.raw_count) / elapsed_seconds : 0.0;
    os << "elapsed\t" << std::fixed << std::setprecision(3) << elapsed_seconds << " s\n";
    os << "throughput\t" << std::fixed << std::setprecision(0) << rate << " graphs/s\n";
    return os.str();
  }
};

namespace detail {

inline std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  return out;
}

inline void write_outputs(const JobConfig& config, const SearchResult& result) {
  if (config.champions) {
    auto out = open_output(*config.champions);
    write_champions(out, result);
  }
  if (config.histogram) {
    auto out = open_output(*config.histogram);
    write_histogram_tsv(out, emit_task_histogram(result));
  }
}

inline std::optional<AsplValue> bound_for(const DegreeSpec& spec) {
  if (spec.n < 2 || (spec.k < 2 && spec.n > spec.k + 1)) return std::nullopt;
  return aspl_lower_bound(spec);
}

}  // namespace detail

struct JobHooks {
  std::function<void(std::uint16_t)> on_listening;  // master: bound port
  std::uint64_t abort_after_results = 0;            // master: simulated crash
};

// Runs a local, mono or master job. Worker mode is run_worker_job.
inline JobReport run_job(const JobConfig& config, const JobHooks& hooks = {}) {
  config.validate();
  if (config.mode == Mode::kWorker) throw Error(ErrorCode::kInvalidArgument, "use run_worker_job for worker mode");
  const auto start = std::chrono::steady_clock::now();
  JobReport report;
  report.spec = config.spec;
  report.split_level = config.resolved_split_level();
  report.lower_bound = config.filter.track_min_aspl ? detail::bound_for(config.spec) : std::nullopt;
  report.champions_path = config.champions;

  std::ofstream graphs_out;
  if (config.graphs) graphs_out = detail::open_output(*config.graphs);

  switch (config.mode) {
    case Mode::kMono: {
      report.mode = "mono";
      report.task_count = 1;
      TaskAccumulator acc(config.spec, config.filter, 0);
      enumerate(config.spec, [&](const Graph& g) {
        acc(g);
        if (graphs_out.is_open()) graphs_out << to_graph6(g) << '\n';
      });
      report.result = std::move(acc).finish();
      break;
    }
    case Mode::kLocal: {
      report.mode = "local";
      const TaskPlan plan(config.spec, report.split_level);
      report.task_count = plan.task_count();
      LocalOptions options;
      options.worker_count = config.worker_count;
      options.keep_graph6 = config.graphs.has_value();
      LocalRun run = run_local(plan, config.filter, options);
      for (const auto& lines : run.graph6_by_task) graphs_out << lines;
      report.result = std::move(run.aggregate);
      break;
    }
    case Mode::kMaster: {
      report.mode = "master";
      const TaskPlan plan(config.spec, report.split_level);
      report.task_count = plan.task_count();
      if (plan.task_count() == 0) {
        report.result = SearchResult::empty(config.spec, config.filter);
        break;
      }
      MasterConfig mc;
      mc.task_count = plan.task_count();
      mc.listen = config.listen;
      if (config.checkpoint) mc.checkpoint_path = config.checkpoint->string();
      mc.job = config.identity(plan.task_count());
      if (config.task_timeout_secs) {
        mc.task_timeout = std::chrono::milliseconds(static_cast<std::int64_t>(*config.task_timeout_secs * 1000.0));
      }
      mc.expected_workers = static_cast<std::uint64_t>(config.worker_count);
      mc.on_listening = hooks.on_listening;
      mc.abort_after_results = hooks.abort_after_results;
      MasterRun run = run_master(mc);
      report.master_stats = run.stats;
      if (run.aborted) throw Error(ErrorCode::kIo, "master stopped before the job finished");
      report.result = aggregate_outcomes(config.spec, config.filter, run.outcomes,
                                         make_champion_resolver(plan, config.filter));
      break;
    }
    case Mode::kWorker:
      break;
  }
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  detail::write_outputs(config, report.result);
  return report;
}

inline WorkerRun run_worker_job(const JobConfig& config, const WorkerConfig& base = {}) {
  config.validate();
  const TaskPlan plan(config.spec, config.resolved_split_level());
  WorkerConfig wc = base;
  wc.master = config.master;
  return run_worker(wc, make_task_executor(plan, config.filter));
}

}  // namespace regenum
