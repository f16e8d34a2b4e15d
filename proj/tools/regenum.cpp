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

// regenum: enumerate connected k-regular graphs and search them for
// minimum-ASPL topologies, locally or across networked workers.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

#include "regenum/regenum.hpp"

namespace {

struct Flags {
  int n = 0;
  int k = 0;
  int split_level = -1;
  std::string mode = "local";
  int workers = 1;
  std::string listen;
  std::string master;
  int max_diameter = -1;
  bool min_aspl = false;
  int champion_limit = -1;
  std::string checkpoint;
  std::string champions;
  std::string histogram;
  std::string graphs;
  double task_timeout_secs = 0;
  std::string graph6;
};

void add_spec_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("-n,--order", f.n, "Number of vertices")->required()->envname("REGENUM_ORDER");
  cmd->add_option("-k,--degree", f.k, "Vertex degree")->required()->envname("REGENUM_DEGREE");
}

void add_job_flags(CLI::App* cmd, Flags& f) {
  add_spec_flags(cmd, f);
  cmd->add_option("--split-level", f.split_level, "Search-tree depth (edges) at which tasks are cut")
      ->envname("REGENUM_SPLIT_LEVEL");
  cmd->add_option("--mode", f.mode, "local | master | worker | mono")
      ->check(CLI::IsMember({"local", "master", "worker", "mono"}))
      ->envname("REGENUM_MODE");
  cmd->add_option("--workers", f.workers, "Worker threads (local); workers to dismiss before exiting (master)")->envname("REGENUM_WORKERS");
  cmd->add_option("--listen", f.listen, "Master listen address host:port")->envname("REGENUM_LISTEN");
  cmd->add_option("--master", f.master, "Master address host:port for workers")->envname("REGENUM_MASTER");
  cmd->add_option("--max-diameter", f.max_diameter, "Count only graphs with at most this diameter")
      ->envname("REGENUM_MAX_DIAMETER");
  cmd->add_flag("--min-aspl", f.min_aspl, "Track the minimum ASPL and its champions")->envname("REGENUM_MIN_ASPL");
  cmd->add_option("--champion-limit", f.champion_limit, "Champions kept (default 64)")
      ->envname("REGENUM_CHAMPION_LIMIT");
  cmd->add_option("--checkpoint", f.checkpoint, "Append-only result log; resumes when present")
      ->envname("REGENUM_CHECKPOINT");
  cmd->add_option("--champions", f.champions, "Write champions, one graph6 per line")->envname("REGENUM_CHAMPIONS");
  cmd->add_option("--histogram", f.histogram, "Write the per-task count histogram as TSV")
      ->envname("REGENUM_HISTOGRAM");
  cmd->add_option("--graphs", f.graphs, "Write every generated graph as graph6")->envname("REGENUM_GRAPHS");
  cmd->add_option("--task-timeout-secs", f.task_timeout_secs, "Lease before an unfinished task is reassigned")
      ->envname("REGENUM_TASK_TIMEOUT_SECS");
}

regenum::JobConfig to_config(const Flags& f, bool search) {
  regenum::JobConfig c;
  c.spec = {f.n, f.k};
  if (f.split_level >= 0) c.split_level = f.split_level;
  c.mode = *regenum::parse_mode(f.mode);
  c.worker_count = f.workers;
  c.listen = f.listen;
  c.master = f.master;
  if (f.max_diameter >= 0) c.filter.max_diameter = f.max_diameter;
  if (search || f.min_aspl) {
    c.filter.track_min_aspl = f.min_aspl || search;
    c.filter.champion_limit =
        f.champion_limit >= 0 ? static_cast<std::uint32_t>(f.champion_limit) : regenum::FilterSpec::kDefaultChampionLimit;
  } else if (f.champion_limit > 0) {
    throw regenum::Error(regenum::ErrorCode::kInvalidArgument, "--champion-limit needs --min-aspl");
  }
  if (!f.checkpoint.empty()) c.checkpoint = f.checkpoint;
  if (!f.champions.empty()) c.champions = f.champions;
  if (!f.histogram.empty()) c.histogram = f.histogram;
  if (!f.graphs.empty()) c.graphs = f.graphs;
  if (f.task_timeout_secs > 0) c.task_timeout_secs = f.task_timeout_secs;
  return c;
}

int run_job_command(const regenum::JobConfig& config) {
  if (config.mode == regenum::Mode::kWorker) {
    const auto run = regenum::run_worker_job(config);
    std::cout << "requests\t" << run.stats.requests << "\nresults\t" << run.stats.results << "\nshutdown\t"
              << (run.stats.got_shutdown ? "yes" : "no") << '\n';
    return run.exit_code;
  }
  regenum::JobHooks hooks;
  hooks.on_listening = [&](std::uint16_t port) {
    std::cerr << "listening on port " << port << std::endl;
  };
  const auto report = regenum::run_job(config, hooks);
  std::cout << report.text();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enumerate connected k-regular graphs and search for minimum-ASPL topologies", "regenum"};
  app.require_subcommand(1);
  Flags f;

  auto* count = app.add_subcommand("count", "Count graphs (optionally filtered)");
  add_job_flags(count, f);
  auto* search = app.add_subcommand("search", "Find the minimum-ASPL graphs");
  add_job_flags(search, f);
  auto* master = app.add_subcommand("master", "Serve tasks to networked workers");
  add_job_flags(master, f);
  auto* worker = app.add_subcommand("worker", "Take tasks from a master until it shuts down");
  add_job_flags(worker, f);

  auto* prefixes = app.add_subcommand("prefixes", "List the task prefixes at a split level");
  add_spec_flags(prefixes, f);
  prefixes->add_option("--split-level", f.split_level, "Search-tree depth")->required()->envname("REGENUM_SPLIT_LEVEL");
  bool list_prefixes = false;
  prefixes->add_flag("--list", list_prefixes, "Print each prefix's edges");

  auto* oracle = app.add_subcommand("oracle", "Count by brute force over labeled graphs (n <= 10)");
  add_spec_flags(oracle, f);

  auto* aspl = app.add_subcommand("aspl", "Distances of one graph");
  aspl->add_option("--graph6", f.graph6, "Graph in graph6 format")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  try {
    if (count->parsed() || search->parsed() || master->parsed() || worker->parsed()) {
      if (master->parsed()) f.mode = "master";
      if (worker->parsed()) f.mode = "worker";
      regenum::JobConfig config;
      try {
        config = to_config(f, search->parsed());
        config.validate();
      } catch (const regenum::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
      }
      return run_job_command(config);
    }
    if (prefixes->parsed()) {
      const regenum::DegreeSpec spec{f.n, f.k};
      std::uint64_t index = 0;
      regenum::enumerate_prefixes(spec, f.split_level, [&](const regenum::PartialGraph& p) {
        if (list_prefixes) {
          std::cout << index << '\t';
          for (auto [a, b] : p.edges) std::cout << int(a) << '-' << int(b) << ' ';
          std::cout << '\n';
        }
        ++index;
      });
      std::cout << "prefixes\t" << index << '\t' << regenum::with_commas(index) << '\n';
      return 0;
    }
    if (oracle->parsed()) {
      const auto c = regenum::count_oracle({f.n, f.k});
      std::cout << c << '\t' << regenum::with_commas(c) << '\n';
      return 0;
    }
    if (aspl->parsed()) {
      std::string text = f.graph6;
      while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
      const regenum::Graph g = regenum::from_graph6(text);
      const auto value = regenum::aspl(g);
      std::cout << "aspl\t" << value.reduced().to_string() << '\t' << value.to_string() << '\t' << std::fixed
                << std::setprecision(6) << value.to_double() << '\n';
      std::cout << "diameter\t" << regenum::diameter(g) << '\n';
      return 0;
    }
  } catch (const regenum::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
