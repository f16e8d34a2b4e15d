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

// Dynamic task distribution. A master owns the task ledger and hands out
// task ordinals on request; workers loop request -> run -> report until the
// master answers SHUTDOWN. The job itself (spec, split level, filter) is
// worker configuration and never crosses the wire.

#include <poll.h>
#include <time.h>

#include <algorithm>
#include <array>
#include <atomic>
#include <cerrno>
#include <cstring>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <list>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "regenum/error.hpp"
#include "regenum/generator.hpp"
#include "regenum/graph6.hpp"
#include "regenum/ledger.hpp"
#include "regenum/net.hpp"
#include "regenum/search.hpp"
#include "regenum/wire.hpp"

namespace regenum {

using TaskExecutor = std::function<TaskOutcome(std::uint64_t task_index)>;
// Champions of one task in generation order, as a fresh run would find them.
using ChampionResolver = std::function<std::vector<Champion>(std::uint64_t task_index)>;

inline std::uint64_t elapsed_ms_since(std::chrono::steady_clock::time_point start) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count());
}

// Runs one task of `plan` through the filter.
inline SearchResult run_task(const TaskPlan& plan, const FilterSpec& filter, std::uint64_t task_index) {
  TaskAccumulator acc(plan.spec(), filter, task_index);
  plan.run(task_index, acc);
  return std::move(acc).finish();
}

inline TaskOutcome outcome_of(const SearchResult& r, std::uint64_t elapsed_ms) {
  return {r.total_count, r.best_aspl, static_cast<std::uint32_t>(r.champion_total), elapsed_ms};
}

// `plan` and `filter` must outlive the executor.
inline TaskExecutor make_task_executor(const TaskPlan& plan, const FilterSpec& filter) {
  return [&plan, &filter](std::uint64_t task_index) {
    const auto start = std::chrono::steady_clock::now();
    const SearchResult r = run_task(plan, filter, task_index);
    return outcome_of(r, elapsed_ms_since(start));
  };
}

inline ChampionResolver make_champion_resolver(const TaskPlan& plan, const FilterSpec& filter) {
  return [&plan, &filter](std::uint64_t task_index) { return run_task(plan, filter, task_index).champions; };
}

// Builds the job aggregate from per-task outcomes. Champion graphs are not
// carried by RESULT messages, so the tasks that reached the global best are
// re-run through `resolver` (in task order, until the limit is filled).
inline SearchResult aggregate_outcomes(const DegreeSpec& spec, const FilterSpec& filter,
                                       const std::vector<std::optional<TaskOutcome>>& outcomes,
                                       const ChampionResolver& resolver) {
  SearchResult out = SearchResult::empty(spec, filter);
  for (std::uint64_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    if (!o) continue;
    out.total_count += o->count;
    ++out.tasks_done;
    out.per_task_counts->push_back({i, o->count});
    if (o->best && (!out.best_aspl || *o->best < *out.best_aspl)) out.best_aspl = o->best;
  }
  const bool filtered = filter.max_diameter.has_value() || !filter.predicates.empty();
  out.raw_count = out.total_count;
  out.raw_count_known = !filtered;
  if (!out.best_aspl) return out;
  for (std::uint64_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    if (!o || !o->best || !(*o->best == *out.best_aspl)) continue;
    out.champion_total += o->champion_count;
    if (out.champions.size() < filter.champion_limit && o->champion_count > 0 && resolver) {
      for (Champion& c : resolver(i)) {
        if (out.champions.size() == filter.champion_limit) break;
        out.champions.push_back(std::move(c));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Master

struct MasterStats {
  std::uint64_t requests = 0;
  std::uint64_t assigns = 0;
  std::uint64_t results = 0;
  std::uint64_t shutdowns = 0;
  std::uint64_t duplicates = 0;
  std::uint64_t reclaimed = 0;
  std::uint64_t dropped_connections = 0;
  std::uint64_t connections = 0;
  std::vector<wire::Kind> trace;  // every frame, in the order the master saw it
};

struct MasterConfig {
  std::uint64_t task_count = 0;
  std::string listen = "127.0.0.1:0";
  std::optional<std::string> checkpoint_path;
  JobIdentity job;  // checkpoint header; job.task_count must equal task_count
  std::optional<std::chrono::milliseconds> task_timeout;  // unset: adaptive
  std::uint64_t expected_workers = 0;  // after the last result, wait for this many SHUTDOWNs
  std::chrono::milliseconds shutdown_grace{5000};
  std::chrono::milliseconds poll_interval{50};
  std::function<void(std::uint16_t)> on_listening;
  std::uint64_t abort_after_results = 0;  // test hook: stop dead after this many accepted results
  bool quiet = false;  // suppress log notes on stderr
};

struct MasterRun {
  std::vector<std::optional<TaskOutcome>> outcomes;
  MasterStats stats;
  std::uint64_t restored = 0;  // tasks taken from the checkpoint
  bool aborted = false;
};

namespace detail {

struct MasterConnection {
  net::Socket socket;
  wire::FrameReader reader;
  WorkerId id = 0;
  bool waiting = false;
  bool closed = false;
};

}  // namespace detail

inline MasterRun run_master(const MasterConfig& config) {
  using Clock = TaskLedger::Clock;
  if (config.task_count < 1) throw Error(ErrorCode::kInvalidArgument, "master needs at least one task");

  MasterRun run;
  TaskLedger ledger(config.task_count);
  std::unique_ptr<CheckpointWriter> checkpoint;
  if (config.checkpoint_path) {
    if (config.job.task_count != config.task_count) {
      throw Error(ErrorCode::kJobMismatch, "job identity task count differs from master task count");
    }
    const auto contents = read_checkpoint(*config.checkpoint_path, config.job);
    for (const auto& [task, outcome] : contents.done) ledger.restore(task, outcome);
    run.restored = contents.done.size();
    checkpoint = std::make_unique<CheckpointWriter>(*config.checkpoint_path, config.job);
  }

  std::uint16_t port = 0;
  net::Socket listener = net::listen_on(net::Endpoint::parse(config.listen), &port);
  if (config.on_listening) config.on_listening(port);

  auto lease = [&] { return config.task_timeout ? Clock::duration(*config.task_timeout) : ledger.adaptive_lease(); };
  std::list<detail::MasterConnection> conns;
  WorkerId next_id = 1;
  std::optional<Clock::time_point> finished_at;
  std::vector<std::uint8_t> out;

  auto send = [&](detail::MasterConnection& c, const wire::Message& m) {
    out.clear();
    wire::encode(m, out);
    run.stats.trace.push_back(wire::kind_of(m));
    if (!c.socket.send_all(out)) c.closed = true;
  };
  auto drop = [&](detail::MasterConnection& c, const std::string& why) {
    if (!config.quiet) std::cerr << "master: dropping worker " << c.id << ": " << why << '\n';
    ++run.stats.dropped_connections;
    c.closed = true;
  };
  // Answers a pending REQUEST if possible.
  auto serve = [&](detail::MasterConnection& c) {
    if (auto task = ledger.acquire(c.id, Clock::now(), lease())) {
      c.waiting = false;
      ++run.stats.assigns;
      send(c, wire::Assign{*task});
    } else if (ledger.all_done()) {
      c.waiting = false;
      ++run.stats.shutdowns;
      send(c, wire::Shutdown{});
      c.closed = true;
    } else {
      c.waiting = true;
    }
  };

  std::vector<pollfd> fds;
  std::vector<detail::MasterConnection*> order;
  std::array<std::uint8_t, 4096> buf{};
  for (;;) {
    conns.remove_if([](const detail::MasterConnection& c) { return c.closed; });
    if (ledger.all_done()) {
      if (!finished_at) finished_at = Clock::now();
      for (auto& c : conns) {
        if (c.waiting) serve(c);
      }
      conns.remove_if([](const detail::MasterConnection& c) { return c.closed; });
      const bool everyone_told = conns.empty() && run.stats.shutdowns >= config.expected_workers;
      if (everyone_told || Clock::now() - *finished_at >= config.shutdown_grace) break;
    }

    fds.clear();
    order.clear();
    fds.push_back({listener.fd(), POLLIN, 0});
    for (auto& c : conns) {
      fds.push_back({c.socket.fd(), POLLIN, 0});
      order.push_back(&c);
    }
    auto wait = config.poll_interval;
    if (!ledger.all_done()) {
      if (auto expiry = ledger.next_expiry(lease())) {
        const auto until = std::chrono::duration_cast<std::chrono::milliseconds>(*expiry - Clock::now());
        wait = std::clamp(until + std::chrono::milliseconds(1), std::chrono::milliseconds(0), config.poll_interval);
      }
    }
    const int ready = ::poll(fds.data(), fds.size(), static_cast<int>(wait.count()));
    if (ready < 0 && errno != EINTR) throw Error(ErrorCode::kIo, std::string("poll: ") + std::strerror(errno));

    if (ready > 0 && (fds[0].revents & POLLIN) != 0) {
      net::Socket s = net::accept_from(listener);
      if (s.valid()) {
        ++run.stats.connections;
        conns.push_back({std::move(s), {}, next_id++, false, false});
      }
    }
    for (std::size_t i = 1; ready > 0 && i < fds.size(); ++i) {
      if (fds[i].revents == 0) continue;
      detail::MasterConnection& c = *order[i - 1];
      const ssize_t n = c.socket.recv_some(buf);
      if (n <= 0) {
        c.closed = true;  // an assigned task stays leased until it times out
        continue;
      }
      c.reader.feed(std::span<const std::uint8_t>(buf.data(), static_cast<std::size_t>(n)));
      try {
        while (!c.closed) {
          auto msg = c.reader.next();
          if (!msg) break;
          run.stats.trace.push_back(wire::kind_of(*msg));
          if (std::holds_alternative<wire::Request>(*msg)) {
            ++run.stats.requests;
            if (c.waiting) {
              drop(c, "second REQUEST while one is pending");
              break;
            }
            serve(c);
          } else if (const auto* r = std::get_if<wire::Result>(&*msg)) {
            ++run.stats.results;
            const TaskOutcome outcome{r->count, r->best, r->champion_count, r->elapsed_ms};
            switch (ledger.complete(r->task_index, c.id, outcome)) {
              case TaskLedger::Completion::kAccepted:
                if (checkpoint) checkpoint->append(r->task_index, outcome);
                if (config.abort_after_results != 0 && ledger.done_count() - run.restored >= config.abort_after_results) {
                  run.aborted = true;
                }
                break;
              case TaskLedger::Completion::kDuplicate:
                ++run.stats.duplicates;
                if (!config.quiet) std::cerr << "master: duplicate result for task " << r->task_index << " ignored\n";
                break;
              case TaskLedger::Completion::kNotAssigned:
                drop(c, "result for task " + std::to_string(r->task_index) + " it was never assigned");
                break;
            }
            if (run.aborted) break;
          } else {
            drop(c, "unexpected message kind from worker");
          }
        }
      } catch (const Error& e) {
        drop(c, e.what());
      }
      if (run.aborted) break;
    }
    if (run.aborted) break;
    if (!ledger.all_done()) {
      for (auto& c : conns) {
        if (c.waiting && !c.closed) serve(c);
      }
    }
  }

  run.stats.reclaimed = ledger.reclaimed();
  run.outcomes.resize(config.task_count);
  for (std::uint64_t i = 0; i < config.task_count; ++i) run.outcomes[i] = ledger.outcome(i);
  return run;
}

// ---------------------------------------------------------------------------
// Worker

struct WorkerConfig {
  std::string master = "127.0.0.1:0";
  int max_retries = 5;
  std::chrono::milliseconds backoff{100};
  std::uint64_t vanish_after_assigns = 0;  // test hook: disappear holding the Nth assigned task
};

struct WorkerStats {
  std::uint64_t requests = 0;
  std::uint64_t assigns = 0;
  std::uint64_t results = 0;
  bool got_shutdown = false;
};

struct WorkerRun {
  int exit_code = 0;
  WorkerStats stats;
};

namespace detail {

inline net::Socket connect_with_retry(const net::Endpoint& where, const WorkerConfig& config) {
  auto delay = config.backoff;
  for (int attempt = 0;; ++attempt) {
    net::Socket s = net::connect_to(where);
    if (s.valid()) return s;
    if (attempt >= config.max_retries) return s;
    std::this_thread::sleep_for(delay);
    delay *= 2;
  }
}

// Blocks for one whole frame; nullopt when the connection dies.
inline std::optional<wire::Message> read_frame(const net::Socket& s, wire::FrameReader& reader) {
  std::array<std::uint8_t, 256> buf{};
  for (;;) {
    if (auto m = reader.next()) return m;
    const ssize_t n = s.recv_some(buf);
    if (n <= 0) return std::nullopt;
    reader.feed(std::span<const std::uint8_t>(buf.data(), static_cast<std::size_t>(n)));
  }
}

}  // namespace detail

inline WorkerRun run_worker(const WorkerConfig& config, const TaskExecutor& execute) {
  WorkerRun run;
  const net::Endpoint where = net::Endpoint::parse(config.master);
  net::Socket sock = detail::connect_with_retry(where, config);
  if (!sock.valid()) {
    run.exit_code = 1;
    return run;
  }
  wire::FrameReader reader;
  std::vector<std::uint8_t> out;
  auto lost = [&]() -> bool {
    // Reconnect after a broken connection; a task in flight is left to the
    // master's lease timeout.
    reader = wire::FrameReader();
    sock = detail::connect_with_retry(where, config);
    return !sock.valid();
  };
  for (;;) {
    out = wire::encode(wire::Request{});
    ++run.stats.requests;
    std::optional<wire::Message> reply;
    if (sock.send_all(out)) reply = detail::read_frame(sock, reader);
    if (!reply) {
      if (lost()) {
        run.exit_code = 1;
        return run;
      }
      continue;
    }
    if (std::holds_alternative<wire::Shutdown>(*reply)) {
      run.stats.got_shutdown = true;
      return run;
    }
    const auto* assign = std::get_if<wire::Assign>(&*reply);
    if (assign == nullptr) {
      run.exit_code = 1;
      return run;
    }
    ++run.stats.assigns;
    if (config.vanish_after_assigns != 0 && run.stats.assigns == config.vanish_after_assigns) {
      run.exit_code = 137;
      return run;
    }
    const TaskOutcome o = execute(assign->task_index);
    out = wire::encode(wire::Result{assign->task_index, o.count, o.best, o.champion_count, o.elapsed_ms});
    ++run.stats.results;
    if (!sock.send_all(out) && lost()) {
      run.exit_code = 1;
      return run;
    }
  }
}

// ---------------------------------------------------------------------------
// Local (in-process) mode

enum class LocalPolicy {
  kDynamic,       // idle workers take the lowest untaken task
  kStaticBlocks,  // worker w owns the w-th contiguous block of tasks
};

struct LocalOptions {
  int worker_count = 1;
  LocalPolicy policy = LocalPolicy::kDynamic;
  bool keep_graph6 = false;  // collect every generated graph, per task
};

struct LocalRun {
  SearchResult aggregate;
  std::vector<SearchResult> per_task;
  std::vector<std::string> graph6_by_task;  // newline-terminated lines
  std::vector<std::uint64_t> task_elapsed_us;
  std::vector<double> worker_busy_seconds;  // thread CPU time per worker
  std::vector<std::uint64_t> worker_task_counts;
  double wall_seconds = 0;
};

namespace detail {

inline double thread_cpu_seconds() {
  timespec ts{};
  ::clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
  return static_cast<double>(ts.tv_sec) + static_cast<double>(ts.tv_nsec) * 1e-9;
}

}  // namespace detail

inline LocalRun run_local(const TaskPlan& plan, const FilterSpec& filter, const LocalOptions& options) {
  filter.validate();
  if (options.worker_count < 1) throw Error(ErrorCode::kInvalidArgument, "worker count must be at least 1");
  const std::uint64_t tasks = plan.task_count();
  const auto workers = static_cast<std::uint64_t>(options.worker_count);

  LocalRun run;
  run.per_task.resize(tasks);
  run.task_elapsed_us.resize(tasks);
  run.worker_busy_seconds.resize(workers);
  run.worker_task_counts.resize(workers);
  if (options.keep_graph6) run.graph6_by_task.resize(tasks);

  std::atomic<std::uint64_t> next{0};
  const std::uint64_t block = (tasks + workers - 1) / workers;

  auto execute = [&](std::uint64_t i) {
    const auto start = std::chrono::steady_clock::now();
    TaskAccumulator acc(plan.spec(), filter, i);
    if (options.keep_graph6) {
      std::string& lines = run.graph6_by_task[i];
      plan.run(i, [&](const Graph& g) {
        acc(g);
        lines += to_graph6(g);
        lines += '\n';
      });
    } else {
      plan.run(i, acc);
    }
    run.per_task[i] = std::move(acc).finish();
    run.task_elapsed_us[i] = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count());
  };
  auto worker_main = [&](std::uint64_t w) {
    const double cpu0 = detail::thread_cpu_seconds();
    if (options.policy == LocalPolicy::kDynamic) {
      for (std::uint64_t i; (i = next.fetch_add(1)) < tasks;) {
        execute(i);
        ++run.worker_task_counts[w];
      }
    } else {
      for (std::uint64_t i = w * block; i < std::min(tasks, (w + 1) * block); ++i) {
        execute(i);
        ++run.worker_task_counts[w];
      }
    }
    run.worker_busy_seconds[w] = detail::thread_cpu_seconds() - cpu0;
  };

  const auto start = std::chrono::steady_clock::now();
  if (workers == 1) {
    worker_main(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(worker_main, w);
  }
  run.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  run.aggregate = SearchResult::empty(plan.spec(), filter);
  for (const SearchResult& r : run.per_task) merge_into(run.aggregate, r, filter.champion_limit);
  return run;
}

// Monolithic search without any task split.
inline SearchResult run_mono(const DegreeSpec& spec, const FilterSpec& filter) {
  filter.validate();
  TaskAccumulator acc(spec, filter, 0);
  enumerate(spec, acc);
  return std::move(acc).finish();
}

}  // namespace regenum
