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

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "regenum/aspl.hpp"
#include "regenum/error.hpp"
#include "regenum/graph.hpp"

namespace regenum {

// What one finished task reports back.
struct TaskOutcome {
  std::uint64_t count = 0;
  std::optional<AsplValue> best;
  std::uint32_t champion_count = 0;
  std::uint64_t elapsed_ms = 0;

  friend bool operator==(const TaskOutcome& a, const TaskOutcome& b) {
    return a.count == b.count && a.champion_count == b.champion_count &&
           a.elapsed_ms == b.elapsed_ms && a.best.has_value() == b.best.has_value() &&
           (!a.best || a.best->identical(*b.best));
  }
};

using WorkerId = std::uint64_t;

enum class TaskState { kAvailable, kAssigned, kDone };

// The master's record of every task. Tasks move available -> assigned ->
// done. An assigned task whose lease expired may be handed to another
// worker; the first result to arrive is kept and later ones are dropped.
class TaskLedger {
 public:
  using Clock = std::chrono::steady_clock;

  enum class Completion { kAccepted, kDuplicate, kNotAssigned };

  explicit TaskLedger(std::uint64_t task_count) : slots_(task_count) {}

  std::uint64_t task_count() const { return slots_.size(); }
  std::uint64_t done_count() const { return done_; }
  bool all_done() const { return done_ == slots_.size(); }
  std::uint64_t reclaimed() const { return reclaimed_; }

  TaskState state(std::uint64_t task) const { return slots_.at(task).state; }
  const std::optional<TaskOutcome>& outcome(std::uint64_t task) const { return slots_.at(task).outcome; }

  // Lowest-index available task, else the lowest-index task whose lease
  // ran out.
  std::optional<std::uint64_t> acquire(WorkerId worker, Clock::time_point now, Clock::duration lease) {
    while (cursor_ < slots_.size() && slots_[cursor_].state != TaskState::kAvailable) ++cursor_;
    if (cursor_ < slots_.size()) {
      assign(cursor_, worker, now);
      return cursor_++;
    }
    for (std::uint64_t i = 0; i < slots_.size(); ++i) {
      Slot& s = slots_[i];
      if (s.state == TaskState::kAssigned && now - s.assigned_at >= lease) {
        ++reclaimed_;
        assign(i, worker, now);
        return i;
      }
    }
    return std::nullopt;
  }

  // Earliest moment an outstanding lease expires.
  std::optional<Clock::time_point> next_expiry(Clock::duration lease) const {
    std::optional<Clock::time_point> best;
    for (const Slot& s : slots_) {
      if (s.state == TaskState::kAssigned && (!best || s.assigned_at + lease < *best)) {
        best = s.assigned_at + lease;
      }
    }
    return best;
  }

  Completion complete(std::uint64_t task, WorkerId worker, const TaskOutcome& outcome) {
    if (task >= slots_.size()) return Completion::kNotAssigned;
    Slot& s = slots_[task];
    if (std::find(s.assignees.begin(), s.assignees.end(), worker) == s.assignees.end()) {
      return Completion::kNotAssigned;
    }
    if (s.state == TaskState::kDone) return Completion::kDuplicate;
    finish(s, outcome);
    return Completion::kAccepted;
  }

  // Replays a checkpointed result.
  void restore(std::uint64_t task, const TaskOutcome& outcome) {
    Slot& s = slots_.at(task);
    if (s.state != TaskState::kDone) finish(s, outcome);
  }

  std::vector<std::uint64_t> remaining() const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 0; i < slots_.size(); ++i) {
      if (slots_[i].state != TaskState::kDone) out.push_back(i);
    }
    return out;
  }

  // Ten times the median finished-task duration, never below `floor`.
  Clock::duration adaptive_lease(Clock::duration floor = std::chrono::seconds(60)) const {
    std::vector<std::uint64_t> ms;
    for (const Slot& s : slots_) {
      if (s.outcome) ms.push_back(s.outcome->elapsed_ms);
    }
    if (ms.empty()) return floor;
    std::nth_element(ms.begin(), ms.begin() + ms.size() / 2, ms.end());
    const auto median = std::chrono::milliseconds(ms[ms.size() / 2]);
    return std::max<Clock::duration>(floor, 10 * median);
  }

 private:
  struct Slot {
    TaskState state = TaskState::kAvailable;
    Clock::time_point assigned_at{};
    std::vector<WorkerId> assignees;
    std::optional<TaskOutcome> outcome;
  };

  void assign(std::uint64_t i, WorkerId worker, Clock::time_point now) {
    Slot& s = slots_[i];
    s.state = TaskState::kAssigned;
    s.assigned_at = now;
    s.assignees.push_back(worker);
  }

  void finish(Slot& s, const TaskOutcome& outcome) {
    s.state = TaskState::kDone;
    s.outcome = outcome;
    ++done_;
  }

  std::vector<Slot> slots_;
  std::uint64_t cursor_ = 0;
  std::uint64_t done_ = 0;
  std::uint64_t reclaimed_ = 0;
};

// Identity of a job; a checkpoint only resumes the job that wrote it.
struct JobIdentity {
  DegreeSpec spec;
  int split_level = 0;
  std::uint64_t task_count = 0;
  std::string filter_digest;

  std::string header_line() const {
    return "#regenum-checkpoint\tv1\tn=" + std::to_string(spec.n) + "\tk=" + std::to_string(spec.k) +
           "\tsplit=" + std::to_string(split_level) + "\ttasks=" + std::to_string(task_count) +
           "\tfilter=" + filter_digest;
  }

  friend bool operator==(const JobIdentity&, const JobIdentity&) = default;
};

namespace detail {

inline std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
    if (tab == std::string_view::npos) return out;
    start = tab + 1;
  }
}

template <typename T>
bool parse_uint(std::string_view s, T& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

// "task<TAB>count<TAB>elapsed_ms<TAB>best<TAB>champions"; best is "-" or
// "num/den".
inline std::string format_checkpoint_line(std::uint64_t task, const TaskOutcome& o) {
  std::string best = o.best ? o.best->to_string() : std::string("-");
  return std::to_string(task) + '\t' + std::to_string(o.count) + '\t' + std::to_string(o.elapsed_ms) + '\t' +
         best + '\t' + std::to_string(o.champion_count);
}

inline bool parse_checkpoint_line(std::string_view line, std::uint64_t& task, TaskOutcome& o) {
  const auto f = split_tabs(line);
  if (f.size() != 3 && f.size() != 5) return false;
  if (!parse_uint(f[0], task) || !parse_uint(f[1], o.count) || !parse_uint(f[2], o.elapsed_ms)) return false;
  o.best.reset();
  o.champion_count = 0;
  if (f.size() == 5) {
    if (f[3] != "-") {
      const auto slash = f[3].find('/');
      AsplValue v;
      if (slash == std::string_view::npos || !parse_uint(f[3].substr(0, slash), v.numerator) ||
          !parse_uint(f[3].substr(slash + 1), v.denominator) || v.denominator == 0) {
        return false;
      }
      o.best = v;
    }
    if (!parse_uint(f[4], o.champion_count)) return false;
  }
  return true;
}

}  // namespace detail

struct CheckpointContents {
  std::map<std::uint64_t, TaskOutcome> done;
  bool torn_tail = false;          // an unterminated last line was dropped
  std::uintmax_t valid_bytes = 0;  // length of the intact part of the file
};

// Reads a checkpoint written for `expected`. A missing or empty file is an
// empty checkpoint. Refuses checkpoints of any other job.
inline CheckpointContents read_checkpoint(const std::filesystem::path& path, const JobIdentity& expected) {
  CheckpointContents out;
  std::ifstream in(path, std::ios::binary);
  if (!in) return out;
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string data = ss.str();
  if (data.empty()) return out;

  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < data.size()) {
    const std::size_t nl = data.find('\n', pos);
    if (nl == std::string::npos) {
      out.torn_tail = true;
      break;
    }
    const std::string_view line(data.data() + pos, nl - pos);
    if (line_no == 0) {
      if (line != expected.header_line()) {
        throw Error(ErrorCode::kJobMismatch, "checkpoint " + path.string() + " belongs to another job: " +
                                                 std::string(line));
      }
    } else {
      std::uint64_t task = 0;
      TaskOutcome o;
      if (!detail::parse_checkpoint_line(line, task, o) || task >= expected.task_count) {
        throw Error(ErrorCode::kIo, "corrupt checkpoint line " + std::to_string(line_no + 1));
      }
      out.done.try_emplace(task, o);
    }
    ++line_no;
    pos = nl + 1;
    out.valid_bytes = pos;
  }
  return out;
}

// Tasks not recorded in the checkpoint, ascending.
inline std::vector<std::uint64_t> resume(const std::filesystem::path& path, const JobIdentity& job) {
  const auto contents = read_checkpoint(path, job);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; i < job.task_count; ++i) {
    if (!contents.done.contains(i)) out.push_back(i);
  }
  return out;
}

// Append-only result log, flushed after every line.
class CheckpointWriter {
 public:
  // Keeps the intact prefix of an existing checkpoint for `job` (dropping a
  // torn last line) and writes the header when the file is new.
  CheckpointWriter(const std::filesystem::path& path, const JobIdentity& job) {
    const auto existing = read_checkpoint(path, job);
    const bool has_header = existing.valid_bytes > 0;
    if (has_header) std::filesystem::resize_file(path, existing.valid_bytes);
    out_.open(path, has_header ? std::ios::app | std::ios::binary : std::ios::trunc | std::ios::binary);
    if (!out_) throw Error(ErrorCode::kIo, "cannot open checkpoint " + path.string());
    if (!has_header) {
      out_ << job.header_line() << '\n';
      out_.flush();
    }
  }

  void append(std::uint64_t task, const TaskOutcome& outcome) {
    out_ << detail::format_checkpoint_line(task, outcome) << '\n';
    out_.flush();
    if (!out_) throw Error(ErrorCode::kIo, "checkpoint write failed");
  }

 private:
  std::ofstream out_;
};

}  // namespace regenum
