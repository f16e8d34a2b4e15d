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
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "regenum/aspl.hpp"
#include "regenum/error.hpp"
#include "regenum/graph.hpp"
#include "regenum/graph6.hpp"
#include "regenum/metrics.hpp"

namespace regenum {

// Extra acceptance test run after the diameter cap, e.g. a spectral check
// supplied by the caller. The name takes part in the job digest.
struct NamedPredicate {
  std::string name;
  std::function<bool(const Graph&)> accept;
};

struct FilterSpec {
  static constexpr std::uint32_t kDefaultChampionLimit = 64;

  std::optional<int> max_diameter;
  bool track_min_aspl = false;
  std::uint32_t champion_limit = 0;
  std::vector<NamedPredicate> predicates;

  static FilterSpec count_only() { return {}; }

  static FilterSpec min_aspl(std::uint32_t limit = kDefaultChampionLimit) {
    FilterSpec f;
    f.track_min_aspl = true;
    f.champion_limit = limit;
    return f;
  }

  void validate() const {
    if (!track_min_aspl && champion_limit != 0) {
      throw Error(ErrorCode::kInvalidArgument, "champion limit set without ASPL tracking");
    }
    if (max_diameter && *max_diameter < 0) {
      throw Error(ErrorCode::kInvalidArgument, "negative diameter cap");
    }
  }

  // Canonical text of everything that changes a job's output.
  std::string describe() const {
    std::string s = "maxdiam=" + (max_diameter ? std::to_string(*max_diameter) : std::string("none"));
    s += ";aspl=" + std::to_string(track_min_aspl ? 1 : 0);
    s += ";limit=" + std::to_string(champion_limit);
    for (const auto& p : predicates) s += ";pred=" + p.name;
    return s;
  }

  // FNV-1a over describe(), as 16 hex digits.
  std::string digest() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : describe()) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[i] = kHex[h & 15];
    return out;
  }
};

struct Champion {
  std::uint64_t task_index = 0;
  std::uint64_t ordinal = 0;  // leaf number within the task
  std::string graph6;

  friend bool operator==(const Champion&, const Champion&) = default;
};

struct TaskCount {
  std::uint64_t task_index = 0;
  std::uint64_t count = 0;

  friend bool operator==(const TaskCount&, const TaskCount&) = default;
};

struct SearchResult {
  DegreeSpec spec;
  std::string filter_digest;
  std::uint64_t total_count = 0;  // graphs passing the filter
  std::uint64_t raw_count = 0;    // every accepted leaf
  bool raw_count_known = true;    // false when only filtered counts were reported
  std::optional<AsplValue> best_aspl;
  std::vector<Champion> champions;  // task order, at most champion_limit
  std::uint64_t champion_total = 0;  // graphs attaining best_aspl
  std::uint64_t tasks_done = 0;
  std::optional<std::vector<TaskCount>> per_task_counts;

  static SearchResult empty(const DegreeSpec& spec, const FilterSpec& filter) {
    SearchResult r;
    r.spec = spec;
    r.filter_digest = filter.digest();
    r.per_task_counts.emplace();
    return r;
  }

  std::uint64_t champion_overflow() const { return champion_total - champions.size(); }
};

// Folds one generated graph into `state`. `task_index` tags champions so
// that merged champion lists come out in task order.
inline void apply_filter(SearchResult& state, const Graph& g, const FilterSpec& f,
                         std::uint64_t task_index = 0) {
  const std::uint64_t ordinal = state.raw_count++;
  const bool need_distances = f.max_diameter.has_value() || (f.track_min_aspl && g.order() >= 2);
  DistanceSummary d;
  if (need_distances) d = distance_summary(g);
  if (f.max_diameter && d.diameter > *f.max_diameter) return;
  for (const auto& p : f.predicates) {
    if (!p.accept(g)) return;
  }
  ++state.total_count;
  if (!f.track_min_aspl || g.order() < 2) return;

  const std::uint64_t n = static_cast<std::uint64_t>(g.order());
  const AsplValue value{d.total, n * (n - 1)};
  if (!state.best_aspl || value < *state.best_aspl) {
    state.best_aspl = value;
    state.champions.clear();
    state.champion_total = 0;
  } else if (value > *state.best_aspl) {
    return;
  }
  ++state.champion_total;
  if (state.champions.size() < f.champion_limit) {
    state.champions.push_back({task_index, ordinal, to_graph6(g)});
  }
}

// Accumulates one task's output.
class TaskAccumulator {
 public:
  TaskAccumulator(const DegreeSpec& spec, const FilterSpec& filter, std::uint64_t task_index)
      : filter_(filter), task_index_(task_index), state_(SearchResult::empty(spec, filter)) {}

  void operator()(const Graph& g) { apply_filter(state_, g, filter_, task_index_); }

  SearchResult finish() && {
    state_.tasks_done = 1;
    state_.per_task_counts->push_back({task_index_, state_.total_count});
    return std::move(state_);
  }

 private:
  const FilterSpec& filter_;
  std::uint64_t task_index_;
  SearchResult state_;
};

// Folds b into acc. Counts add, the smaller best ASPL wins, and tied
// champion lists are joined in task order and cut to champion_limit.
inline void merge_into(SearchResult& acc, const SearchResult& b, std::uint32_t champion_limit) {
  if (!(acc.spec == b.spec) || acc.filter_digest != b.filter_digest) {
    throw Error(ErrorCode::kJobMismatch, "cannot merge results of different jobs");
  }
  acc.total_count += b.total_count;
  acc.raw_count += b.raw_count;
  acc.raw_count_known = acc.raw_count_known && b.raw_count_known;
  acc.tasks_done += b.tasks_done;

  if (b.best_aspl && (!acc.best_aspl || *b.best_aspl <= *acc.best_aspl)) {
    if (!acc.best_aspl || *b.best_aspl < *acc.best_aspl) {
      acc.best_aspl = b.best_aspl;
      acc.champions.clear();
      acc.champion_total = 0;
    }
    acc.champions.insert(acc.champions.end(), b.champions.begin(), b.champions.end());
    acc.champion_total += b.champion_total;
    std::sort(acc.champions.begin(), acc.champions.end(), [](const Champion& x, const Champion& y) {
      return std::pair(x.task_index, x.ordinal) < std::pair(y.task_index, y.ordinal);
    });
    if (acc.champions.size() > champion_limit) acc.champions.resize(champion_limit);
  }

  if (acc.per_task_counts && b.per_task_counts) {
    auto& counts = *acc.per_task_counts;
    const bool in_order = counts.empty() || b.per_task_counts->empty() ||
                          counts.back().task_index < b.per_task_counts->front().task_index;
    counts.insert(counts.end(), b.per_task_counts->begin(), b.per_task_counts->end());
    if (!in_order) {
      std::sort(counts.begin(), counts.end(),
                [](const TaskCount& x, const TaskCount& y) { return x.task_index < y.task_index; });
    }
  } else {
    acc.per_task_counts.reset();
  }
}

inline SearchResult merge(const SearchResult& a, const SearchResult& b, std::uint32_t champion_limit) {
  SearchResult out = a;
  merge_into(out, b, champion_limit);
  return out;
}

struct HistogramRow {
  std::uint64_t bucket_lo = 0;
  std::uint64_t bucket_hi = 0;
  std::uint64_t frequency = 0;

  friend bool operator==(const HistogramRow&, const HistogramRow&) = default;
};

// Buckets [0,0], [1,1], [2,3], [4,7], ... up to the largest per-task count.
inline std::vector<HistogramRow> emit_task_histogram(const SearchResult& result) {
  if (!result.per_task_counts) {
    throw Error(ErrorCode::kMissingData, "per-task counts were not collected");
  }
  auto bucket_of = [](std::uint64_t c) { return c == 0 ? 0 : std::bit_width(c); };
  std::vector<HistogramRow> rows;
  for (const TaskCount& t : *result.per_task_counts) {
    const auto b = static_cast<std::size_t>(bucket_of(t.count));
    while (rows.size() <= b) {
      const std::size_t i = rows.size();
      const std::uint64_t lo = i == 0 ? 0 : std::uint64_t{1} << (i - 1);
      const std::uint64_t hi = i == 0 ? 0 : (lo << 1) - 1;
      rows.push_back({lo, hi, 0});
    }
    ++rows[b].frequency;
  }
  if (rows.empty()) rows.push_back({0, 0, 0});
  return rows;
}

inline void write_histogram_tsv(std::ostream& out, const std::vector<HistogramRow>& rows) {
  for (const auto& r : rows) out << r.bucket_lo << '\t' << r.bucket_hi << '\t' << r.frequency << '\n';
}

inline void write_champions(std::ostream& out, const SearchResult& result) {
  for (const auto& c : result.champions) out << c.graph6 << '\n';
}

}  // namespace regenum
