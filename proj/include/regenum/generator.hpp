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

// Orderly generation of connected k-regular graphs.
//
// A search-tree node is a partial graph built one edge at a time: the next
// edge always joins the lowest-index vertex v that still needs edges to a
// partner w above v's largest partner so far. Every labeled k-regular graph
// is therefore reached along exactly one path. A leaf is kept iff it is
// connected and equals its own canonical form (canonical.hpp), so each
// isomorphism class appears once. Whenever v fills up, rows 0..v are final
// and the partial canonicity test cuts subtrees that cannot contain a
// canonical leaf.

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "regenum/canonical.hpp"
#include "regenum/error.hpp"
#include "regenum/graph.hpp"

namespace regenum {

using Edge = std::pair<std::uint8_t, std::uint8_t>;

// A search-tree node: the edges placed so far, in generation order.
struct PartialGraph {
  DegreeSpec spec;
  std::vector<Edge> edges;

  int depth() const { return static_cast<int>(edges.size()); }

  std::vector<int> residual_degrees() const {
    std::vector<int> r(spec.n, spec.k);
    for (auto [a, b] : edges) {
      --r[a];
      --r[b];
    }
    return r;
  }

  friend bool operator==(const PartialGraph&, const PartialGraph&) = default;
};

struct TaskDescriptor {
  DegreeSpec spec;
  int split_level = 0;
  std::uint64_t task_index = 0;
};

namespace detail {

class SearchTree {
 public:
  static constexpr int kNoStop = std::numeric_limits<int>::max();

  explicit SearchTree(const DegreeSpec& spec) : spec_(spec) {
    spec.validate();
    residual_.fill(0);
    for (int v = 0; v < spec.n; ++v) residual_[v] = spec.k;
    open_ = spec.k > 0 ? low_mask(spec.n) : 0;
  }

  void replay(const std::vector<Edge>& edges) {
    for (auto [a, b] : edges) push(a, b);
  }

  // Depth-first walk from the current node. Nodes at `stop_depth` go to
  // on_prefix and are not expanded; completed graphs go to on_leaf.
  template <typename OnLeaf, typename OnPrefix>
  void walk(int stop_depth, OnLeaf&& on_leaf, OnPrefix&& on_prefix) {
    if (depth() == stop_depth) {
      on_prefix(edges_);
      return;
    }
    if (open_ == 0) {
      if (is_connected_leaf()) on_leaf(Graph::from_trusted_rows(spec_.n, rows_span()));
      return;
    }
    const int v = std::countr_zero(open_);
    const VertexSet above = rows_[v] & ~low_mask(v + 1);
    const int last = above == 0 ? v : 63 - std::countl_zero(above);
    VertexSet candidates = open_ & ~low_mask(last + 1);
    int available = std::popcount(candidates);
    const int need = residual_[v];
    for (; candidates != 0 && available >= need; candidates &= candidates - 1, --available) {
      const int w = std::countr_zero(candidates);
      push(v, w);
      if (completable() && (residual_[v] > 0 || row_complete_ok(v))) walk(stop_depth, on_leaf, on_prefix);
      pop();
    }
  }

 private:
  int depth() const { return static_cast<int>(edges_.size()); }
  std::span<const VertexSet> rows_span() const { return {rows_.data(), static_cast<std::size_t>(spec_.n)}; }

  void push(int a, int b) {
    rows_[a] |= bit(b);
    rows_[b] |= bit(a);
    if (--residual_[a] == 0) open_ &= ~bit(a);
    if (--residual_[b] == 0) open_ &= ~bit(b);
    edges_.emplace_back(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b));
  }

  void pop() {
    const auto [a, b] = edges_.back();
    edges_.pop_back();
    rows_[a] &= ~bit(b);
    rows_[b] &= ~bit(a);
    if (residual_[a]++ == 0) open_ |= bit(a);
    if (residual_[b]++ == 0) open_ |= bit(b);
  }

  // Every unsaturated vertex still has enough unsaturated non-neighbors.
  bool completable() const {
    for (VertexSet o = open_; o != 0; o &= o - 1) {
      const int u = std::countr_zero(o);
      if (std::popcount(open_ & ~rows_[u] & ~bit(u)) < residual_[u]) return false;
    }
    return true;
  }

  // Vertices 0..v are saturated.
  bool row_complete_ok(int v) const {
    const int n = spec_.n;
    if (v + 1 < n) {
      VertexSet reach = 0;
      for (int u = 0; u <= v; ++u) reach |= rows_[u];
      if ((reach & ~low_mask(v + 1)) == 0) return false;  // closed component
    }

    const int prefix = open_ == 0 ? n : std::countr_zero(open_);
    const VertexSet complete = low_mask(n) & ~open_;
    return !CanonicityTest(rows_span(), n, prefix, complete).beaten();
  }

  bool is_connected_leaf() const {
    const int n = spec_.n;
    if (n <= 1) return true;
    VertexSet seen = bit(0), frontier = bit(0);
    while (frontier != 0) {
      VertexSet next = 0;
      for (VertexSet f = frontier; f != 0; f &= f - 1) next |= rows_[std::countr_zero(f)];
      frontier = next & ~seen;
      seen |= frontier;
    }
    return seen == low_mask(n);
  }

  DegreeSpec spec_;
  std::array<VertexSet, kMaxOrder> rows_{};
  std::array<int, kMaxOrder> residual_{};
  VertexSet open_ = 0;
  std::vector<Edge> edges_;
};

}  // namespace detail

// Visits every connected k-regular graph on n vertices once, up to
// isomorphism, in a fixed order.
template <typename Visitor>
std::uint64_t enumerate(const DegreeSpec& spec, Visitor&& visit) {
  spec.validate();
  std::uint64_t count = 0;
  detail::SearchTree tree(spec);
  tree.walk(
      detail::SearchTree::kNoStop,
      [&](const Graph& g) {
        ++count;
        visit(g);
      },
      [](const std::vector<Edge>&) {});
  return count;
}

inline std::uint64_t count_graphs(const DegreeSpec& spec) {
  return enumerate(spec, [](const Graph&) {});
}

inline void check_split_level(const DegreeSpec& spec, int split_level) {
  if (split_level < 0 || split_level > spec.edge_count()) {
    throw Error(ErrorCode::kInfeasibleSpec,
                "split level " + std::to_string(split_level) + " outside [0, " +
                    std::to_string(spec.edge_count()) + "]");
  }
}

// Streams the surviving search-tree nodes at depth split_level in generation
// order; node i roots task i.
template <typename OnPrefix>
void enumerate_prefixes(const DegreeSpec& spec, int split_level, OnPrefix&& on_prefix) {
  spec.validate();
  check_split_level(spec, split_level);
  detail::SearchTree tree(spec);
  tree.walk(
      split_level, [](const Graph&) {},
      [&](const std::vector<Edge>& edges) { on_prefix(PartialGraph{spec, edges}); });
}

inline std::uint64_t count_prefixes(const DegreeSpec& spec, int split_level) {
  std::uint64_t count = 0;
  enumerate_prefixes(spec, split_level, [&](const PartialGraph&) { ++count; });
  return count;
}

// Smallest split level whose prefix count reaches `target`; the full depth
// when none does.
inline int split_level_for(const DegreeSpec& spec, std::uint64_t target) {
  spec.validate();
  for (int level = 0; level < spec.edge_count(); ++level) {
    if (count_prefixes(spec, level) >= target) return level;
  }
  return spec.edge_count();
}

inline int default_split_level(const DegreeSpec& spec, int worker_count) {
  return split_level_for(spec, 50ULL * static_cast<std::uint64_t>(std::max(worker_count, 1)));
}

// The prefix list of one job, built once and shared read-only by every task
// executor of that job.
class TaskPlan {
 public:
  TaskPlan(const DegreeSpec& spec, int split_level) : spec_(spec), split_level_(split_level) {
    enumerate_prefixes(spec, split_level, [&](PartialGraph p) { prefixes_.push_back(std::move(p)); });
  }

  const DegreeSpec& spec() const { return spec_; }
  int split_level() const { return split_level_; }
  std::uint64_t task_count() const { return prefixes_.size(); }

  const PartialGraph& prefix(std::uint64_t task_index) const {
    if (task_index >= prefixes_.size()) {
      throw Error(ErrorCode::kUnknownTask, "task " + std::to_string(task_index) + " of " +
                                               std::to_string(prefixes_.size()));
    }
    return prefixes_[task_index];
  }

  TaskDescriptor task(std::uint64_t task_index) const {
    prefix(task_index);
    return {spec_, split_level_, task_index};
  }

  // Accepted leaves below prefix task_index, in generation order.
  template <typename Visitor>
  std::uint64_t run(std::uint64_t task_index, Visitor&& visit) const {
    const PartialGraph& root = prefix(task_index);
    detail::SearchTree tree(spec_);
    tree.replay(root.edges);
    std::uint64_t count = 0;
    tree.walk(
        detail::SearchTree::kNoStop,
        [&](const Graph& g) {
          ++count;
          visit(g);
        },
        [](const std::vector<Edge>&) {});
    return count;
  }

 private:
  DegreeSpec spec_;
  int split_level_;
  std::vector<PartialGraph> prefixes_;
};

// Standalone task execution: rebuilds prefix #task_index from scratch.
template <typename Visitor>
std::uint64_t enumerate_task(const TaskDescriptor& task, Visitor&& visit) {
  task.spec.validate();
  check_split_level(task.spec, task.split_level);
  std::uint64_t seen = 0;
  std::vector<Edge> root;
  bool found = false;
  enumerate_prefixes(task.spec, task.split_level, [&](const PartialGraph& p) {
    if (seen++ == task.task_index) {
      root = p.edges;
      found = true;
    }
  });
  if (!found) {
    throw Error(ErrorCode::kUnknownTask,
                "task " + std::to_string(task.task_index) + " of " + std::to_string(seen));
  }
  detail::SearchTree tree(task.spec);
  tree.replay(root);
  std::uint64_t count = 0;
  tree.walk(
      detail::SearchTree::kNoStop,
      [&](const Graph& g) {
        ++count;
        visit(g);
      },
      [](const std::vector<Edge>&) {});
  return count;
}

}  // namespace regenum
