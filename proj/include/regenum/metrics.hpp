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
#include <vector>

#include "regenum/aspl.hpp"
#include "regenum/error.hpp"
#include "regenum/graph.hpp"

namespace regenum {

inline int degree(const Graph& g, int v) { return g.degree(v); }

inline bool is_connected(const Graph& g) {
  const int n = g.order();
  if (n <= 1) return true;
  const VertexSet all = low_mask(n);
  VertexSet seen = bit(0);
  VertexSet frontier = seen;
  while (frontier != 0) {
    VertexSet next = 0;
    for (VertexSet f = frontier; f != 0; f &= f - 1) next |= g.row(std::countr_zero(f));
    frontier = next & ~seen;
    seen |= frontier;
  }
  return seen == all;
}

// Row-major n x n matrix of hop counts.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(int n) : n_(n), d_(static_cast<std::size_t>(n) * n, 0) {}

  int order() const { return n_; }
  int at(int i, int j) const { return d_[static_cast<std::size_t>(i) * n_ + j]; }
  void set(int i, int j, int value) { d_[static_cast<std::size_t>(i) * n_ + j] = value; }

  std::uint64_t sum() const {
    std::uint64_t s = 0;
    for (int x : d_) s += static_cast<std::uint64_t>(x);
    return s;
  }

  int max() const { return d_.empty() ? 0 : *std::max_element(d_.begin(), d_.end()); }

 private:
  int n_;
  std::vector<int> d_;
};

namespace detail {

// Calls on_shell(level, shell) for each BFS layer after the source. Returns
// the set of reached vertices.
template <typename OnShell>
VertexSet bfs_shells(const Graph& g, int source, OnShell&& on_shell) {
  VertexSet seen = bit(source);
  VertexSet frontier = seen;
  for (int level = 1; frontier != 0; ++level) {
    VertexSet next = 0;
    for (VertexSet f = frontier; f != 0; f &= f - 1) next |= g.row(std::countr_zero(f));
    frontier = next & ~seen;
    seen |= frontier;
    if (frontier != 0) on_shell(level, frontier);
  }
  return seen;
}

}  // namespace detail

inline DistanceMatrix all_pairs_distances(const Graph& g) {
  const int n = g.order();
  const VertexSet all = low_mask(n);
  DistanceMatrix m(n);
  for (int s = 0; s < n; ++s) {
    const VertexSet reached = detail::bfs_shells(g, s, [&](int level, VertexSet shell) {
      for (; shell != 0; shell &= shell - 1) m.set(s, std::countr_zero(shell), level);
    });
    if (reached != all) throw Error(ErrorCode::kDisconnected, "distances undefined");
  }
  return m;
}

// Distance sum over ordered pairs and the eccentricity maximum, in one sweep.
struct DistanceSummary {
  std::uint64_t total = 0;
  int diameter = 0;
};

inline DistanceSummary distance_summary(const Graph& g) {
  const int n = g.order();
  const VertexSet all = low_mask(n);
  DistanceSummary out;
  for (int s = 0; s < n; ++s) {
    const VertexSet reached = detail::bfs_shells(g, s, [&](int level, VertexSet shell) {
      out.total += static_cast<std::uint64_t>(level) * std::popcount(shell);
      out.diameter = std::max(out.diameter, level);
    });
    if (reached != all) throw Error(ErrorCode::kDisconnected, "distances undefined");
  }
  return out;
}

inline AsplValue aspl(const Graph& g) {
  const int n = g.order();
  if (n < 2) throw Error(ErrorCode::kDegenerateOrder, "ASPL needs at least two vertices");
  const auto summary = distance_summary(g);
  return {summary.total, static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1)};
}

inline int diameter(const Graph& g) { return distance_summary(g).diameter; }

// Moore-style shell bound: from any root at most k vertices sit at distance
// 1 and k(k-1)^(t-1) at distance t. Filling the nearest shells first gives
// the smallest possible per-root distance sum.
inline AsplValue aspl_lower_bound(const DegreeSpec& spec) {
  spec.validate();
  if (spec.n < 2) throw Error(ErrorCode::kDegenerateOrder, "ASPL needs at least two vertices");
  if (spec.k < 2 && spec.n > spec.k + 1) {
    throw Error(ErrorCode::kInfeasibleSpec, "no connected graph with k < 2 beyond K_{k+1}");
  }
  const std::uint64_t n = static_cast<std::uint64_t>(spec.n);
  const std::uint64_t k = static_cast<std::uint64_t>(spec.k);
  std::uint64_t remaining = n - 1;
  std::uint64_t shell = k;
  std::uint64_t sum = 0;
  for (std::uint64_t t = 1; remaining > 0; ++t) {
    const std::uint64_t take = std::min(shell, remaining);
    sum += take * t;
    remaining -= take;
    shell = std::min(shell * (k - 1), n);
  }
  return {sum, n - 1};
}

}  // namespace regenum
