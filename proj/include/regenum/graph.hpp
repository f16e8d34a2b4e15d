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

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "regenum/error.hpp"

namespace regenum {

inline constexpr int kMaxOrder = 64;

using VertexSet = std::uint64_t;

constexpr VertexSet bit(int v) { return VertexSet{1} << v; }

// Mask with bits [0, count) set; count may be 64.
constexpr VertexSet low_mask(int count) {
  return count >= 64 ? ~VertexSet{0} : (VertexSet{1} << count) - 1;
}

// The (n, k) enumeration problem: connected k-regular graphs on n vertices.
struct DegreeSpec {
  int n = 0;
  int k = 0;

  constexpr bool valid() const {
    return n >= 1 && n <= kMaxOrder && k >= 0 && k < n && (n * k) % 2 == 0;
  }

  constexpr int edge_count() const { return n * k / 2; }

  void validate() const {
    if (!valid()) {
      throw Error(ErrorCode::kInfeasibleSpec,
                  "no k-regular graph for n=" + std::to_string(n) +
                      ", k=" + std::to_string(k));
    }
  }

  friend constexpr bool operator==(const DegreeSpec&, const DegreeSpec&) = default;
};

// Simple undirected graph on at most 64 vertices; row v is the neighbor set
// of v. Values are immutable once built.
class Graph {
 public:
  Graph() = default;

  explicit Graph(int n) : n_(n) {
    if (n < 0 || n > kMaxOrder) {
      throw Error(ErrorCode::kInfeasibleSpec,
                  "order out of range: " + std::to_string(n));
    }
  }

  static Graph from_edges(int n, std::span<const std::pair<int, int>> edges) {
    Graph g(n);
    for (auto [a, b] : edges) {
      if (a < 0 || b < 0 || a >= n || b >= n || a == b) {
        throw Error(ErrorCode::kInfeasibleSpec,
                    "bad edge {" + std::to_string(a) + "," +
                        std::to_string(b) + "}");
      }
      g.rows_[a] |= bit(b);
      g.rows_[b] |= bit(a);
    }
    return g;
  }

  static Graph from_edges(int n, std::initializer_list<std::pair<int, int>> edges) {
    return from_edges(n, std::span<const std::pair<int, int>>(edges.begin(), edges.size()));
  }

  // Rows must already be symmetric and loop-free.
  static Graph from_rows(int n, std::span<const VertexSet> rows) {
    Graph g(n);
    const VertexSet all = low_mask(n);
    for (int v = 0; v < n; ++v) g.rows_[v] = rows[v];
    for (int v = 0; v < n; ++v) {
      if ((g.rows_[v] & ~all) != 0 || (g.rows_[v] & bit(v)) != 0) {
        throw Error(ErrorCode::kInfeasibleSpec, "row " + std::to_string(v) + " out of range");
      }
      for (VertexSet r = g.rows_[v]; r != 0; r &= r - 1) {
        const int w = std::countr_zero(r);
        if ((g.rows_[w] & bit(v)) == 0) {
          throw Error(ErrorCode::kInfeasibleSpec, "adjacency not symmetric");
        }
      }
    }
    return g;
  }

  // Caller guarantees symmetric, loop-free rows.
  static Graph from_trusted_rows(int n, std::span<const VertexSet> rows) {
    Graph g;
    g.n_ = n;
    for (int v = 0; v < n; ++v) g.rows_[v] = rows[v];
    return g;
  }

  int order() const { return n_; }
  VertexSet row(int v) const { return rows_[v]; }
  std::span<const VertexSet> rows() const { return {rows_.data(), static_cast<std::size_t>(n_)}; }
  bool has_edge(int a, int b) const { return (rows_[a] & bit(b)) != 0; }
  int degree(int v) const { return std::popcount(rows_[v]); }

  int edge_count() const {
    int total = 0;
    for (int v = 0; v < n_; ++v) total += degree(v);
    return total / 2;
  }

  bool is_regular(int k) const {
    for (int v = 0; v < n_; ++v) {
      if (degree(v) != k) return false;
    }
    return true;
  }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < n_; ++a) {
      for (VertexSet r = rows_[a] & ~low_mask(a + 1); r != 0; r &= r - 1) {
        out.emplace_back(a, std::countr_zero(r));
      }
    }
    return out;
  }

  // Vertex v of *this becomes vertex perm[v] of the result.
  Graph relabeled(std::span<const int> perm) const {
    Graph g(n_);
    for (int v = 0; v < n_; ++v) {
      VertexSet mapped = 0;
      for (VertexSet r = rows_[v]; r != 0; r &= r - 1) {
        mapped |= bit(perm[std::countr_zero(r)]);
      }
      g.rows_[perm[v]] = mapped;
    }
    return g;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    if (a.n_ != b.n_) return false;
    for (int v = 0; v < a.n_; ++v) {
      if (a.rows_[v] != b.rows_[v]) return false;
    }
    return true;
  }

 private:
  int n_ = 0;
  std::array<VertexSet, kMaxOrder> rows_{};
};

namespace graphs {

inline Graph complete(int n) {
  std::vector<std::pair<int, int>> e;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) e.emplace_back(a, b);
  return Graph::from_edges(n, e);
}

inline Graph cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int v = 0; v < n; ++v) e.emplace_back(v, (v + 1) % n);
  return Graph::from_edges(n, e);
}

inline Graph petersen() {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);          // outer 5-cycle
    e.emplace_back(i, i + 5);                // spokes
    e.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner pentagram
  }
  return Graph::from_edges(10, e);
}

}  // namespace graphs

}  // namespace regenum
