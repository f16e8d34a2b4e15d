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

// Canonical form = the lexicographically largest row-major upper-triangle
// adjacency string over all vertex relabelings. Row p of a relabeled graph
// is compared before row p+1, and within a row position q before q+1.
//
// The search assigns positions 0, 1, 2, ... in order. Unassigned vertices
// sit in an ordered list of cells, each cell owning a consecutive block of
// positions. Putting vertex x at position p fixes row p up to the order
// inside each cell, and the largest such row lists x's neighbors first in
// every cell. Any relabeling whose row p matches that maximum must refine
// each cell into (neighbors of x, non-neighbors), so the refinement loses
// nothing.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "regenum/error.hpp"
#include "regenum/graph.hpp"

namespace regenum {

namespace detail {

struct CellList {
  std::array<VertexSet, kMaxOrder> cells{};
  int count = 0;
};

// Largest row p obtainable with x placed at position p. Bits are absolute
// positions (> p).
inline VertexSet best_row(VertexSet neighbors, const CellList& cl, int p, int x) {
  VertexSet row = 0;
  int pos = p + 1;
  for (int i = 0; i < cl.count; ++i) {
    const VertexSet c = i == 0 ? cl.cells[0] & ~bit(x) : cl.cells[i];
    const int a = std::popcount(neighbors & c);
    row |= low_mask(a) << pos;
    pos += std::popcount(c);
  }
  return row;
}

inline void refine(VertexSet neighbors, const CellList& in, int x, CellList& out) {
  out.count = 0;
  for (int i = 0; i < in.count; ++i) {
    const VertexSet c = i == 0 ? in.cells[0] & ~bit(x) : in.cells[i];
    const VertexSet inside = c & neighbors;
    const VertexSet outside = c & ~neighbors;
    if (inside != 0) out.cells[out.count++] = inside;
    if (outside != 0) out.cells[out.count++] = outside;
  }
}

// Positive when row a beats row b (lower position = more significant).
inline int compare_rows(VertexSet a, VertexSet b) {
  const VertexSet diff = a ^ b;
  if (diff == 0) return 0;
  return (a & (diff & -diff)) != 0 ? 1 : -1;
}

class MaxRelabeling {
 public:
  explicit MaxRelabeling(const Graph& g) : g_(g), n_(g.order()) {}

  std::array<VertexSet, kMaxOrder> run() {
    CellList start;
    if (n_ > 0) {
      start.cells[0] = low_mask(n_);
      start.count = 1;
      descend(0, start);
    }
    return best_;
  }

 private:
  void descend(int p, const CellList& cl) {
    for (VertexSet cand = cl.cells[0]; cand != 0; cand &= cand - 1) {
      const int x = std::countr_zero(cand);
      const VertexSet nb = g_.row(x);
      const VertexSet row = best_row(nb, cl, p, x);
      if (p < best_len_) {
        const int c = compare_rows(row, best_[p]);
        if (c < 0) continue;
        if (c > 0) best_len_ = p;
      }
      if (p >= best_len_) {
        best_[p] = row;
        best_len_ = p + 1;
      }
      if (p + 1 < n_) {
        CellList next;
        refine(nb, cl, x, next);
        descend(p + 1, next);
      }
    }
  }

  const Graph& g_;
  int n_;
  std::array<VertexSet, kMaxOrder> best_{};
  int best_len_ = 0;
};

}  // namespace detail

// Rows of the maximal relabeling; row p holds only positions > p.
inline std::array<VertexSet, kMaxOrder> canonical_rows(const Graph& g) {
  return detail::MaxRelabeling(g).run();
}

// Order byte followed by the canonical upper-triangle bits, packed
// most-significant-bit first.
inline std::string canonical_form(const Graph& g) {
  const int n = g.order();
  const auto rows = canonical_rows(g);
  std::string out(1, static_cast<char>(n));
  unsigned acc = 0;
  int filled = 0;
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      acc = (acc << 1) | ((rows[p] >> q) & 1U);
      if (++filled == 8) {
        out.push_back(static_cast<char>(acc));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>(acc << (8 - filled)));
  return out;
}

// Decides whether some relabeling of a partly built graph is provably
// larger. Rows [0, prefix_rows) of `rows` must be final, and every vertex in
// `complete` has its final neighborhood. Branches that would need an
// unfinished vertex's row are abandoned without a verdict, so `false` means
// "cannot rule out canonical".
class CanonicityTest {
 public:
  CanonicityTest(std::span<const VertexSet> rows, int n, int prefix_rows, VertexSet complete)
      : rows_(rows), n_(n), limit_(prefix_rows), complete_(complete) {}

  bool beaten() {
    if (limit_ == 0 || n_ == 0) return false;
    detail::CellList start;
    start.cells[0] = low_mask(n_);
    start.count = 1;
    return descend(0, start);
  }

 private:
  bool descend(int p, const detail::CellList& cl) {
    const VertexSet own = rows_[p] & ~low_mask(p + 1);
    for (VertexSet cand = cl.cells[0] & complete_; cand != 0; cand &= cand - 1) {
      const int x = std::countr_zero(cand);
      const VertexSet nb = rows_[x];
      const int c = detail::compare_rows(detail::best_row(nb, cl, p, x), own);
      if (c > 0) return true;
      if (c < 0 || p + 1 >= limit_) continue;
      detail::CellList next;
      detail::refine(nb, cl, x, next);
      if (descend(p + 1, next)) return true;
    }
    return false;
  }

  std::span<const VertexSet> rows_;
  int n_;
  int limit_;
  VertexSet complete_;
};

inline bool is_canonical(const Graph& g) {
  return !CanonicityTest(g.rows(), g.order(), g.order(), low_mask(g.order())).beaten();
}

inline Graph canonical_graph(const Graph& g) {
  const auto rows = canonical_rows(g);
  std::vector<std::pair<int, int>> edges;
  for (int p = 0; p < g.order(); ++p) {
    for (VertexSet r = rows[p]; r != 0; r &= r - 1) edges.emplace_back(p, std::countr_zero(r));
  }
  return Graph::from_edges(g.order(), edges);
}

// Exhaustive permutation search; vertices of g1 are mapped in index order to
// unused vertices of g2 with equal degree, keeping adjacency to the already
// mapped prefix consistent.
inline bool is_isomorphic(const Graph& g1, const Graph& g2) {
  if (g1.order() != g2.order()) {
    throw Error(ErrorCode::kOrderMismatch, std::to_string(g1.order()) + " vs " +
                                               std::to_string(g2.order()));
  }
  const int n = g1.order();
  if (g1.edge_count() != g2.edge_count()) return false;
  std::vector<int> d1(n), d2(n);
  for (int v = 0; v < n; ++v) {
    d1[v] = g1.degree(v);
    d2[v] = g2.degree(v);
  }
  {
    auto s1 = d1, s2 = d2;
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    if (s1 != s2) return false;
  }
  std::array<int, kMaxOrder> image{};
  VertexSet used = 0;
  auto extend = [&](auto&& self, int v) -> bool {
    if (v == n) return true;
    for (int w = 0; w < n; ++w) {
      if ((used & bit(w)) != 0 || d2[w] != d1[v]) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u) ok = g1.has_edge(u, v) == g2.has_edge(image[u], w);
      if (!ok) continue;
      image[v] = w;
      used |= bit(w);
      if (self(self, v + 1)) return true;
      used &= ~bit(w);
    }
    return false;
  };
  return extend(extend, 0);
}

}  // namespace regenum
