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

// graph6: an order field (one byte n+63 for n <= 62, else '~' plus three
// bytes of 6 bits each), then the upper triangle in column order
// x(0,1) x(0,2) x(1,2) x(0,3) ... packed six bits per byte, each byte + 63,
// zero-padded.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "regenum/error.hpp"
#include "regenum/graph.hpp"

namespace regenum {

inline std::string to_graph6(const Graph& g) {
  const int n = g.order();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else {
    out.push_back('~');
    out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
    out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
    out.push_back(static_cast<char>((n & 63) + 63));
  }
  int acc = 0;
  int filled = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
  return out;
}

inline Graph from_graph6(std::string_view text) {
  constexpr std::string_view kHeader = ">>graph6<<";
  std::size_t base = 0;
  if (text.starts_with(kHeader)) {
    text.remove_prefix(kHeader.size());
    base = kHeader.size();
  }
  auto value = [&](std::size_t i) -> int {
    if (i >= text.size()) throw ParseError(base + i, "truncated graph6 string");
    const int c = static_cast<unsigned char>(text[i]);
    if (c < 63 || c > 126) throw ParseError(base + i, "illegal graph6 character");
    return c - 63;
  };
  if (text.empty()) throw ParseError(base, "empty graph6 string");
  std::size_t pos = 0;
  int n = value(pos++);
  if (n == 63) {
    if (value(pos) == 63) throw ParseError(base + pos, "order exceeds 64");
    n = (value(1) << 12) | (value(2) << 6) | value(3);
    pos = 4;
  }
  if (n > kMaxOrder) throw ParseError(base, "order " + std::to_string(n) + " exceeds 64");
  const std::size_t bits = static_cast<std::size_t>(n) * (n - 1) / 2;
  const std::size_t body = (bits + 5) / 6;
  if (text.size() < pos + body) throw ParseError(base + text.size(), "truncated graph6 string");
  if (text.size() > pos + body) throw ParseError(base + pos + body, "trailing bytes after graph6 body");

  std::vector<std::pair<int, int>> edges;
  std::size_t k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      const int chunk = value(pos + k / 6);
      if ((chunk >> (5 - k % 6)) & 1) edges.emplace_back(i, j);
    }
  }
  if (bits % 6 != 0) {
    const std::size_t last = pos + body - 1;
    const int pad = static_cast<int>(6 - bits % 6);
    if ((value(last) & ((1 << pad) - 1)) != 0) throw ParseError(base + last, "nonzero padding bits");
  }
  return Graph::from_edges(n, edges);
}

}  // namespace regenum
