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

// Independent counting route: walk every labeled k-regular graph (with
// vertex 0 joined to 1..k, which every isomorphism class admits), keep the
// connected ones and count distinct canonical forms. Shares no code with
// the orderly search in generator.hpp.

#include <array>
#include <cstdint>
#include <set>
#include <string>

#include "regenum/canonical.hpp"
#include "regenum/error.hpp"
#include "regenum/graph.hpp"
#include "regenum/metrics.hpp"

namespace regenum {

inline constexpr int kOracleMaxOrder = 10;

template <typename Visitor>
void for_each_labeled_regular(const DegreeSpec& spec, Visitor&& visit) {
  const int n = spec.n;
  const int k = spec.k;
  std::array<VertexSet, kMaxOrder> rows{};
  std::array<int, kMaxOrder> need{};
  for (int v = 0; v < n; ++v) need[v] = k;
  for (int w = 1; w <= k; ++w) {
    rows[0] |= bit(w);
    rows[w] |= bit(0);
    --need[w];
  }
  need[0] = 0;

  // Choose need[v] partners for v among higher vertices, as a combination
  // over the candidates in increasing order.
  auto fill = [&](auto&& self, int v, int from) -> void {
    if (v == n) {
      visit(Graph::from_rows(n, std::span<const VertexSet>(rows.data(), n)));
      return;
    }
    if (need[v] == 0) {
      self(self, v + 1, v + 2);
      return;
    }
    for (int w = from; w < n; ++w) {
      if (need[w] == 0) continue;
      rows[v] |= bit(w);
      rows[w] |= bit(v);
      --need[v];
      --need[w];
      self(self, v, w + 1);
      ++need[v];
      ++need[w];
      rows[v] &= ~bit(w);
      rows[w] &= ~bit(v);
    }
  };
  if (k == 0) {
    visit(Graph(n));
    return;
  }
  fill(fill, 1, 2);
}

inline std::uint64_t count_oracle(const DegreeSpec& spec) {
  spec.validate();
  if (spec.n > kOracleMaxOrder) {
    throw Error(ErrorCode::kOracleScaleExceeded,
                "n=" + std::to_string(spec.n) + " > " + std::to_string(kOracleMaxOrder));
  }
  std::set<std::string> classes;
  for_each_labeled_regular(spec, [&](const Graph& g) {
    if (is_connected(g)) classes.insert(canonical_form(g));
  });
  return classes.size();
}

}  // namespace regenum
