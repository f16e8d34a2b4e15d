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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "regenum/generator.hpp"
#include "regenum/metrics.hpp"
#include "test_util.hpp"

namespace regenum {
namespace {

using testing_util::floyd_warshall;
using testing_util::random_graph;
using testing_util::random_permutation;

TEST(DegreeSpecTest, Validity) {
  EXPECT_TRUE((DegreeSpec{5, 4}.valid()));
  EXPECT_TRUE((DegreeSpec{1, 0}.valid()));
  EXPECT_FALSE((DegreeSpec{5, 3}.valid()));  // odd n*k
  EXPECT_FALSE((DegreeSpec{4, 4}.valid()));  // k >= n
  EXPECT_FALSE((DegreeSpec{0, 0}.valid()));
  EXPECT_FALSE((DegreeSpec{65, 2}.valid()));
  EXPECT_THROW((DegreeSpec{7, 3}.validate()), Error);
}

TEST(GraphTest, RejectsBadEdgesAndRows) {
  EXPECT_THROW(Graph::from_edges(3, {{0, 0}}), Error);
  EXPECT_THROW(Graph::from_edges(3, {{0, 3}}), Error);
  const std::vector<VertexSet> asym{bit(1), 0};
  EXPECT_THROW(Graph::from_rows(2, asym), Error);
}

TEST(GraphTest, Degree) {
  const Graph k4 = graphs::complete(4);
  EXPECT_EQ(degree(k4, 0), 3);
  EXPECT_EQ(degree(Graph(1), 0), 0);
  const Graph c5 = graphs::cycle(5);
  for (int v = 0; v < 5; ++v) EXPECT_EQ(degree(c5, v), 2);
}

TEST(GraphTest, SymmetricAndLoopFree) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = random_graph(rng, 1 + trial % 20, 0.4);
    for (int v = 0; v < g.order(); ++v) {
      EXPECT_FALSE(g.has_edge(v, v));
      for (int w = 0; w < g.order(); ++w) EXPECT_EQ(g.has_edge(v, w), g.has_edge(w, v));
    }
  }
}

TEST(ConnectivityTest, Examples) {
  EXPECT_TRUE(is_connected(graphs::cycle(5)));
  EXPECT_FALSE(is_connected(Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}})));
  EXPECT_TRUE(is_connected(Graph(1)));
}

TEST(DistanceTest, SmallExamples) {
  const auto k4 = all_pairs_distances(graphs::complete(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_EQ(k4.at(i, j), i == j ? 0 : 1);

  const auto c5 = all_pairs_distances(graphs::cycle(5));
  for (int i = 0; i < 5; ++i) {
    std::vector<int> row;
    for (int j = 0; j < 5; ++j) row.push_back(c5.at(i, j));
    std::sort(row.begin(), row.end());
    EXPECT_EQ(row, (std::vector<int>{0, 1, 1, 2, 2}));
  }
}

TEST(DistanceTest, PetersenRowsMatchFloydWarshall) {
  const Graph p = graphs::petersen();
  const auto d = all_pairs_distances(p);
  const auto oracle = floyd_warshall(p);
  for (int i = 0; i < 10; ++i) {
    std::array<int, 3> histogram{};
    for (int j = 0; j < 10; ++j) {
      EXPECT_EQ(d.at(i, j), oracle[i][j]);
      ++histogram[d.at(i, j)];
    }
    EXPECT_EQ(histogram, (std::array<int, 3>{1, 3, 6}));
  }
}

TEST(DistanceTest, DisconnectedIsAnError) {
  const Graph two = Graph::from_edges(4, {{0, 1}, {2, 3}});
  try {
    all_pairs_distances(two);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDisconnected);
  }
  EXPECT_THROW(aspl(two), Error);
  EXPECT_THROW(diameter(two), Error);
}

TEST(AsplTest, Examples) {
  EXPECT_TRUE(aspl(graphs::complete(4)).identical({12, 12}));
  EXPECT_TRUE(aspl(graphs::cycle(5)).identical({30, 20}));
  EXPECT_EQ(aspl(graphs::cycle(5)), (AsplValue{3, 2}));
  EXPECT_TRUE(aspl(graphs::petersen()).identical({150, 90}));
  EXPECT_EQ(aspl(graphs::petersen()).reduced().to_string(), "5/3");
}

TEST(AsplTest, SingleVertexIsDegenerate) {
  try {
    aspl(Graph(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateOrder);
  }
}

TEST(AsplTest, ExactComparisons) {
  EXPECT_LT((AsplValue{5, 3}), (AsplValue{17, 10}));
  EXPECT_EQ((AsplValue{150, 90}), (AsplValue{5, 3}));
  EXPECT_FALSE((AsplValue{150, 90}).identical({5, 3}));
  // Values whose cross products exceed 64 bits still compare exactly.
  const AsplValue a{(1ULL << 62) + 1, (1ULL << 62)};
  const AsplValue b{(1ULL << 62) + 3, (1ULL << 62) + 2};
  EXPECT_LT(b, a);
}

TEST(DiameterTest, Examples) {
  EXPECT_EQ(diameter(graphs::complete(4)), 1);
  EXPECT_EQ(diameter(graphs::cycle(5)), 2);
  EXPECT_EQ(diameter(graphs::petersen()), 2);
  EXPECT_EQ(diameter(Graph(1)), 0);
}

TEST(LowerBoundTest, Examples) {
  EXPECT_TRUE(aspl_lower_bound({10, 3}).identical({15, 9}));
  EXPECT_EQ(aspl_lower_bound({10, 3}), (AsplValue{5, 3}));
  EXPECT_TRUE(aspl_lower_bound({32, 4}).identical({73, 31}));
  for (int k = 2; k <= 8; ++k) {
    if ((k + 1) * k % 2 == 0) {
      EXPECT_EQ(aspl_lower_bound({k + 1, k}), (AsplValue{1, 1}));
    }
  }
  EXPECT_EQ(aspl_lower_bound({2, 1}), (AsplValue{1, 1}));
}

TEST(LowerBoundTest, Errors) {
  try {
    aspl_lower_bound({4, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasibleSpec);
  }
  EXPECT_THROW(aspl_lower_bound({5, 3}), Error);
  EXPECT_THROW(aspl_lower_bound({1, 0}), Error);
}

TEST(LowerBoundTest, PetersenIsTight) {
  EXPECT_EQ(aspl(graphs::petersen()), aspl_lower_bound({10, 3}));
}

// Sum of the distance matrix equals the ASPL numerator, the matrix is
// symmetric with a zero diagonal, and distances agree with Floyd-Warshall.
TEST(MetricsPropertyTest, AsplMatchesDistanceMatrix) {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const Graph g = random_graph(rng, 2 + trial % 24, 0.25);
    if (!is_connected(g)) continue;
    ++checked;
    const auto d = all_pairs_distances(g);
    const auto oracle = floyd_warshall(g);
    for (int i = 0; i < g.order(); ++i) {
      EXPECT_EQ(d.at(i, i), 0);
      for (int j = 0; j < g.order(); ++j) {
        EXPECT_EQ(d.at(i, j), d.at(j, i));
        EXPECT_EQ(d.at(i, j), oracle[i][j]);
      }
    }
    EXPECT_EQ(aspl(g).numerator, d.sum());
    EXPECT_EQ(diameter(g), d.max());
    EXPECT_GE(aspl(g), (AsplValue{1, 1}));
  }
  EXPECT_GT(checked, 100);
}

TEST(MetricsPropertyTest, RelabelingInvariance) {
  std::mt19937_64 rng(5);
  for (const DegreeSpec spec : {DegreeSpec{10, 3}, DegreeSpec{9, 4}}) {
    enumerate(spec, [&](const Graph& g) {
      for (int round = 0; round < 3; ++round) {
        const Graph h = g.relabeled(random_permutation(rng, g.order()));
        EXPECT_EQ(is_connected(h), is_connected(g));
        EXPECT_TRUE(aspl(h).identical(aspl(g)));
        EXPECT_EQ(diameter(h), diameter(g));
      }
    });
  }
}

TEST(MetricsPropertyTest, GeneratedGraphsRespectLowerBound) {
  for (const DegreeSpec spec : {DegreeSpec{10, 3}, DegreeSpec{12, 3}, DegreeSpec{10, 4}, DegreeSpec{11, 4},
                                DegreeSpec{9, 2}}) {
    const AsplValue bound = aspl_lower_bound(spec);
    enumerate(spec, [&](const Graph& g) { EXPECT_GE(aspl(g), bound); });
  }
}

}  // namespace
}  // namespace regenum
