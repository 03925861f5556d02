// Copyright 2026 The Authors.
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
#include <set>
#include <vector>

#include "blockade/blockade.hpp"
#include "fixtures.hpp"

namespace {

using namespace blockade;
using namespace fixtures;

std::set<Vertex> as_set(const std::vector<Vertex>& v) { return {v.begin(), v.end()}; }

std::set<Vertex> incident_and_terminal(const CommitteeTree& t, const EdgeSet& x) {
  std::set<Vertex> out;
  const auto inc = as_set(incident_vertices(t, x));
  for (Vertex v : terminal_vertices(t, x)) {
    if (inc.count(v)) out.insert(v);
  }
  return out;
}

// Every upward path from a party leaf whose interior avoids V(x) contributes
// all of its edges.
EdgeSet path_flow(const CommitteeTree& t, const EdgeSet& x, Party p) {
  const auto inc = as_set(incident_vertices(t, x));
  EdgeSet out(t.vertex_count());
  for (Vertex leaf = 0; leaf < t.vertex_count(); ++leaf) {
    if (!t.is_party(leaf, p)) continue;
    std::vector<Vertex> path{leaf};
    while (path.back() != t.root()) path.push_back(t.parent(path.back()));
    for (std::size_t len = 1; len < path.size(); ++len) {
      bool ok = true;
      for (std::size_t i = 1; i < len; ++i) ok = ok && !inc.count(path[i]);
      if (!ok) continue;
      for (std::size_t i = 0; i < len; ++i) out.insert(path[i]);
    }
  }
  return out;
}

template <class Visit>
void all_small_instances(int max_n, Visit&& visit) {
  for (int n = 1; n <= max_n; ++n) {
    for (const auto& shape : rooted_tree_shapes(n)) for_each_labelling(shape, visit);
  }
}

template <class Visit>
void all_edge_sets(const CommitteeTree& t, Visit&& visit) {
  const int n = t.vertex_count();
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    EdgeSet x(n);
    for (int i = 0; i + 1 < n; ++i) {
      if (mask & (1u << i)) x.insert(i + 1);
    }
    visit(x);
  }
}

TEST(Accumulation, CountsInMinusOut) {
  const auto t1 = fx1();
  EXPECT_EQ(accumulation(t1, edges(t1, {2}), 0), 1);
  const auto t2 = fx2();
  EXPECT_EQ(accumulation(t2, edges(t2, {3, 1}), 1), 0);
  const auto t3 = fx3();
  EXPECT_EQ(accumulation(t3, edges(t3, {1, 2, 3}), 0), 3);
}

TEST(Accumulation, UnknownVertexIsInputError) {
  const auto t = fx1();
  EXPECT_THROW(accumulation(t, EdgeSet(3), 7), InputError);
  EXPECT_THROW(accumulation_diff(t, EdgeSet(3), EdgeSet(3), -1), InputError);
}

TEST(AccumulationDiff, Examples) {
  const auto t1 = fx1();
  EXPECT_EQ(accumulation_diff(t1, edges(t1, {2}), edges(t1, {1}), 0), 0);
  const auto t3 = fx3();
  EXPECT_EQ(accumulation_diff(t3, edges(t3, {1, 2}), edges(t3, {3}), 0), 1);
  const auto t2 = fx2();
  const auto x = edges(t2, {5, 6, 2});
  const auto y = edges(t2, {3, 4, 1});
  EXPECT_EQ(accumulation_diff(t2, x, y, 2), 1);  // two in, one out; y has nothing at c2
}

TEST(IncidentVertices, Examples) {
  const auto t1 = fx1();
  EXPECT_EQ(incident_vertices(t1, edges(t1, {2})), (std::vector<Vertex>{0, 2}));
  EXPECT_TRUE(incident_vertices(t1, EdgeSet(3)).empty());
  const auto t2 = fx2();
  EXPECT_EQ(incident_vertices(t2, edges(t2, {1})), (std::vector<Vertex>{0, 1}));
}

TEST(TerminalVertices, Examples) {
  const auto t1 = fx1();
  EXPECT_EQ(incident_and_terminal(t1, edges(t1, {2})), (std::set<Vertex>{0}));
  const auto t2 = fx2();
  EXPECT_EQ(incident_and_terminal(t2, edges(t2, {3})), (std::set<Vertex>{1}));
  EXPECT_EQ(incident_and_terminal(t2, edges(t2, {3, 1})), (std::set<Vertex>{0}));
  EXPECT_TRUE(as_set(terminal_vertices(t2, edges(t2, {1, 2, 3}))).count(0));
}

TEST(Flow, BlueExamples) {
  const auto t1 = fx1();
  EXPECT_EQ(blue_flow(t1, EdgeSet(3)), edges(t1, {1}));
  const auto t2 = fx2();
  EXPECT_EQ(blue_flow(t2, edges(t2, {5, 6, 2})), path_flow(t2, edges(t2, {5, 6, 2}), Party::Blue));
  EXPECT_EQ(blue_flow(t2, edges(t2, {5, 6, 2})), edges(t2, {3, 4, 1}));
  EXPECT_EQ(blue_flow(t2, edges(t2, {1})), edges(t2, {3, 4}));
}

TEST(Flow, RedExamples) {
  const auto t1 = fx1();
  EXPECT_EQ(red_flow(t1, EdgeSet(3)), edges(t1, {2}));
  const auto t5 = fx5();
  EXPECT_EQ(red_flow(t5, edges(t5, {2, 3, 1})), edges(t5, {4}));
  const auto t2 = fx2();
  EXPECT_EQ(red_flow(t2, EdgeSet(7)), path_flow(t2, EdgeSet(7), Party::Red));
  EXPECT_EQ(red_flow(t2, EdgeSet(7)), edges(t2, {5, 6, 2}));
}

TEST(Flow, MatchesPathEnumerationOnAllSmallTrees) {
  long long checked = 0;
  all_small_instances(7, [&](const CommitteeTree& t) {
    all_edge_sets(t, [&](const EdgeSet& x) {
      ASSERT_EQ(blue_flow(t, x), path_flow(t, x, Party::Blue)) << to_ctree_text(t) << to_string(x);
      ASSERT_EQ(red_flow(t, x), path_flow(t, x, Party::Red)) << to_ctree_text(t) << to_string(x);
      ++checked;
    });
  });
  EXPECT_GT(checked, 100000);
}

TEST(Accumulation, SumsToZeroAndIsAntisymmetric) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const auto t = random_tree(rng, 1 + static_cast<int>(rng() % 30));
    const auto x = random_edge_set(rng, t);
    const auto y = random_edge_set(rng, t);
    int sum = 0;
    for (Vertex v = 0; v < t.vertex_count(); ++v) {
      sum += accumulation(t, x, v);
      EXPECT_EQ(accumulation_diff(t, x, y, v), -accumulation_diff(t, y, x, v));
    }
    EXPECT_EQ(sum, 0);
  }
}

TEST(Vote, Examples) {
  EXPECT_EQ(vote_outcome(fx1()).result, VoteResult::Tie);
  const auto v3 = vote_outcome(fx3());
  EXPECT_EQ(v3.result, VoteResult::Blue);
  EXPECT_EQ(v3.margin[0], 2 - 1);
  const auto v2 = vote_outcome(fx2());
  EXPECT_EQ(v2.result, VoteResult::Tie);
  EXPECT_EQ(v2.margin[0], 0);
  EXPECT_EQ(v2.margin[1], 2);
  EXPECT_EQ(v2.margin[2], -2);
}

TEST(Vote, OpenFrontierIsUnsupported) { EXPECT_THROW(vote_outcome(fxp()), UnsupportedInstance); }

// Relabels vertices by a random permutation, which also reorders children.
CommitteeTree permuted(const CommitteeTree& t, std::mt19937_64& rng, std::vector<Vertex>& perm) {
  const int n = t.vertex_count();
  perm.resize(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Vertex> parent(static_cast<std::size_t>(n));
  std::vector<Mark> marks(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    parent[perm[v]] = t.parent(v) == kNoVertex ? kNoVertex : perm[t.parent(v)];
    marks[perm[v]] = t.mark(v);
  }
  return CommitteeTree(parent, marks);
}

TEST(Vote, InvariantUnderRelabelling) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const auto t = random_tree(rng, 1 + static_cast<int>(rng() % 25));
    std::vector<Vertex> perm;
    const auto p = permuted(t, rng, perm);
    const auto a = vote_outcome(t);
    const auto b = vote_outcome(p);
    EXPECT_EQ(a.result, b.result);
    for (Vertex v = 0; v < t.vertex_count(); ++v) EXPECT_EQ(a.margin[v], b.margin[perm[v]]);
  }
}

TEST(CommitteeTree, RejectsMalformedStructure) {
  EXPECT_THROW(CommitteeTree({kNoVertex, kNoVertex}, {N, N}), InputError);
  EXPECT_THROW(CommitteeTree({1, 0}, {N, N}), InputError);
  EXPECT_THROW(CommitteeTree({kNoVertex, 0, 1}, {N, B, N}), InputError);
  EXPECT_THROW(CommitteeTree({kNoVertex, 0, 1}, {N, O, N}), InputError);
  EXPECT_THROW(CommitteeTree({kNoVertex, 0}, {B, N}), PreconditionViolated);
  EXPECT_THROW(CommitteeTree({kNoVertex}, {R}), PreconditionViolated);
}

TEST(CtreeFormat, ParsesAndRoundTrips) {
  const std::string text =
      "ctree v1\n"
      "# comment\n"
      "v 0 root -\n"
      "v 1 0 B\n"
      "\n"
      "v 2 0 R\n";
  const auto t = parse_ctree(text);
  EXPECT_EQ(t.vertex_count(), 3);
  EXPECT_EQ(t.mark(1), Mark::Blue);
  const auto written = to_ctree_text(t);
  EXPECT_EQ(to_ctree_text(parse_ctree(written)), written);
}

TEST(CtreeFormat, RejectsBadInput) {
  EXPECT_THROW(parse_ctree("v 0 root -\n"), InputError);
  EXPECT_THROW(parse_ctree("ctree v1\nv 0 root -\nv 0 0 B\n"), InputError);
  EXPECT_THROW(parse_ctree("ctree v1\nv 0 root -\nv 1 root -\n"), InputError);
  EXPECT_THROW(parse_ctree("ctree v1\nv 0 root -\nv 2 0 B\n"), InputError);
  EXPECT_THROW(parse_ctree("ctree v1\nv 0 root -\nv 1 0 B\nv 2 1 R\n"), InputError);
  EXPECT_THROW(parse_ctree("ctree v1\nv 0 root -\nv 1 5 B\n"), InputError);
  EXPECT_THROW(parse_ctree("ctree v1\nv 0 root -\nv 1 0 X\n"), InputError);
  EXPECT_THROW(parse_ctree("ctree v1\nv 0 root B\n"), PreconditionViolated);
}

TEST(EdgeSetFormat, ParsesSortedSources) {
  const auto t = fx2();
  const auto x = parse_edge_set(t, "6 1 3");
  EXPECT_EQ(x.sources(), (std::vector<Vertex>{1, 3, 6}));
  EXPECT_EQ(to_string(x), "1 3 6");
  EXPECT_THROW(parse_edge_set(t, "0"), InputError);
  EXPECT_THROW(parse_edge_set(t, "9"), InputError);
  EXPECT_THROW(parse_edge_set(t, "x"), InputError);
}

}  // namespace
