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

#include <string>
#include <vector>

#include "blockade/blockade.hpp"
#include "fixtures.hpp"
#include "matroid_oracles.hpp"

namespace {

using namespace blockade;

ElementSet named(const TreeOfMatroids& tm, std::initializer_list<const char*> names) {
  ElementSet out;
  for (const char* n : names) out.push_back(element_by_name(tm, n));
  return normalized(out);
}

MatroidPair uneven_path() {
  return parse_tmat(
      "tmat v1\n"
      "node t1 rankM 2 rankN 1 elems a b g\n"
      "node t2 rankM 1 rankN 3 elems g c d e\n"
      "link t1 t2 dummy g\n");
}

std::vector<MatroidPair> random_pairs(std::uint64_t seed, int count, int max_nodes, int node_size) {
  Rng rng(seed);
  std::vector<MatroidPair> out;
  for (int i = 0; i < count; ++i) out.push_back(random_tmat(rng, detail::uniform(rng, 1, max_nodes), node_size));
  return out;
}

bool connected_within(const TreeOfMatroids& tm, const std::vector<int>& nodes, int start) {
  std::vector<int> seen{start};
  for (std::size_t i = 0; i < seen.size(); ++i) {
    for (const auto& nb : tm.neighbours(seen[i])) {
      const bool member = std::find(nodes.begin(), nodes.end(), nb.node) != nodes.end();
      if (member && std::find(seen.begin(), seen.end(), nb.node) == seen.end()) seen.push_back(nb.node);
    }
  }
  return seen.size() == nodes.size();
}

TEST(IntersectionBuilder, KValues) {
  const auto two = fixtures::fxm2();
  EXPECT_EQ(k_value(two, 0), 0);
  EXPECT_EQ(k_value(two, 1), 0);
  EXPECT_EQ(k_value(fixtures::fxm4(), 0), -1);
  const auto path = uneven_path();
  EXPECT_EQ(k_value(path, 0), -1);
  EXPECT_EQ(k_value(path, 1), 2);
}

TEST(IntersectionBuilder, AugmentedTreeShape) {
  const auto path = uneven_path();
  const auto aug = build_augmented_tree(path, element_by_name(path.m, "a"));
  const auto& t = aug.committee;
  ASSERT_EQ(t.vertex_count(), 5);
  EXPECT_EQ(aug.root_node, 0);
  EXPECT_EQ(aug.node_of, (std::vector<int>{0, 1, -1, -1, -1}));
  EXPECT_EQ(aug.vertex_of, (std::vector<Vertex>{0, 1}));
  EXPECT_EQ(t.parent(1), 0);
  EXPECT_EQ(t.parent(2), 0);
  EXPECT_EQ(t.mark(2), Mark::Blue);
  EXPECT_EQ(t.parent(3), 1);
  EXPECT_EQ(t.parent(4), 1);
  EXPECT_EQ(t.mark(3), Mark::Red);
  EXPECT_EQ(t.mark(4), Mark::Red);
}

TEST(IntersectionBuilder, AugmentedTreeRootsAtOwner) {
  const auto path = uneven_path();
  const auto aug = build_augmented_tree(path, element_by_name(path.m, "c"));
  EXPECT_EQ(aug.root_node, 1);
  EXPECT_EQ(aug.vertex_of, (std::vector<Vertex>{1, 0}));
  EXPECT_THROW(build_augmented_tree(path, element_by_name(path.m, "g")), InputError);
}

TEST(IntersectionBuilder, BalancedPairGivesPacking) {
  const auto two = fixtures::fxm2();
  const auto cert = packing_or_covering_for_element(two, element_by_name(two.m, "a"));
  EXPECT_EQ(cert.kind, FederatedKind::Packing);
  EXPECT_EQ(cert.set, named(two.m, {"a", "b"}));
  EXPECT_EQ(cert.first, named(two.m, {"b"}));
  EXPECT_EQ(cert.second, named(two.m, {"a"}));
  EXPECT_EQ(cert.u_nodes, (std::vector<int>{0, 1}));
  ASSERT_EQ(cert.colours.size(), 2u);
  EXPECT_EQ(cert.colours[0].second, NodeColour::Green);
  EXPECT_EQ(cert.colours[1].second, NodeColour::Yellow);
}

TEST(IntersectionBuilder, SurplusNodeGivesCovering) {
  const auto four = fixtures::fxm4();
  const auto cert = packing_or_covering_for_element(four, element_by_name(four.m, "x2"));
  EXPECT_EQ(cert.kind, FederatedKind::Covering);
  EXPECT_EQ(cert.set, four.m.ground_set());
  EXPECT_TRUE(verify_covering(four.m, four.n.dual(), cert.set, cert.first, cert.second).passed());
}

TEST(IntersectionBuilder, NonBlockageRejected) {
  const auto two = fixtures::fxm2();
  const auto aug = build_augmented_tree(two, element_by_name(two.m, "a"));
  EXPECT_THROW(covering_from_strong_blue(two, aug, EdgeSet(aug.committee.vertex_count())), PreconditionViolated);
}

TEST(IntersectionBuilder, HypothesisEnforced) {
  const auto tight = parse_tmat(
      "tmat v1\nnode p rankM 0 rankN 1 elems a g\nnode q rankM 1 rankN 1 elems g b\nlink p q dummy g\n");
  EXPECT_THROW(packing_or_covering_for_element(tight, element_by_name(tight.m, "a")), PreconditionViolated);
  EXPECT_THROW(partition_packing_covering(tight), PreconditionViolated);
}

TEST(IntersectionBuilder, CertificatesOnRandomPairs) {
  int packings = 0, coverings = 0;
  for (const auto& pair : random_pairs(21, 120, 7, 5)) {
    const auto nstar = pair.n.dual();
    for (Element e : pair.m.ground_set()) {
      const auto cert = packing_or_covering_for_element(pair, e);
      ASSERT_TRUE(contains(cert.set, e)) << to_tmat_text(pair);
      ASSERT_TRUE(connected_within(pair.m, cert.u_nodes, pair.m.owner(e)));
      ElementSet reals;
      for (int t : cert.u_nodes) reals = set_union(reals, pair.m.real_elements(t));
      EXPECT_EQ(cert.set, reals);
      if (cert.kind == FederatedKind::Packing) {
        ++packings;
        EXPECT_TRUE(verify_packing(pair.m, nstar, cert.set, cert.first, cert.second).passed());
        EXPECT_EQ(cert.blockage.kind, CertificateKind::Red);
      } else {
        ++coverings;
        EXPECT_TRUE(verify_covering(pair.m, nstar, cert.set, cert.first, cert.second).passed());
        EXPECT_EQ(cert.blockage.kind, CertificateKind::StrongBlue);
      }
    }
  }
  EXPECT_GT(packings, 50);
  EXPECT_GT(coverings, 50);
}

TEST(IntersectionBuilder, ColoursFollowBlockageEdges) {
  for (const auto& pair : random_pairs(22, 80, 7, 5)) {
    for (Element e : pair.m.ground_set()) {
      const auto cert = packing_or_covering_for_element(pair, e);
      const auto aug = build_augmented_tree(pair, e);
      const auto& tree = aug.committee;
      auto colour_of = [&](int t) {
        for (const auto& [node, c] : cert.colours) {
          if (node == t) return c;
        }
        ADD_FAILURE() << "node without colour";
        return NodeColour::Green;
      };
      EXPECT_EQ(colour_of(aug.root_node), NodeColour::Green);
      for (int t : cert.u_nodes) {
        const Vertex v = aug.vertex_of[t];
        if (v == tree.root()) continue;
        const int up = aug.node_of[tree.parent(v)];
        const bool same = colour_of(t) == colour_of(up);
        EXPECT_EQ(same, cert.blockage.edges.contains(v));
      }
    }
  }
}

TEST(IntersectionBuilder, BalancedPartitionExample) {
  const auto two = fixtures::fxm2();
  const auto cert = intersection_certificate(two);
  EXPECT_TRUE(cert.report.passed());
  EXPECT_EQ(cert.p, named(two.m, {"a", "b"}));
  EXPECT_TRUE(cert.q.empty());
  EXPECT_EQ(cert.s_m, named(two.m, {"b"}));
  EXPECT_EQ(cert.s_n, named(two.m, {"a"}));
  EXPECT_EQ(cert.colours[0], NodeColour::Green);
  EXPECT_EQ(cert.colours[1], NodeColour::Yellow);
  EXPECT_EQ(cert.triple.common_independent.size(), 1u);
}

TEST(IntersectionBuilder, SurplusPartitionExample) {
  const auto four = fixtures::fxm4();
  const auto cert = intersection_certificate(four);
  EXPECT_TRUE(cert.p.empty());
  EXPECT_EQ(cert.q, four.m.ground_set());
  EXPECT_EQ(cert.d_mstar, named(four.m, {"x1"}));
  EXPECT_EQ(cert.d_n, named(four.m, {"x2"}));
}

TEST(IntersectionBuilder, ForestPartition) {
  const auto pair =
      parse_tmat("tmat v1\nnode p rankM 1 rankN 0 elems a\nnode q rankM 0 rankN 1 elems b\n");
  const auto cert = intersection_certificate(pair);
  EXPECT_TRUE(cert.report.passed());
  EXPECT_EQ(set_union(cert.p, cert.q), pair.m.ground_set());
  EXPECT_TRUE(cert.triple.common_independent.empty());
}

TEST(IntersectionBuilder, RandomPartitionsVerify) {
  for (const auto& pair : random_pairs(23, 150, 8, 5)) {
    const auto cert = intersection_certificate(pair);
    ASSERT_TRUE(cert.report.passed()) << to_tmat_text(pair);
    const auto nstar = pair.n.dual();
    EXPECT_TRUE(verify_packing(pair.m, nstar, cert.p, cert.s_m, cert.s_n).passed());
    EXPECT_TRUE(verify_covering(pair.m, nstar, cert.q, cert.d_mstar, cert.d_n).passed());
    EXPECT_TRUE(set_intersection(cert.p, cert.q).empty());
    EXPECT_EQ(set_union(cert.p, cert.q), pair.m.ground_set());
  }
}

TEST(IntersectionBuilder, TripleSizeIsMaximum) {
  Rng rng(24);
  int checked = 0;
  while (checked < 100) {
    const auto pair = random_tmat(rng, detail::uniform(rng, 1, 5), 4);
    if (pair.m.ground_set().size() > 10) continue;
    const auto cert = intersection_certificate(pair);
    ASSERT_EQ(static_cast<int>(cert.triple.common_independent.size()),
              oracles::max_common_independent(pair.m, pair.n));
    ++checked;
  }
}

TEST(IntersectionBuilder, DualPairSwapsRoles) {
  for (const auto& pair : random_pairs(25, 60, 6, 5)) {
    const MatroidPair swapped{pair.m.dual(), pair.n.dual()};
    const auto cert = partition_packing_covering(swapped);
    const auto nstar = pair.n.dual();
    EXPECT_TRUE(verify_covering(pair.m, nstar, cert.p, cert.s_m, cert.s_n).passed());
    EXPECT_TRUE(verify_packing(pair.m, nstar, cert.q, cert.d_mstar, cert.d_n).passed());
  }
}

TEST(IntersectionBuilder, OutputFormats) {
  EXPECT_EQ(parse_output_format("human"), OutputFormat::Human);
  EXPECT_EQ(parse_output_format("records"), OutputFormat::Records);
  EXPECT_THROW(parse_output_format("json"), InputError);
  const auto two = fixtures::fxm2();
  const std::string text = to_partition_text(two, intersection_certificate(two), OutputFormat::Records);
  EXPECT_NE(text.find("colour t1 green"), std::string::npos);
  EXPECT_NE(text.find("verified 1"), std::string::npos);
}

}  // namespace
