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


// Brute-force matroid oracles and small instance families for tests.

#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "blockade/blockade.hpp"

namespace oracles {

using blockade::Element;
using blockade::ElementSet;
using blockade::MatroidLink;
using blockade::TreeOfMatroids;
using blockade::UniformMatroid;

// Node t gets reals[t] real elements; node parent[t] and t share one dummy.
inline TreeOfMatroids build_tree(const std::vector<int>& parent, const std::vector<int>& reals,
                                 const std::vector<int>& ranks) {
  const int n = static_cast<int>(parent.size());
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> elems(static_cast<std::size_t>(n));
  int next = 0;
  for (int t = 0; t < n; ++t) {
    for (int i = 0; i < reals[t]; ++i) {
      const std::string e = "e" + std::string(1, static_cast<char>('a' + next++));
      elems[t].push_back(e);
      names.push_back(e);
    }
  }
  for (int t = 1; t < n; ++t) {
    const std::string g = "g" + std::to_string(t);
    elems[t].push_back(g);
    elems[parent[t]].push_back(g);
    names.push_back(g);
  }
  std::sort(names.begin(), names.end());
  auto id = [&](const std::string& s) {
    return static_cast<Element>(std::lower_bound(names.begin(), names.end(), s) - names.begin());
  };
  std::vector<UniformMatroid> nodes;
  std::vector<std::string> node_names;
  for (int t = 0; t < n; ++t) {
    ElementSet ground;
    for (const auto& e : elems[t]) ground.push_back(id(e));
    std::sort(ground.begin(), ground.end());
    nodes.push_back({ranks[t], ground});
    node_names.push_back("t" + std::to_string(t));
  }
  std::vector<MatroidLink> links;
  for (int t = 1; t < n; ++t) links.push_back({parent[t], t, id("g" + std::to_string(t))});
  return TreeOfMatroids(names, node_names, nodes, links);
}

// Trees of up to four nodes up to isomorphism.
inline std::vector<std::vector<int>> small_shapes(int max_nodes) {
  std::vector<std::vector<int>> all = {{-1}, {-1, 0}, {-1, 0, 1}, {-1, 0, 1, 2}, {-1, 0, 0, 0}};
  std::vector<std::vector<int>> out;
  for (auto& s : all) {
    if (static_cast<int>(s.size()) <= max_nodes) out.push_back(s);
  }
  return out;
}

// Every shape with at most max_nodes nodes, at most max_reals reals per
// node, node ranks at most max_rank and at most max_ground real elements.
template <class Visit>
void for_each_small_tree(int max_nodes, int max_reals, int max_rank, int max_ground, Visit&& visit) {
  for (const auto& shape : small_shapes(max_nodes)) {
    const int n = static_cast<int>(shape.size());
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    for (int t = 1; t < n; ++t) {
      ++degree[t];
      ++degree[shape[t]];
    }
    std::vector<int> reals(static_cast<std::size_t>(n), 0);
    for (;;) {
      int total = 0;
      for (int r : reals) total += r;
      if (total <= max_ground) {
        std::vector<int> ranks(static_cast<std::size_t>(n), 0);
        for (;;) {
          visit(build_tree(shape, reals, ranks));
          int t = 0;
          while (t < n && ++ranks[t] > std::min(max_rank, reals[t] + degree[t])) ranks[t++] = 0;
          if (t == n) break;
        }
      }
      int t = 0;
      while (t < n && ++reals[t] > max_reals) reals[t++] = 0;
      if (t == n) break;
    }
  }
}

inline std::uint32_t mask_of(const ElementSet& ground, const ElementSet& s) {
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < ground.size(); ++i) {
    if (std::binary_search(s.begin(), s.end(), ground[i])) m |= 1u << i;
  }
  return m;
}

inline ElementSet set_of(const ElementSet& ground, std::uint32_t mask) {
  ElementSet out;
  for (std::size_t i = 0; i < ground.size(); ++i) {
    if (mask & (1u << i)) out.push_back(ground[i]);
  }
  return out;
}

// dependent[m] iff subset m of the ground set contains a listed circuit.
inline std::vector<bool> dependence_table(const ElementSet& ground, const std::vector<ElementSet>& circuits) {
  const std::size_t k = ground.size();
  std::vector<bool> dep(std::size_t{1} << k, false);
  for (const auto& c : circuits) dep[mask_of(ground, c)] = true;
  for (std::size_t bit = 0; bit < k; ++bit) {
    for (std::uint32_t m = 0; m < dep.size(); ++m) {
      if ((m >> bit) & 1u) dep[m] = dep[m] || dep[m ^ (1u << bit)];
    }
  }
  return dep;
}

// Size of a largest set independent in both, by trying every subset.
inline int max_common_independent(const TreeOfMatroids& m, const TreeOfMatroids& n) {
  const auto& ground = m.ground_set();
  int best = 0;
  for (std::uint32_t mask = 0; mask < (1u << ground.size()); ++mask) {
    const int size = __builtin_popcount(mask);
    if (size <= best) continue;
    const auto s = set_of(ground, mask);
    if (blockade::is_independent(m, s) && blockade::is_independent(n, s)) best = size;
  }
  return best;
}

}  // namespace oracles
