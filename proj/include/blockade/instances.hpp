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

// Seeded random instances and exhaustive enumeration of small committee
// trees.

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "blockade/blockage_engine.hpp"
#include "blockade/committee_tree.hpp"
#include "blockade/errors.hpp"
#include "blockade/matroid_core.hpp"
#include "blockade/tree_generator.hpp"

namespace blockade {

using Rng = std::mt19937_64;

namespace detail {

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace detail

// Vertex 0 is the root; leaves are blue, red or neutral with equal odds.
inline CommitteeTree random_tree(Rng& rng, int n) {
  if (n < 1) throw InputError("tree size must be positive");
  std::vector<Vertex> parent(static_cast<std::size_t>(n), kNoVertex);
  std::vector<bool> has_child(static_cast<std::size_t>(n), false);
  for (int v = 1; v < n; ++v) {
    parent[v] = detail::uniform(rng, 0, v - 1);
    has_child[parent[v]] = true;
  }
  std::vector<Mark> marks(static_cast<std::size_t>(n), Mark::None);
  for (int v = 1; v < n; ++v) {
    if (has_child[v]) continue;
    const int roll = detail::uniform(rng, 0, 2);
    marks[v] = roll == 0 ? Mark::Blue : roll == 1 ? Mark::Red : Mark::None;
  }
  return CommitteeTree(std::move(parent), std::move(marks));
}

// Uniformly random subset of the edges.
inline EdgeSet random_edge_set(Rng& rng, const CommitteeTree& tree, double density = 0.5) {
  std::bernoulli_distribution coin(density);
  EdgeSet x(tree.vertex_count());
  for (Vertex v = 0; v < tree.vertex_count(); ++v) {
    if (v != tree.root() && coin(rng)) x.insert(v);
  }
  return x;
}

// State 0 is the unmarked root. Every other state hangs below an earlier
// unmarked state, so all states are reachable; unmarked states may pick up
// extra children, including themselves.
inline PeriodicTreeSpec random_pgen(Rng& rng, int states) {
  if (states < 1) throw InputError("pgen needs at least one state");
  PeriodicTreeSpec spec;
  spec.root = 0;
  for (int s = 0; s < states; ++s) {
    spec.names.push_back("s" + std::to_string(s));
    Mark m = Mark::None;
    if (s > 0) {
      const int roll = detail::uniform(rng, 0, 2);
      m = roll == 0 ? Mark::Blue : roll == 1 ? Mark::Red : Mark::None;
    }
    spec.marks.push_back(m);
  }
  spec.children.assign(static_cast<std::size_t>(states), {});
  std::vector<int> open{0};
  for (int s = 1; s < states; ++s) {
    const int p = open[static_cast<std::size_t>(detail::uniform(rng, 0, static_cast<int>(open.size()) - 1))];
    spec.children[p].push_back(s);
    if (spec.marks[s] == Mark::None) open.push_back(s);
  }
  for (int p : open) {
    const int extra = detail::uniform(rng, 0, 2);
    for (int i = 0; i < extra; ++i) spec.children[p].push_back(detail::uniform(rng, 0, states - 1));
    std::sort(spec.children[p].begin(), spec.children[p].end());
  }
  validate(spec);
  return spec;
}

// A random tree of `nodes` uniform matroid pairs, each node holding at most
// `node_size` elements (dummies included), with ranks and coranks at least
// the node degree.
inline MatroidPair random_tmat(Rng& rng, int nodes, int node_size) {
  if (nodes < 1 || node_size < 1) throw InputError("tmat bounds must be positive");
  if (nodes > 1 && node_size < 2) throw InputError("nodes of size below 2 cannot carry a link");
  std::vector<int> parent(static_cast<std::size_t>(nodes), -1);
  std::vector<int> degree(static_cast<std::size_t>(nodes), 0);
  for (int t = 1; t < nodes; ++t) {
    std::vector<int> eligible;
    for (int s = 0; s < t; ++s) {
      if (2 * (degree[s] + 1) <= node_size) eligible.push_back(s);
    }
    if (eligible.empty()) throw InputError("node size too small for a tree of this many nodes");
    parent[t] = eligible[static_cast<std::size_t>(detail::uniform(rng, 0, static_cast<int>(eligible.size()) - 1))];
    ++degree[t];
    ++degree[parent[t]];
  }
  std::vector<int> sizes;
  for (int t = 0; t < nodes; ++t) {
    const int lo = std::max(1, 2 * degree[t]);
    sizes.push_back(detail::uniform(rng, lo, node_size));
  }
  auto name = [](char prefix, int i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%c%02d", prefix, i);
    return std::string(buf);
  };
  std::vector<std::vector<std::string>> elems(static_cast<std::size_t>(nodes));
  std::vector<std::string> names;
  for (int t = 1; t < nodes; ++t) {
    const std::string g = name('g', t);
    elems[parent[t]].push_back(g);
    elems[t].push_back(g);
    names.push_back(g);
  }
  int next = 0;
  for (int t = 0; t < nodes; ++t) {
    for (int i = 0; i < sizes[t] - degree[t]; ++i) {
      const std::string e = name('e', next++);
      elems[t].push_back(e);
      names.push_back(e);
    }
  }
  std::sort(names.begin(), names.end());
  auto id = [&](const std::string& s) {
    return static_cast<Element>(std::lower_bound(names.begin(), names.end(), s) - names.begin());
  };
  std::vector<std::string> node_names;
  std::vector<UniformMatroid> m_nodes, n_nodes;
  for (int t = 0; t < nodes; ++t) {
    node_names.push_back(name('t', t));
    ElementSet ground;
    for (const auto& e : elems[t]) ground.push_back(id(e));
    ground = normalized(ground);
    m_nodes.push_back({detail::uniform(rng, degree[t], sizes[t] - degree[t]), ground});
    n_nodes.push_back({detail::uniform(rng, degree[t], sizes[t] - degree[t]), ground});
  }
  std::vector<MatroidLink> links;
  for (int t = 1; t < nodes; ++t) links.push_back({parent[t], t, id(name('g', t))});
  return {TreeOfMatroids(names, node_names, std::move(m_nodes), links),
          TreeOfMatroids(names, node_names, std::move(n_nodes), links)};
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration

namespace detail {

inline std::string canonical_form(const std::vector<std::vector<int>>& children, int v) {
  std::vector<std::string> parts;
  for (int c : children[v]) parts.push_back(canonical_form(children, c));
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (const auto& p : parts) out += p;
  return out + ")";
}

}  // namespace detail

// One parent array per isomorphism class of rooted trees with n vertices;
// vertex 0 is the root and parent[v] < v.
inline std::vector<std::vector<Vertex>> rooted_tree_shapes(int n) {
  if (n < 1) return {};
  std::vector<std::vector<Vertex>> out;
  std::set<std::string> seen;
  std::vector<Vertex> parent(static_cast<std::size_t>(n), kNoVertex);
  std::function<void(int)> extend = [&](int v) {
    if (v == n) {
      std::vector<std::vector<int>> children(static_cast<std::size_t>(n));
      for (int u = 1; u < n; ++u) children[parent[u]].push_back(u);
      if (seen.insert(detail::canonical_form(children, 0)).second) out.push_back(parent);
      return;
    }
    for (int p = 0; p < v; ++p) {
      parent[v] = p;
      extend(v + 1);
    }
  };
  extend(1);
  return out;
}

// Every blue/red/neutral labelling of the non-root leaves.
template <class Visit>
void for_each_labelling(const std::vector<Vertex>& parent, Visit&& visit) {
  const int n = static_cast<int>(parent.size());
  std::vector<bool> has_child(static_cast<std::size_t>(n), false);
  for (int v = 1; v < n; ++v) has_child[parent[v]] = true;
  std::vector<int> leaves;
  for (int v = 1; v < n; ++v) {
    if (!has_child[v]) leaves.push_back(v);
  }
  std::vector<Mark> marks(static_cast<std::size_t>(n), Mark::None);
  std::vector<int> digit(leaves.size(), 0);
  for (;;) {
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      marks[leaves[i]] = digit[i] == 0 ? Mark::None : digit[i] == 1 ? Mark::Blue : Mark::Red;
    }
    visit(CommitteeTree(parent, marks));
    std::size_t i = 0;
    while (i < digit.size() && ++digit[i] == 3) digit[i++] = 0;
    if (i == digit.size()) break;
  }
}

// Whether some edge subset is a verifying blockage of each kind.
struct BlockageCensus {
  bool strong_blue = false;
  bool red = false;
};

inline BlockageCensus census_blockages(const CommitteeTree& tree) {
  const int n = tree.vertex_count();
  std::vector<Vertex> edges;
  for (Vertex v = 0; v < n; ++v) {
    if (v != tree.root()) edges.push_back(v);
  }
  if (edges.size() > 20) throw InputError("edge subset search is limited to 20 edges");
  BlockageCensus census;
  for (std::uint32_t mask = 0; mask < (1u << edges.size()); ++mask) {
    EdgeSet x(n);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (mask & (1u << i)) x.insert(edges[i]);
    }
    census.strong_blue = census.strong_blue || is_strong_blue_blockage(tree, x);
    census.red = census.red || is_red_blockage(tree, x);
    if (census.strong_blue && census.red) break;
  }
  return census;
}

struct EnumerationSummary {
  int max_n = 0;
  long long shapes = 0;
  long long instances = 0;
  long long certified = 0;
  long long vote_agreements = 0;
  long long exclusivity_checked = 0;
  long long exclusivity_violations = 0;
  std::vector<std::string> counterexamples;

  bool passed() const {
    return certified == instances && vote_agreements == instances && exclusivity_violations == 0;
  }
};

// Exclusivity is searched up to `exclusivity_n` vertices.
inline EnumerationSummary enumerate_trees(int max_n, int exclusivity_n = 7) {
  if (max_n < 1 || max_n > 9) throw InputError("enumeration needs 1 <= max-n <= 9");
  EnumerationSummary s;
  s.max_n = max_n;
  auto record = [&](const CommitteeTree& tree, const std::string& what) {
    if (s.counterexamples.size() < 20) s.counterexamples.push_back(what + "\n" + to_ctree_text(tree));
  };
  for (int n = 1; n <= max_n; ++n) {
    for (const auto& shape : rooted_tree_shapes(n)) {
      ++s.shapes;
      for_each_labelling(shape, [&](const CommitteeTree& tree) {
        ++s.instances;
        Certificate cert;
        try {
          cert = find_certificate(tree);
        } catch (const Error& e) {
          record(tree, std::string("certificate search failed: ") + e.what());
          return;
        }
        if (verify_certificate(tree, cert).passed()) {
          ++s.certified;
        } else {
          record(tree, "certificate does not verify");
        }
        const VoteResult vote = vote_outcome(tree).result;
        const bool agree = (cert.kind == CertificateKind::StrongBlue) == (vote == VoteResult::Blue);
        if (agree) {
          ++s.vote_agreements;
        } else {
          record(tree, "certificate kind disagrees with the vote");
        }
        if (n <= exclusivity_n) {
          ++s.exclusivity_checked;
          const auto census = census_blockages(tree);
          if (census.strong_blue && census.red) {
            ++s.exclusivity_violations;
            record(tree, "both a strong blue and a red blockage exist");
          }
        }
      });
    }
  }
  return s;
}

}  // namespace blockade
