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

// Finite trees of uniform matroids glued along single shared dummy elements
// (iterated 2-sums), with independence, rank, closure and dual oracles,
// circuit enumeration, minors, and Edmonds' matroid intersection.

#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <functional>
#include <iterator>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "blockade/committee_tree.hpp"
#include "blockade/errors.hpp"
#include "blockade/verification.hpp"

namespace blockade {

using Element = int;

// Sorted, duplicate-free.
using ElementSet = std::vector<Element>;

inline ElementSet normalized(ElementSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline bool contains(const ElementSet& s, Element e) { return std::binary_search(s.begin(), s.end(), e); }

inline ElementSet set_union(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline ElementSet set_difference(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline ElementSet set_intersection(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool is_subset(const ElementSet& a, const ElementSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

struct UniformMatroid {
  int rank = 0;
  ElementSet ground;

  int size() const { return static_cast<int>(ground.size()); }
  int corank() const { return size() - rank; }
};

struct MatroidLink {
  int a = 0;
  int b = 0;
  Element dummy = 0;
};

// Nodes carry uniform matroids; two nodes share an element only if they are
// linked, and then exactly the link's dummy. Links form a forest. Element
// ids index a name table shared by all minors of one instance.
class TreeOfMatroids {
 public:
  TreeOfMatroids() = default;

  TreeOfMatroids(std::vector<std::string> element_names, std::vector<std::string> node_names,
                 std::vector<UniformMatroid> nodes, std::vector<MatroidLink> links)
      : element_names_(std::move(element_names)),
        node_names_(std::move(node_names)),
        nodes_(std::move(nodes)),
        links_(std::move(links)) {
    const int universe = element_count();
    if (node_names_.size() != nodes_.size()) throw InputError("node name table size mismatch");
    owners_.assign(static_cast<std::size_t>(universe), {});
    for (int t = 0; t < node_count(); ++t) {
      auto& m = nodes_[t];
      m.ground = normalized(m.ground);
      if (m.rank < 0 || m.rank > m.size()) {
        throw InputError("node " + node_names_[t] + " has rank outside [0, |E(t)|]");
      }
      for (Element e : m.ground) {
        if (e < 0 || e >= universe) throw InputError("element id out of range");
        owners_[e].push_back(t);
      }
    }
    dummy_of_.assign(static_cast<std::size_t>(universe), -1);
    adjacency_.assign(nodes_.size(), {});
    for (std::size_t i = 0; i < links_.size(); ++i) {
      const auto& l = links_[i];
      if (l.a < 0 || l.a >= node_count() || l.b < 0 || l.b >= node_count() || l.a == l.b) {
        throw InputError("link joins invalid nodes");
      }
      if (l.dummy < 0 || l.dummy >= universe) throw InputError("link dummy out of range");
      const auto& own = owners_[l.dummy];
      if (own.size() != 2 || !((own[0] == l.a && own[1] == l.b) || (own[0] == l.b && own[1] == l.a))) {
        throw InputError("dummy " + element_names_[l.dummy] + " must lie in exactly the two linked nodes");
      }
      if (dummy_of_[l.dummy] != -1) throw InputError("dummy used by two links");
      dummy_of_[l.dummy] = static_cast<int>(i);
      adjacency_[l.a].push_back({l.b, l.dummy});
      adjacency_[l.b].push_back({l.a, l.dummy});
    }
    for (Element e = 0; e < universe; ++e) {
      const auto n = owners_[e].size();
      if (n > 2 || (n == 2 && dummy_of_[e] == -1)) {
        throw InputError("element " + element_names_[e] + " is shared without a link");
      }
      if (n == 1) ground_.push_back(e);
    }
    for (int t = 0; t < node_count(); ++t) {
      for (std::size_t i = 0; i < adjacency_[t].size(); ++i) {
        for (std::size_t j = i + 1; j < adjacency_[t].size(); ++j) {
          if (adjacency_[t][i].node == adjacency_[t][j].node) throw InputError("two links join the same nodes");
        }
      }
    }
    build_rooting();
  }

  int node_count() const { return static_cast<int>(nodes_.size()); }
  int element_count() const { return static_cast<int>(element_names_.size()); }

  const UniformMatroid& node(int t) const { return nodes_.at(static_cast<std::size_t>(t)); }
  const std::string& node_name(int t) const { return node_names_.at(static_cast<std::size_t>(t)); }
  const std::vector<std::string>& node_names() const { return node_names_; }
  const std::string& element_name(Element e) const { return element_names_.at(static_cast<std::size_t>(e)); }
  const std::vector<std::string>& element_names() const { return element_names_; }
  const std::vector<MatroidLink>& links() const { return links_; }

  // Real elements: those in exactly one node.
  const ElementSet& ground_set() const { return ground_; }

  bool is_real(Element e) const { return e >= 0 && e < element_count() && owners_[e].size() == 1; }
  bool is_dummy(Element e) const { return e >= 0 && e < element_count() && dummy_of_[e] != -1; }

  // Node holding a real element, or -1.
  int owner(Element e) const { return is_real(e) ? owners_[e][0] : -1; }

  ElementSet real_elements(int t) const {
    ElementSet out;
    for (Element e : node(t).ground) {
      if (is_real(e)) out.push_back(e);
    }
    return out;
  }

  struct Neighbour {
    int node;
    Element dummy;
  };
  const std::vector<Neighbour>& neighbours(int t) const { return adjacency_.at(static_cast<std::size_t>(t)); }
  int degree(int t) const { return static_cast<int>(neighbours(t).size()); }

  std::optional<Element> dummy_between(int a, int b) const {
    for (const auto& nb : neighbours(a)) {
      if (nb.node == b) return nb.dummy;
    }
    return std::nullopt;
  }

  // Nodes ordered so that every node comes after its parent in a rooting of
  // each component at its smallest node.
  const std::vector<int>& top_down() const { return order_; }
  int parent_node(int t) const { return parent_.at(static_cast<std::size_t>(t)); }
  Element parent_dummy(int t) const { return parent_dummy_.at(static_cast<std::size_t>(t)); }

  // Component index per node, numbered by smallest member.
  const std::vector<int>& component_of() const { return component_; }
  int component_count() const { return component_count_; }

  TreeOfMatroids with_ranks(const std::vector<int>& ranks) const {
    if (static_cast<int>(ranks.size()) != node_count()) throw InputError("rank table size mismatch");
    auto nodes = nodes_;
    for (int t = 0; t < node_count(); ++t) nodes[t].rank = ranks[t];
    return TreeOfMatroids(element_names_, node_names_, std::move(nodes), links_);
  }

  // The 2-sum of the node duals is the dual of the 2-sum.
  TreeOfMatroids dual() const {
    std::vector<int> ranks;
    for (const auto& m : nodes_) ranks.push_back(m.corank());
    return with_ranks(ranks);
  }

  // Nodes whose rank or corank is below their degree.
  std::vector<int> hypothesis_violations() const {
    std::vector<int> out;
    for (int t = 0; t < node_count(); ++t) {
      if (node(t).rank < degree(t) || node(t).corank() < degree(t)) out.push_back(t);
    }
    return out;
  }

 private:
  void build_rooting() {
    const int n = node_count();
    parent_.assign(static_cast<std::size_t>(n), -1);
    parent_dummy_.assign(static_cast<std::size_t>(n), -1);
    component_.assign(static_cast<std::size_t>(n), -1);
    order_.clear();
    component_count_ = 0;
    for (int start = 0; start < n; ++start) {
      if (component_[start] != -1) continue;
      const std::size_t first = order_.size();
      component_[start] = component_count_;
      order_.push_back(start);
      for (std::size_t i = first; i < order_.size(); ++i) {
        const int t = order_[i];
        for (const auto& nb : adjacency_[t]) {
          if (nb.node == parent_[t]) continue;
          if (component_[nb.node] != -1) throw InputError("links contain a cycle");
          component_[nb.node] = component_count_;
          parent_[nb.node] = t;
          parent_dummy_[nb.node] = nb.dummy;
          order_.push_back(nb.node);
        }
      }
      ++component_count_;
    }
  }

  std::vector<std::string> element_names_;
  std::vector<std::string> node_names_;
  std::vector<UniformMatroid> nodes_;
  std::vector<MatroidLink> links_;
  std::vector<std::vector<int>> owners_;
  std::vector<int> dummy_of_;
  std::vector<std::vector<Neighbour>> adjacency_;
  ElementSet ground_;
  std::vector<int> parent_;
  std::vector<Element> parent_dummy_;
  std::vector<int> component_;
  std::vector<int> order_;
  int component_count_ = 0;
};

// Two trees of matroids on the same tree and ground sets, as read from one
// .tmat file.
struct MatroidPair {
  TreeOfMatroids m;
  TreeOfMatroids n;
};

// ---------------------------------------------------------------------------
// Oracles

namespace detail {

inline void require_real(const TreeOfMatroids& tm, const ElementSet& s) {
  for (Element e : s) {
    if (tm.is_dummy(e)) throw InputError("dummy element " + tm.element_name(e) + " is not in the ground set");
    if (!tm.is_real(e)) throw InputError("element " + std::to_string(e) + " is not in the ground set");
  }
}

// Bottom-up load count: a node's load is its own elements of i plus the
// dummies toward children whose subtree spans them. A report also says
// whether the spanning circuit can carry a real element; circuits made of
// dummies alone have an empty underlying set and do not count.
inline bool independent_unchecked(const TreeOfMatroids& tm, const ElementSet& i) {
  const int n = tm.node_count();
  std::vector<int> load(static_cast<std::size_t>(n), 0);
  std::vector<bool> carries(static_cast<std::size_t>(n), false);
  for (Element e : i) {
    ++load[tm.owner(e)];
    carries[tm.owner(e)] = true;
  }
  const auto& order = tm.top_down();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int t = *it;
    const int rank = tm.node(t).rank;
    if (load[t] > rank && carries[t]) return false;
    const int p = tm.parent_node(t);
    if (p != -1 && load[t] >= rank) {
      ++load[p];
      if (rank >= 1 && carries[t]) carries[p] = true;
    }
  }
  return true;
}

}  // namespace detail

inline bool is_independent(const TreeOfMatroids& tm, const ElementSet& i) {
  const ElementSet s = normalized(i);
  detail::require_real(tm, s);
  return detail::independent_unchecked(tm, s);
}

// Greedy in ascending element order.
inline ElementSet maximal_independent_subset(const TreeOfMatroids& tm, const ElementSet& s) {
  const ElementSet set = normalized(s);
  detail::require_real(tm, set);
  ElementSet basis;
  for (Element e : set) {
    ElementSet trial = basis;
    trial.insert(std::upper_bound(trial.begin(), trial.end(), e), e);
    if (detail::independent_unchecked(tm, trial)) basis = std::move(trial);
  }
  return basis;
}

inline int rank(const TreeOfMatroids& tm, const ElementSet& s) {
  return static_cast<int>(maximal_independent_subset(tm, s).size());
}

inline ElementSet closure(const TreeOfMatroids& tm, const ElementSet& s) {
  const ElementSet set = normalized(s);
  const ElementSet basis = maximal_independent_subset(tm, set);
  ElementSet out = set;
  for (Element e : tm.ground_set()) {
    if (contains(set, e)) continue;
    ElementSet trial = basis;
    trial.insert(std::upper_bound(trial.begin(), trial.end(), e), e);
    if (!detail::independent_unchecked(tm, trial)) out.push_back(e);
  }
  return normalized(out);
}

// r*(s) = |s| + r(E \ s) - r(E).
inline int dual_rank(const TreeOfMatroids& tm, const ElementSet& s) {
  const ElementSet set = normalized(s);
  detail::require_real(tm, set);
  const auto& e = tm.ground_set();
  return static_cast<int>(set.size()) + rank(tm, set_difference(e, set)) - rank(tm, e);
}

inline bool is_coindependent(const TreeOfMatroids& tm, const ElementSet& s) {
  return dual_rank(tm, s) == static_cast<int>(normalized(s).size());
}

// Underlying sets of all pre-circuits: connected node sets C with one local
// circuit per node that contains the dummy toward a neighbour exactly when
// the neighbour is in C. Deduplicated and sorted.
inline std::vector<ElementSet> enumerate_circuits(const TreeOfMatroids& tm) {
  if (tm.node_count() > 6 || tm.ground_set().size() > 20) {
    throw InputError("circuit enumeration is limited to 6 nodes and 20 elements");
  }
  const int n = tm.node_count();
  std::set<ElementSet> found;
  std::vector<ElementSet> reals(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) reals[t] = tm.real_elements(t);

  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> members;
    for (int t = 0; t < n; ++t) {
      if (mask & (1u << t)) members.push_back(t);
    }
    // Connectivity within the link forest.
    std::vector<int> stack{members[0]};
    unsigned seen = 1u << members[0];
    while (!stack.empty()) {
      const int t = stack.back();
      stack.pop_back();
      for (const auto& nb : tm.neighbours(t)) {
        const unsigned bit = 1u << nb.node;
        if ((mask & bit) && !(seen & bit)) {
          seen |= bit;
          stack.push_back(nb.node);
        }
      }
    }
    if (seen != mask) continue;

    // Each member needs rank+1 - (#neighbours inside C) real elements.
    std::vector<std::vector<ElementSet>> choices;
    bool possible = true;
    for (int t : members) {
      int inside = 0;
      for (const auto& nb : tm.neighbours(t)) {
        if (mask & (1u << nb.node)) ++inside;
      }
      const int need = tm.node(t).rank + 1 - inside;
      const int have = static_cast<int>(reals[t].size());
      if (need < 0 || need > have) {
        possible = false;
        break;
      }
      std::vector<ElementSet> subsets;
      std::vector<bool> pick(static_cast<std::size_t>(have), false);
      std::fill(pick.begin(), pick.begin() + need, true);
      do {
        ElementSet sub;
        for (int k = 0; k < have; ++k) {
          if (pick[k]) sub.push_back(reals[t][k]);
        }
        subsets.push_back(std::move(sub));
      } while (std::prev_permutation(pick.begin(), pick.end()));
      choices.push_back(std::move(subsets));
    }
    if (!possible) continue;

    std::vector<std::size_t> idx(choices.size(), 0);
    for (;;) {
      ElementSet underlying;
      for (std::size_t k = 0; k < choices.size(); ++k) {
        underlying.insert(underlying.end(), choices[k][idx[k]].begin(), choices[k][idx[k]].end());
      }
      if (!underlying.empty()) found.insert(normalized(std::move(underlying)));
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == choices[k].size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
  }
  return {found.begin(), found.end()};
}

// ---------------------------------------------------------------------------
// Minors

// Contracts and deletes elements (real or dummy) in every node holding them,
// using uniform minor arithmetic. Links whose dummy disappears are cut. Node
// indices are preserved, so the result may be a forest.
inline TreeOfMatroids minor_forest(const TreeOfMatroids& tm, const ElementSet& contract_set,
                                   const ElementSet& delete_set) {
  const ElementSet con = normalized(contract_set);
  const ElementSet del = normalized(delete_set);
  if (!set_intersection(con, del).empty()) throw InputError("contract and delete sets overlap");
  for (Element e : set_union(con, del)) {
    if (e < 0 || e >= tm.element_count()) throw InputError("minor names an unknown element");
  }
  std::vector<UniformMatroid> nodes;
  for (int t = 0; t < tm.node_count(); ++t) {
    const auto& m = tm.node(t);
    const int kc = static_cast<int>(set_intersection(m.ground, con).size());
    UniformMatroid out;
    out.ground = set_difference(set_difference(m.ground, con), del);
    out.rank = std::min(m.rank - std::min(kc, m.rank), out.size());
    nodes.push_back(std::move(out));
  }
  std::vector<MatroidLink> kept;
  for (const auto& l : tm.links()) {
    if (!contains(con, l.dummy) && !contains(del, l.dummy)) kept.push_back(l);
  }
  return TreeOfMatroids(tm.element_names(), tm.node_names(), std::move(nodes), std::move(kept));
}

// One tree per component, ordered by smallest node.
inline std::vector<TreeOfMatroids> components(const TreeOfMatroids& whole) {
  std::vector<TreeOfMatroids> out;
  for (int c = 0; c < whole.component_count(); ++c) {
    std::vector<int> remap(static_cast<std::size_t>(whole.node_count()), -1);
    std::vector<std::string> names;
    std::vector<UniformMatroid> comp_nodes;
    for (int t = 0; t < whole.node_count(); ++t) {
      if (whole.component_of()[t] != c) continue;
      remap[t] = static_cast<int>(comp_nodes.size());
      names.push_back(whole.node_name(t));
      comp_nodes.push_back(whole.node(t));
    }
    std::vector<MatroidLink> comp_links;
    for (const auto& l : whole.links()) {
      if (remap[l.a] != -1) comp_links.push_back({remap[l.a], remap[l.b], l.dummy});
    }
    out.emplace_back(whole.element_names(), std::move(names), std::move(comp_nodes), std::move(comp_links));
  }
  return out;
}

inline std::vector<TreeOfMatroids> minor(const TreeOfMatroids& tm, const ElementSet& contract_set,
                                         const ElementSet& delete_set) {
  return components(minor_forest(tm, contract_set, delete_set));
}

// ---------------------------------------------------------------------------
// Intersection

struct IntersectionTriple {
  ElementSet common_independent;
  ElementSet j_m;
  ElementSet j_n;
};

inline VerificationReport verify_triple(const TreeOfMatroids& m, const TreeOfMatroids& n,
                                        const IntersectionTriple& t) {
  VerificationReport report;
  const ElementSet& i = t.common_independent;
  report.add("independent-in-M", is_independent(m, i));
  report.add("independent-in-N", is_independent(n, i));
  report.add("partition", set_intersection(t.j_m, t.j_n).empty() && set_union(t.j_m, t.j_n) == i);
  const ElementSet covered = set_union(closure(m, t.j_m), closure(n, t.j_n));
  report.add("closures-cover-ground", covered == m.ground_set());
  return report;
}

// Maximum common independent set by shortest augmenting paths in the
// exchange graph. On termination the elements reachable from the M-addable
// elements give the cut: J_N = I inside it, J_M = I outside it.
inline IntersectionTriple classical_intersection(const TreeOfMatroids& m, const TreeOfMatroids& n) {
  if (m.ground_set() != n.ground_set()) throw InputError("matroids have different ground sets");
  const ElementSet& ground = m.ground_set();
  ElementSet current;
  auto with = [](ElementSet s, Element add, Element drop) {
    if (drop != -1) s.erase(std::lower_bound(s.begin(), s.end(), drop));
    s.insert(std::upper_bound(s.begin(), s.end(), add), add);
    return s;
  };

  std::map<Element, Element> pred;
  std::vector<bool> reached;
  for (;;) {
    const ElementSet outside = set_difference(ground, current);
    // Exchange arcs: y -> x when I - y + x is M-independent, x -> y when it is
    // N-independent (y in I, x outside).
    std::map<Element, std::vector<Element>> arcs;
    for (Element y : current) {
      for (Element x : outside) {
        const ElementSet swapped = with(current, x, y);
        if (detail::independent_unchecked(m, swapped)) arcs[y].push_back(x);
        if (detail::independent_unchecked(n, swapped)) arcs[x].push_back(y);
      }
    }
    std::set<Element> sinks;
    std::deque<Element> queue;
    pred.clear();
    std::set<Element> seen;
    for (Element x : outside) {
      const ElementSet grown = with(current, x, -1);
      if (detail::independent_unchecked(n, grown)) sinks.insert(x);
      if (detail::independent_unchecked(m, grown)) {
        queue.push_back(x);
        seen.insert(x);
        pred[x] = -1;
      }
    }
    std::optional<Element> end;
    while (!queue.empty() && !end) {
      const Element v = queue.front();
      queue.pop_front();
      if (sinks.count(v)) {
        end = v;
        break;
      }
      for (Element w : arcs[v]) {
        if (seen.insert(w).second) {
          pred[w] = v;
          queue.push_back(w);
        }
      }
    }
    if (!end) {
      IntersectionTriple out;
      out.common_independent = current;
      for (Element e : current) {
        if (seen.count(e)) {
          out.j_n.push_back(e);
        } else {
          out.j_m.push_back(e);
        }
      }
      const auto report = verify_triple(m, n, out);
      if (!report.passed()) throw ContractViolated("intersection triple failed: " + report.first_failure());
      return out;
    }
    for (Element v = *end; v != -1; v = pred[v]) {
      if (contains(current, v)) {
        current.erase(std::lower_bound(current.begin(), current.end(), v));
      } else {
        current.insert(std::upper_bound(current.begin(), current.end(), v), v);
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Packing and covering checks

namespace detail {

using RankFn = std::function<int(const ElementSet&)>;

inline VerificationReport verify_disjoint_spanning(const ElementSet& p, const ElementSet& s1, const ElementSet& s2,
                                                   const RankFn& rank_k, const RankFn& rank_l) {
  VerificationReport report;
  report.add("disjoint", set_intersection(s1, s2).empty());
  report.add("inside", is_subset(s1, p) && is_subset(s2, p));
  const int rk = rank_k(p);
  const int rl = rank_l(p);
  report.add("spans-first", rank_k(s1) == rk,
             "rank " + std::to_string(rank_k(s1)) + " of " + std::to_string(rk));
  report.add("spans-second", rank_l(s2) == rl,
             "rank " + std::to_string(rank_l(s2)) + " of " + std::to_string(rl));
  return report;
}

}  // namespace detail

// s1 and s2 are disjoint subsets of p spanning k|p and l|p.
inline VerificationReport verify_packing(const TreeOfMatroids& k, const TreeOfMatroids& l, const ElementSet& p,
                                         const ElementSet& s1, const ElementSet& s2) {
  return detail::verify_disjoint_spanning(
      normalized(p), normalized(s1), normalized(s2), [&](const ElementSet& s) { return rank(k, s); },
      [&](const ElementSet& s) { return rank(l, s); });
}

// A packing for the duals k* and l*.
inline VerificationReport verify_covering(const TreeOfMatroids& k, const TreeOfMatroids& l, const ElementSet& q,
                                          const ElementSet& d1, const ElementSet& d2) {
  return detail::verify_disjoint_spanning(
      normalized(q), normalized(d1), normalized(d2), [&](const ElementSet& s) { return dual_rank(k, s); },
      [&](const ElementSet& s) { return dual_rank(l, s); });
}

// ---------------------------------------------------------------------------
// .tmat text format
//
//   tmat v1
//   node <id> rankM <r> rankN <r> elems <e1> <e2> ...
//   link <node-id> <node-id> dummy <element-id>
//
// Element ids are numbered in lexicographic order of their names, so sorted
// output by id is sorted by name.

inline MatroidPair parse_tmat(std::istream& in) {
  const auto records = detail::read_records(in);
  if (records.empty() || records[0].second != std::vector<std::string>{"tmat", "v1"}) {
    throw InputError("missing 'tmat v1' header");
  }
  struct NodeRow {
    std::string name;
    int rank_m;
    int rank_n;
    std::vector<std::string> elems;
  };
  struct LinkRow {
    int line;
    std::string a, b, dummy;
  };
  std::vector<NodeRow> rows;
  std::vector<LinkRow> link_rows;
  std::map<std::string, int> node_index;
  std::set<std::string> names;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& [line, tok] = records[r];
    if (tok[0] == "node") {
      if (tok.size() < 7 || tok[2] != "rankM" || tok[4] != "rankN" || tok[6] != "elems") {
        detail::fail_at(line, "expected 'node <id> rankM <r> rankN <r> elems ...'");
      }
      long long rm = 0, rn = 0;
      if (!detail::parse_int(tok[3], rm) || !detail::parse_int(tok[5], rn) || rm < 0 || rn < 0 || rm > 1'000'000 ||
          rn > 1'000'000) {
        detail::fail_at(line, "bad rank");
      }
      if (node_index.count(tok[1])) detail::fail_at(line, "duplicate node '" + tok[1] + "'");
      node_index[tok[1]] = static_cast<int>(rows.size());
      NodeRow row{tok[1], static_cast<int>(rm), static_cast<int>(rn), {tok.begin() + 7, tok.end()}};
      std::set<std::string> local(row.elems.begin(), row.elems.end());
      if (local.size() != row.elems.size()) detail::fail_at(line, "repeated element in node");
      if (static_cast<int>(row.elems.size()) < std::max(row.rank_m, row.rank_n)) {
        detail::fail_at(line, "rank exceeds node size");
      }
      names.insert(row.elems.begin(), row.elems.end());
      rows.push_back(std::move(row));
    } else if (tok[0] == "link") {
      if (tok.size() != 5 || tok[3] != "dummy") detail::fail_at(line, "expected 'link <a> <b> dummy <e>'");
      link_rows.push_back({line, tok[1], tok[2], tok[4]});
    } else {
      detail::fail_at(line, "unknown record '" + tok[0] + "'");
    }
  }
  if (rows.empty()) throw InputError("no nodes");
  std::vector<std::string> element_names(names.begin(), names.end());
  auto element_id = [&](const std::string& name) {
    return static_cast<Element>(std::lower_bound(element_names.begin(), element_names.end(), name) -
                                element_names.begin());
  };
  std::vector<std::string> node_names;
  std::vector<UniformMatroid> m_nodes, n_nodes;
  for (const auto& row : rows) {
    ElementSet ground;
    for (const auto& e : row.elems) ground.push_back(element_id(e));
    node_names.push_back(row.name);
    m_nodes.push_back({row.rank_m, normalized(ground)});
    n_nodes.push_back({row.rank_n, normalized(ground)});
  }
  std::vector<MatroidLink> links;
  for (const auto& l : link_rows) {
    const auto a = node_index.find(l.a);
    const auto b = node_index.find(l.b);
    if (a == node_index.end() || b == node_index.end()) detail::fail_at(l.line, "link names an unknown node");
    if (!names.count(l.dummy)) detail::fail_at(l.line, "link dummy is in no node");
    links.push_back({a->second, b->second, element_id(l.dummy)});
  }
  MatroidPair pair{TreeOfMatroids(element_names, node_names, m_nodes, links),
                   TreeOfMatroids(element_names, node_names, n_nodes, links)};
  return pair;
}

inline MatroidPair parse_tmat(const std::string& text) {
  std::istringstream in(text);
  return parse_tmat(in);
}

inline void write_tmat(std::ostream& out, const MatroidPair& pair) {
  out << "tmat v1\n";
  for (int t = 0; t < pair.m.node_count(); ++t) {
    out << "node " << pair.m.node_name(t) << " rankM " << pair.m.node(t).rank << " rankN " << pair.n.node(t).rank
        << " elems";
    for (Element e : pair.m.node(t).ground) out << ' ' << pair.m.element_name(e);
    out << '\n';
  }
  for (const auto& l : pair.m.links()) {
    out << "link " << pair.m.node_name(l.a) << ' ' << pair.m.node_name(l.b) << " dummy "
        << pair.m.element_name(l.dummy) << '\n';
  }
}

inline std::string to_tmat_text(const MatroidPair& pair) {
  std::ostringstream out;
  write_tmat(out, pair);
  return out.str();
}

// Element names of a set, space separated.
inline std::string names_of(const TreeOfMatroids& tm, const ElementSet& s) {
  std::string out;
  for (Element e : s) {
    if (!out.empty()) out += ' ';
    out += tm.element_name(e);
  }
  return out;
}

inline Element element_by_name(const TreeOfMatroids& tm, const std::string& name) {
  const auto& names = tm.element_names();
  const auto it = std::lower_bound(names.begin(), names.end(), name);
  if (it == names.end() || *it != name) throw InputError("unknown element '" + name + "'");
  return static_cast<Element>(it - names.begin());
}

}  // namespace blockade
