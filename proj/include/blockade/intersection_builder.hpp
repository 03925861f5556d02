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

// Federated packings and coverings for pairs of trees of uniform matroids,
// assembled from blockage certificates on an augmented committee tree, and
// the driver that partitions the ground set into a packing for (M, N*) and a
// covering for (M, N*).

#pragma once

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "blockade/blockage_engine.hpp"
#include "blockade/committee_tree.hpp"
#include "blockade/errors.hpp"
#include "blockade/matroid_core.hpp"
#include "blockade/verification.hpp"

namespace blockade {

// K(t) = |E(t)| - r(M(t)) - r(N*(t)) = r(N(t)) - r(M(t)).
inline int k_value(const MatroidPair& pair, int t) { return pair.n.node(t).rank - pair.m.node(t).rank; }

// Committee vertices 0..k-1 are the matroid nodes of the query element's
// component in breadth-first order from its node; party leaves follow.
struct AugmentedTree {
  int root_node = -1;
  std::vector<int> node_of;    // vertex -> matroid node, -1 for attached leaves
  std::vector<Vertex> vertex_of;  // matroid node -> vertex, kNoVertex outside the component
  std::vector<int> k;          // per matroid node
  CommitteeTree committee;
};

inline AugmentedTree build_augmented_tree(const MatroidPair& pair, Element e) {
  const TreeOfMatroids& tm = pair.m;
  if (!tm.is_real(e)) throw InputError("element is not in the ground set");
  AugmentedTree aug;
  aug.root_node = tm.owner(e);
  aug.vertex_of.assign(static_cast<std::size_t>(tm.node_count()), kNoVertex);
  aug.k.assign(static_cast<std::size_t>(tm.node_count()), 0);

  std::vector<Vertex> parent;
  aug.node_of.push_back(aug.root_node);
  aug.vertex_of[aug.root_node] = 0;
  parent.push_back(kNoVertex);
  for (std::size_t i = 0; i < aug.node_of.size(); ++i) {
    const int t = aug.node_of[i];
    for (const auto& nb : tm.neighbours(t)) {
      if (aug.vertex_of[nb.node] != kNoVertex) continue;
      aug.vertex_of[nb.node] = static_cast<Vertex>(aug.node_of.size());
      aug.node_of.push_back(nb.node);
      parent.push_back(static_cast<Vertex>(i));
    }
  }
  std::vector<Mark> marks(parent.size(), Mark::None);
  const std::size_t node_vertices = aug.node_of.size();
  for (std::size_t i = 0; i < node_vertices; ++i) {
    const int t = aug.node_of[i];
    const int k = k_value(pair, t);
    aug.k[t] = k;
    for (int j = 0; j < std::abs(k); ++j) {
      parent.push_back(static_cast<Vertex>(i));
      marks.push_back(k < 0 ? Mark::Blue : Mark::Red);
      aug.node_of.push_back(-1);
    }
  }
  aug.committee = CommitteeTree(std::move(parent), std::move(marks));
  return aug;
}

enum class FederatedKind { Packing, Covering };

inline const char* to_string(FederatedKind k) { return k == FederatedKind::Packing ? "packing" : "covering"; }

enum class NodeColour { Green, Yellow };

inline const char* to_string(NodeColour c) { return c == NodeColour::Green ? "green" : "yellow"; }

// A packing for (M, N*) or a covering for (M, N*). For a covering the
// witnesses span M* and N respectively.
struct FederatedCertificate {
  FederatedKind kind = FederatedKind::Packing;
  Certificate blockage;
  std::vector<int> u_nodes;
  ElementSet set;
  ElementSet first;
  ElementSet second;
  std::vector<std::pair<int, NodeColour>> colours;
  std::vector<int> z_nodes;
  ElementSet f_dummies;
  std::vector<std::pair<int, ElementSet>> r_sets;
};

namespace detail {

inline void require_hypothesis(const MatroidPair& pair) {
  for (const auto* tm : {&pair.m, &pair.n}) {
    const auto bad = tm->hypothesis_violations();
    if (!bad.empty()) {
      throw PreconditionViolated("node " + tm->node_name(bad.front()) +
                                 " has rank or corank below its degree");
    }
  }
}

// Builds disjoint spanning sets for the node matroids a and b from a
// blockage owned by `own`. The leaves of `own` sit where |E(t)| - r_a - r_b
// is positive.
inline FederatedCertificate assemble(const TreeOfMatroids& shape, const AugmentedTree& aug, const EdgeSet& x,
                                     Party own, const std::vector<int>& rank_a, const std::vector<int>& rank_b) {
  const CommitteeTree& tree = aug.committee;
  if (!is_blockage(tree, x, own, own == Party::Blue)) {
    throw PreconditionViolated(std::string("edge set is not a ") +
                               (own == Party::Blue ? "strong blue" : "red") + " blockage");
  }
  const EdgeSet opposing = flow(tree, x, opponent(own));
  FederatedCertificate cert;
  cert.blockage.kind = own == Party::Blue ? CertificateKind::StrongBlue : CertificateKind::Red;
  cert.blockage.edges = x;
  cert.blockage.opposing_flow = opposing;
  cert.blockage.root_accumulation = accumulation_diff(tree, x, opposing, tree.root());

  int node_vertices = 0;
  while (node_vertices < tree.vertex_count() && aug.node_of[node_vertices] != -1) ++node_vertices;

  // Nodes joined to the root by edges that carry no opposing flow.
  std::vector<bool> in_u(static_cast<std::size_t>(node_vertices), false);
  in_u[0] = true;
  for (Vertex v = 1; v < node_vertices; ++v) {
    in_u[v] = in_u[tree.parent(v)] && !opposing.contains(v);
  }

  std::vector<int> opponents_below(static_cast<std::size_t>(tree.vertex_count()), 0);
  const auto& order = tree.top_down();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex v = *it;
    if (tree.is_party(v, opponent(own))) ++opponents_below[v];
    if (v != tree.root()) opponents_below[tree.parent(v)] += opponents_below[v];
  }
  for (Vertex v = 0; v < node_vertices; ++v) {
    if (opponents_below[v] == 0) cert.z_nodes.push_back(aug.node_of[v]);
  }
  std::sort(cert.z_nodes.begin(), cert.z_nodes.end());

  std::vector<NodeColour> colour(static_cast<std::size_t>(node_vertices), NodeColour::Green);
  ElementSet first, second;
  for (Vertex v = 0; v < node_vertices; ++v) {
    if (!in_u[v]) continue;
    const int t = aug.node_of[v];
    if (v != tree.root()) {
      const NodeColour up = colour[tree.parent(v)];
      colour[v] = x.contains(v) ? up : (up == NodeColour::Green ? NodeColour::Yellow : NodeColour::Green);
    }
    ElementSet r_t, f_t, required;
    for (Vertex c : tree.children(v)) {
      if (c >= node_vertices) continue;
      const Element d = *shape.dummy_between(t, aug.node_of[c]);
      if (!in_u[c]) {
        f_t.push_back(d);
      } else if (x.contains(c)) {
        r_t.push_back(d);
      } else {
        required.push_back(d);
      }
    }
    const bool excl = v != tree.root() && x.contains(v);
    if (v != tree.root() && !excl) required.push_back(*shape.dummy_between(t, aug.node_of[tree.parent(v)]));
    r_t = normalized(r_t);
    f_t = normalized(f_t);
    required = normalized(required);
    cert.f_dummies = set_union(cert.f_dummies, f_t);
    cert.r_sets.emplace_back(t, r_t);

    const int size = shape.node(t).size();
    const int k_own = size - rank_a[t] - rank_b[t];
    const int rs = static_cast<int>(r_t.size());
    if (k_own + rs < static_cast<int>(f_t.size()) + (excl ? 1 : 0)) {
      throw FeasibilityViolated("local inequality fails at node " + shape.node_name(t));
    }
    const int qa = rank_a[t] - rs;
    const int qb = rank_b[t] - rs;
    const int need_a = qa - (colour[v] == NodeColour::Green ? static_cast<int>(required.size()) : 0);
    const int need_b = qb - (colour[v] == NodeColour::Yellow ? static_cast<int>(required.size()) : 0);
    const ElementSet reals = shape.real_elements(t);
    if (need_a < 0 || need_b < 0 || need_a + need_b > static_cast<int>(reals.size())) {
      throw FeasibilityViolated("node " + shape.node_name(t) + " cannot host its spanning sets");
    }
    first.insert(first.end(), reals.begin(), reals.begin() + need_a);
    second.insert(second.end(), reals.begin() + need_a, reals.begin() + need_a + need_b);
    cert.set.insert(cert.set.end(), reals.begin(), reals.end());
    cert.u_nodes.push_back(t);
    cert.colours.emplace_back(t, colour[v]);
  }

  // Least fixed point: yellow nodes are good; a green node is good once its
  // U-neighbours are, only its U-children when its own edge is in x.
  std::vector<bool> good(static_cast<std::size_t>(node_vertices), false);
  for (bool changed = true; changed;) {
    changed = false;
    for (Vertex v = 0; v < node_vertices; ++v) {
      if (!in_u[v] || good[v]) continue;
      bool ok = colour[v] == NodeColour::Yellow;
      if (!ok) {
        ok = true;
        for (Vertex c : tree.children(v)) {
          if (c < node_vertices && in_u[c] && !good[c]) ok = false;
        }
        if (v != tree.root() && !x.contains(v) && !good[tree.parent(v)]) ok = false;
      }
      if (ok) {
        good[v] = true;
        changed = true;
      }
    }
  }
  for (Vertex v = 0; v < node_vertices; ++v) {
    if (in_u[v] && !good[v]) throw ContractViolated("node " + shape.node_name(aug.node_of[v]) + " is not good");
  }

  std::sort(cert.u_nodes.begin(), cert.u_nodes.end());
  std::sort(cert.colours.begin(), cert.colours.end());
  std::sort(cert.r_sets.begin(), cert.r_sets.end());
  cert.set = normalized(cert.set);
  cert.first = normalized(first);
  cert.second = normalized(second);
  return cert;
}

inline std::vector<int> node_ranks(const TreeOfMatroids& tm, bool dual) {
  std::vector<int> out;
  for (int t = 0; t < tm.node_count(); ++t) out.push_back(dual ? tm.node(t).corank() : tm.node(t).rank);
  return out;
}

}  // namespace detail

// Packing for (M, N*) from a red blockage of the augmented tree.
inline FederatedCertificate packing_from_red_blockage(const MatroidPair& pair, const AugmentedTree& aug,
                                                      const EdgeSet& x_r) {
  auto cert = detail::assemble(pair.m, aug, x_r, Party::Red, detail::node_ranks(pair.m, false),
                               detail::node_ranks(pair.n, true));
  cert.kind = FederatedKind::Packing;
  const auto report = verify_packing(pair.m, pair.n.dual(), cert.set, cert.first, cert.second);
  if (!report.passed()) throw ContractViolated("assembled packing fails: " + report.first_failure());
  return cert;
}

// Covering for (M, N*), built as a packing for (M*, N) from a strong blue
// blockage of the same augmented tree.
inline FederatedCertificate covering_from_strong_blue(const MatroidPair& pair, const AugmentedTree& aug,
                                                      const EdgeSet& x_b) {
  auto cert = detail::assemble(pair.m, aug, x_b, Party::Blue, detail::node_ranks(pair.m, true),
                               detail::node_ranks(pair.n, false));
  cert.kind = FederatedKind::Covering;
  const auto report = verify_covering(pair.m, pair.n.dual(), cert.set, cert.first, cert.second);
  if (!report.passed()) throw ContractViolated("assembled covering fails: " + report.first_failure());
  return cert;
}

inline FederatedCertificate packing_or_covering_for_element(const MatroidPair& pair, Element e) {
  detail::require_hypothesis(pair);
  const AugmentedTree aug = build_augmented_tree(pair, e);
  const Certificate found = find_certificate(aug.committee);
  return found.kind == CertificateKind::Red ? packing_from_red_blockage(pair, aug, found.edges)
                                            : covering_from_strong_blue(pair, aug, found.edges);
}

struct PartitionCertificate {
  ElementSet p;
  ElementSet s_m;
  ElementSet s_n;
  ElementSet q;
  ElementSet d_mstar;
  ElementSet d_n;
  std::vector<std::optional<NodeColour>> colours;  // per node, unset for nodes in no certificate
  IntersectionTriple triple;
  VerificationReport report;
};

namespace detail {

// The pair left after removing packed and covered nodes. Node indices are
// kept; removed nodes become empty.
inline MatroidPair world(const MatroidPair& pair, const std::vector<int>& state) {
  ElementSet con_m, del_m, con_n, del_n;
  for (int t = 0; t < pair.m.node_count(); ++t) {
    if (state[t] == 0) continue;
    const ElementSet reals = pair.m.real_elements(t);
    del_m.insert(del_m.end(), reals.begin(), reals.end());
    del_n.insert(del_n.end(), reals.begin(), reals.end());
  }
  for (const auto& l : pair.m.links()) {
    const int sa = state[l.a];
    const int sb = state[l.b];
    if (sa == 0 && sb == 0) continue;
    if (sa != 0 && sb != 0) {
      del_m.push_back(l.dummy);
      del_n.push_back(l.dummy);
    } else if ((sa != 0 ? sa : sb) == 1) {
      con_m.push_back(l.dummy);
      del_n.push_back(l.dummy);
    } else {
      del_m.push_back(l.dummy);
      con_n.push_back(l.dummy);
    }
  }
  return {minor_forest(pair.m, con_m, del_m), minor_forest(pair.n, con_n, del_n)};
}

}  // namespace detail

// Greedy packings first; then coverings of the rest, restarting whenever a
// packing turns up. Verified against the original pair before return.
inline PartitionCertificate partition_packing_covering(const MatroidPair& pair) {
  detail::require_hypothesis(pair);
  const ElementSet& ground = pair.m.ground_set();
  const int nodes = pair.m.node_count();
  PartitionCertificate out;
  std::vector<int> state(static_cast<std::size_t>(nodes), 0);  // 0 open, 1 packed, 2 covered
  out.colours.assign(static_cast<std::size_t>(nodes), std::nullopt);

  auto merge = [&](const FederatedCertificate& cert, ElementSet& set, ElementSet& first, ElementSet& second,
                   int mark) {
    set = set_union(set, cert.set);
    first = set_union(first, cert.first);
    second = set_union(second, cert.second);
    for (int t : cert.u_nodes) state[t] = mark;
    for (const auto& [t, c] : cert.colours) out.colours[t] = c;
  };
  auto clear_covered = [&] {
    for (int t = 0; t < nodes; ++t) {
      if (state[t] == 2) {
        state[t] = 0;
        out.colours[t] = std::nullopt;
      }
    }
    out.q.clear();
    out.d_mstar.clear();
    out.d_n.clear();
  };

  for (bool grew = true; grew;) {
    grew = false;
    const MatroidPair w = detail::world(pair, state);
    for (Element e : ground) {
      if (contains(out.p, e)) continue;
      const auto cert = packing_or_covering_for_element(w, e);
      if (cert.kind == FederatedKind::Packing) {
        merge(cert, out.p, out.s_m, out.s_n, 1);
        grew = true;
        break;
      }
    }
  }

  for (bool restart = true; restart;) {
    restart = false;
    clear_covered();
    for (Element e : ground) {
      if (contains(out.p, e) || contains(out.q, e)) continue;
      const MatroidPair w = detail::world(pair, state);
      const auto cert = packing_or_covering_for_element(w, e);
      if (cert.kind == FederatedKind::Packing) {
        merge(cert, out.p, out.s_m, out.s_n, 1);
        restart = true;
        break;
      }
      merge(cert, out.q, out.d_mstar, out.d_n, 2);
    }
  }

  const TreeOfMatroids n_star = pair.n.dual();
  auto& report = out.report;
  report.add("partition-disjoint", set_intersection(out.p, out.q).empty());
  report.add("partition-covers", set_union(out.p, out.q) == ground);
  const auto packing = verify_packing(pair.m, n_star, out.p, out.s_m, out.s_n);
  for (const auto& item : packing.items()) {
    report.add("packing-" + item.name, item.passed, item.detail);
  }
  const auto covering = verify_covering(pair.m, n_star, out.q, out.d_mstar, out.d_n);
  for (const auto& item : covering.items()) {
    report.add("covering-" + item.name, item.passed, item.detail);
  }
  if (!report.passed()) throw ContractViolated("partition fails: " + report.first_failure());
  return out;
}

// Partition plus the classical triple for (M, N), each verified on its own.
inline PartitionCertificate intersection_certificate(const MatroidPair& pair) {
  PartitionCertificate out = partition_packing_covering(pair);
  out.triple = classical_intersection(pair.m, pair.n);
  const auto triple = verify_triple(pair.m, pair.n, out.triple);
  for (const auto& item : triple.items()) {
    out.report.add("triple-" + item.name, item.passed, item.detail);
  }
  if (!out.report.passed()) throw ContractViolated("triple fails: " + out.report.first_failure());
  return out;
}

// ---------------------------------------------------------------------------
// Reports

enum class OutputFormat { Human, Records };

inline OutputFormat parse_output_format(const std::string& text) {
  if (text == "human") return OutputFormat::Human;
  if (text == "records") return OutputFormat::Records;
  throw InputError("unknown format '" + text + "'");
}

namespace detail {

inline void labelled(std::ostream& out, const std::string& label, const std::string& items) {
  out << label;
  if (!items.empty()) out << ' ' << items;
  out << '\n';
}

}  // namespace detail

inline void write_triple(std::ostream& out, const TreeOfMatroids& tm, const IntersectionTriple& t,
                         OutputFormat format) {
  if (format == OutputFormat::Human) {
    out << "|I|=" << t.common_independent.size() << '\n';
    detail::labelled(out, "I:", names_of(tm, t.common_independent));
    detail::labelled(out, "J_M:", names_of(tm, t.j_m));
    detail::labelled(out, "J_N:", names_of(tm, t.j_n));
  } else {
    detail::labelled(out, "I", names_of(tm, t.common_independent));
    detail::labelled(out, "JM", names_of(tm, t.j_m));
    detail::labelled(out, "JN", names_of(tm, t.j_n));
  }
}

inline void write_partition(std::ostream& out, const MatroidPair& pair, const PartitionCertificate& cert,
                            OutputFormat format) {
  const TreeOfMatroids& tm = pair.m;
  if (format == OutputFormat::Human) {
    std::string head = "P:";
    if (!cert.p.empty()) head += ' ' + names_of(tm, cert.p);
    head += " | Q:";
    if (!cert.q.empty()) head += ' ' + names_of(tm, cert.q);
    out << head << '\n';
    detail::labelled(out, "S^M:", names_of(tm, cert.s_m));
    detail::labelled(out, "S^N:", names_of(tm, cert.s_n));
    detail::labelled(out, "D^M*:", names_of(tm, cert.d_mstar));
    detail::labelled(out, "D^N:", names_of(tm, cert.d_n));
    std::string colours;
    for (int t = 0; t < tm.node_count(); ++t) {
      if (!cert.colours[t]) continue;
      if (!colours.empty()) colours += ' ';
      colours += tm.node_name(t) + "=" + to_string(*cert.colours[t]);
    }
    detail::labelled(out, "colours:", colours);
    out << "verified: " << (cert.report.passed() ? "yes" : "no") << '\n';
  } else {
    detail::labelled(out, "P", names_of(tm, cert.p));
    detail::labelled(out, "Q", names_of(tm, cert.q));
    detail::labelled(out, "SM", names_of(tm, cert.s_m));
    detail::labelled(out, "SN", names_of(tm, cert.s_n));
    detail::labelled(out, "DMstar", names_of(tm, cert.d_mstar));
    detail::labelled(out, "DN", names_of(tm, cert.d_n));
    for (int t = 0; t < tm.node_count(); ++t) {
      if (cert.colours[t]) out << "colour " << tm.node_name(t) << ' ' << to_string(*cert.colours[t]) << '\n';
    }
    out << "verified " << (cert.report.passed() ? 1 : 0) << '\n';
  }
  write_triple(out, tm, cert.triple, format);
}

inline std::string to_partition_text(const MatroidPair& pair, const PartitionCertificate& cert,
                                     OutputFormat format) {
  std::ostringstream out;
  write_partition(out, pair, cert, format);
  return out.str();
}

}  // namespace blockade
