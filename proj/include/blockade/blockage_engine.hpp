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

// Overflows, the overflow fixed pair, leafless/legal machinery, the rayless
// cutoff, bad-edge removal, and certificate search and verification.
//
// All red-side operations run the blue-side code with the parties swapped
// (the `Party` argument names the side that owns the overflow or blockage).

#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "blockade/committee_tree.hpp"
#include "blockade/errors.hpp"
#include "blockade/verification.hpp"

namespace blockade {

// ---------------------------------------------------------------------------
// Overflow

// Saturates Y from the party's leaf edges outside X by repeatedly adding an
// edge st outside X and Y with A(s, Y, X) >= 1. `choose(k)` picks which of
// the k currently eligible edges is added next; the result does not depend
// on it.
template <class Choose>
EdgeSet overflow(const CommitteeTree& tree, const EdgeSet& x, Party party, Choose&& choose) {
  const int n = tree.vertex_count();
  std::vector<int> acc_x(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) acc_x[v] = accumulation(tree, x, v);

  EdgeSet y(n);
  std::vector<int> children_in_y(static_cast<std::size_t>(n), 0);
  std::vector<Vertex> pool;
  std::vector<bool> pooled(static_cast<std::size_t>(n), false);

  auto consider = [&](Vertex s) {
    if (s == tree.root() || x.contains(s) || y.contains(s) || pooled[s]) return;
    if (tree.is_party(s, party) || children_in_y[s] - acc_x[s] >= 1) {
      pooled[s] = true;
      pool.push_back(s);
    }
  };

  for (Vertex v = 0; v < n; ++v) {
    if (tree.is_party(v, party)) consider(v);
  }
  while (!pool.empty()) {
    const std::size_t pick = static_cast<std::size_t>(choose(pool.size()));
    const Vertex s = pool[pick];
    pool[pick] = pool.back();
    pool.pop_back();
    y.insert(s);
    const Vertex t = tree.parent(s);
    ++children_in_y[t];
    consider(t);
  }
  return y;
}

inline EdgeSet overflow(const CommitteeTree& tree, const EdgeSet& x, Party party) {
  return overflow(tree, x, party, [](std::size_t k) { return k - 1; });
}

inline EdgeSet blue_overflow(const CommitteeTree& tree, const EdgeSet& x) {
  return overflow(tree, x, Party::Blue);
}

inline EdgeSet red_overflow(const CommitteeTree& tree, const EdgeSet& x) {
  return overflow(tree, x, Party::Red);
}

// ---------------------------------------------------------------------------
// Fixed pair

struct FixedPair {
  EdgeSet x;  // blue overflow of y
  EdgeSet y;  // red overflow of x
  int iterations = 0;  // strict growth steps of x before stabilizing
};

// Iterates X -> blue_overflow(red_overflow(X)) from the empty set. The map is
// monotone, so the sequence grows until it stops.
inline FixedPair fixed_pair(const CommitteeTree& tree) {
  FixedPair out{tree.no_edges(), {}, 0};
  for (;;) {
    out.y = red_overflow(tree, out.x);
    EdgeSet next = blue_overflow(tree, out.y);
    if (next == out.x) return out;
    if (!out.x.subset_of(next)) {
      throw ContractViolated("overflow iteration is not monotone");
    }
    out.x = std::move(next);
    ++out.iterations;
    if (out.iterations > tree.edge_count()) {
      throw ContractViolated("overflow iteration exceeded the edge count");
    }
  }
}

// ---------------------------------------------------------------------------
// Leafless forests, legality, rayless cutoff

// Largest subset of s in which every source vertex has an incoming edge or is
// open. Open vertices stand for the cut-off remainder of an infinite branch.
inline EdgeSet leafless_union(const CommitteeTree& tree, const EdgeSet& s) {
  const int n = tree.vertex_count();
  EdgeSet cur = s;
  std::vector<int> incoming(static_cast<std::size_t>(n), 0);
  for (Vertex v : s.sources()) ++incoming[tree.parent(v)];
  std::vector<Vertex> stack;
  for (Vertex v : s.sources()) {
    if (incoming[v] == 0 && !tree.is_open(v)) stack.push_back(v);
  }
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    cur.erase(v);
    const Vertex p = tree.parent(v);
    if (--incoming[p] == 0 && cur.contains(p) && !tree.is_open(p)) stack.push_back(p);
  }
  return cur;
}

inline bool is_rayless(const CommitteeTree& tree, const EdgeSet& x) {
  return leafless_union(tree, x).empty();
}

// Integer-valued; the cutoff is applied with c(v) = A(v, Y), which can be
// negative.
using CapacityFn = std::vector<int>;

inline CapacityFn constant_capacity(const CommitteeTree& tree, int value) {
  return CapacityFn(static_cast<std::size_t>(tree.vertex_count()), value);
}

inline CapacityFn accumulation_capacity(const CommitteeTree& tree, const EdgeSet& y) {
  CapacityFn c(static_cast<std::size_t>(tree.vertex_count()));
  for (Vertex v = 0; v < tree.vertex_count(); ++v) c[v] = accumulation(tree, y, v);
  return c;
}

// Thrown when the cutoff loop gets stuck. `witness` is a nonempty leafless set
// none of whose non-open sources has A(s, X \ witness) > c(s).
class IllegalInput : public Error {
 public:
  IllegalInput(const std::string& what, EdgeSet witness)
      : Error(what), witness_(std::move(witness)) {}
  const EdgeSet& witness() const { return witness_; }

 private:
  EdgeSet witness_;
};

// Repeatedly takes the leafless union U of the current set, picks the edge
// st in U with the smallest s such that A(s, X \ U) >= c(s) + 1, and drops
// the edges of U that end at s. Open sources are never picked: they have no
// stored incoming edges to drop.
inline EdgeSet cutoff_rayless(const CommitteeTree& tree, const EdgeSet& x, const CapacityFn& c) {
  if (static_cast<int>(c.size()) != tree.vertex_count()) {
    throw InputError("capacity function does not cover every vertex");
  }
  EdgeSet cur = x;
  for (;;) {
    const EdgeSet u = leafless_union(tree, cur);
    if (u.empty()) return cur;
    Vertex pick = kNoVertex;
    for (Vertex s : u.sources()) {
      if (tree.is_open(s)) continue;
      int outside = 0;
      for (Vertex ch : tree.children(s)) {
        if (cur.contains(ch) && !u.contains(ch)) ++outside;
      }
      if (outside >= c[s] + 1) {
        pick = s;
        break;
      }
    }
    if (pick == kNoVertex) throw IllegalInput("edge set is not legal for the capacity", u);
    for (Vertex ch : tree.children(pick)) {
      if (u.contains(ch)) cur.erase(ch);
    }
  }
}

struct LegalityResult {
  bool legal = true;
  std::optional<EdgeSet> witness;
};

inline LegalityResult is_legal(const CommitteeTree& tree, const EdgeSet& x, const CapacityFn& c) {
  try {
    cutoff_rayless(tree, x, c);
    return {};
  } catch (const IllegalInput& e) {
    return {false, e.witness()};
  }
}

// ---------------------------------------------------------------------------
// Bad-edge removal

// Edges st of x with t != root whose target's outgoing edge lies in the
// opposing overflow.
inline EdgeSet bad_edges(const CommitteeTree& tree, const EdgeSet& x, const EdgeSet& opposing_overflow) {
  EdgeSet out(tree.vertex_count());
  for (Vertex s : x.sources()) {
    const Vertex t = tree.parent(s);
    if (t != tree.root() && opposing_overflow.contains(t)) out.insert(s);
  }
  return out;
}

namespace detail {

// Vertices that the blockage inequalities range over: (V(x) + root) minus
// the owner's leaves.
inline std::vector<Vertex> blockage_domain(const CommitteeTree& tree, const EdgeSet& x, Party own) {
  auto mask = incidence_mask(tree, x);
  mask[static_cast<std::size_t>(tree.root())] = true;
  std::vector<Vertex> out;
  for (Vertex v = 0; v < tree.vertex_count(); ++v) {
    if (mask[v] && !tree.is_party(v, own)) out.push_back(v);
  }
  return out;
}

inline bool touches_party(const CommitteeTree& tree, const EdgeSet& x, Party p) {
  for (Vertex v : incident_vertices(tree, x)) {
    if (tree.is_party(v, p)) return true;
  }
  return false;
}

}  // namespace detail

// Rayless, avoids the opposing leaves, and A(v, x, opposing flow) >= 0 on the
// blockage domain. Strong additionally requires root accumulation >= 1.
inline bool is_blockage(const CommitteeTree& tree, const EdgeSet& x, Party own, bool strong = false) {
  if (!is_rayless(tree, x) || detail::touches_party(tree, x, opponent(own))) return false;
  const EdgeSet f = flow(tree, x, opponent(own));
  for (Vertex v : detail::blockage_domain(tree, x, own)) {
    if (accumulation_diff(tree, x, f, v) < 0) return false;
  }
  return !strong || accumulation_diff(tree, x, f, tree.root()) >= 1;
}

inline bool is_strong_blue_blockage(const CommitteeTree& tree, const EdgeSet& x) {
  return is_blockage(tree, x, Party::Blue, true);
}

inline bool is_red_blockage(const CommitteeTree& tree, const EdgeSet& x) {
  return is_blockage(tree, x, Party::Red, false);
}

// Removes bad edges from x. Requires A(v, x, opposing overflow) >= 0 on
// (V(x) \ (own leaves + ter(x))) + root; the result is a blockage for `own`
// whose opposing flow equals the opposing overflow of x and whose root
// accumulation is unchanged.
inline EdgeSet remove_bad_edges(const CommitteeTree& tree, const EdgeSet& x, Party own = Party::Blue) {
  const Party opp = opponent(own);
  const EdgeSet over = overflow(tree, x, opp);

  std::vector<Vertex> domain;
  for (Vertex s : x.sources()) {
    if (!tree.is_party(s, own)) domain.push_back(s);
  }
  domain.push_back(tree.root());
  for (Vertex v : domain) {
    const int a = accumulation_diff(tree, x, over, v);
    if (a < 0) {
      throw PreconditionViolated("accumulation against the opposing overflow is " + std::to_string(a) +
                                 " at vertex " + std::to_string(v));
    }
  }

  EdgeSet out = set_difference(x, bad_edges(tree, x, over));
  const EdgeSet f = flow(tree, out, opp);
  if (!(f == over)) {
    throw ContractViolated("flow of the pruned set differs from the overflow of the original");
  }
  if (!is_blockage(tree, out, own)) throw ContractViolated("pruned set is not a blockage");
  if (accumulation_diff(tree, out, f, tree.root()) != accumulation_diff(tree, x, over, tree.root())) {
    throw ContractViolated("root accumulation changed during bad-edge removal");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Certificates

enum class CertificateKind : std::uint8_t { StrongBlue, Red };

inline const char* to_string(CertificateKind k) {
  return k == CertificateKind::StrongBlue ? "StrongBlue" : "Red";
}

inline Party owner(CertificateKind k) {
  return k == CertificateKind::StrongBlue ? Party::Blue : Party::Red;
}

struct Certificate {
  CertificateKind kind = CertificateKind::Red;
  EdgeSet edges;
  EdgeSet opposing_flow;  // r(X) for StrongBlue, b(X) for Red
  int root_accumulation = 0;
};

// Recomputes everything from the tree; stored flow and root accumulation are
// checked for consistency as well.
inline VerificationReport verify_certificate(const CommitteeTree& tree, const Certificate& cert) {
  VerificationReport report;
  const Party own = owner(cert.kind);
  const Party opp = opponent(own);
  if (cert.edges.universe() != tree.vertex_count() || cert.edges.contains(tree.root())) {
    report.add("edges-in-tree", false, "edge set does not belong to this tree");
    return report;
  }
  report.add("edges-in-tree", true);

  const EdgeSet u = leafless_union(tree, cert.edges);
  report.add("rayless", u.empty(), u.empty() ? "" : "leafless part: " + to_string(u));

  std::string touching;
  for (Vertex v : incident_vertices(tree, cert.edges)) {
    if (tree.is_party(v, opp)) touching += (touching.empty() ? "" : " ") + std::to_string(v);
  }
  report.add("avoids-opposing-leaves", touching.empty(), touching);

  const EdgeSet f = flow(tree, cert.edges, opp);
  std::string negative;
  for (Vertex v : detail::blockage_domain(tree, cert.edges, own)) {
    const int a = accumulation_diff(tree, cert.edges, f, v);
    if (a < 0) {
      negative += (negative.empty() ? "" : " ") + std::to_string(v) + ":" + std::to_string(a);
    }
  }
  report.add("accumulation", negative.empty(), negative);

  const int root_acc = accumulation_diff(tree, cert.edges, f, tree.root());
  if (cert.kind == CertificateKind::StrongBlue) {
    report.add("root-strength", root_acc >= 1, "root accumulation " + std::to_string(root_acc));
  }
  report.add("recorded-flow", cert.opposing_flow == f, "recomputed " + to_string(f));
  report.add("recorded-root-accumulation", cert.root_accumulation == root_acc,
             "recomputed " + std::to_string(root_acc));
  return report;
}

namespace detail {

// Turns one side of a fixed pair into a blockage for `own`.
inline Certificate derive_blockage(const CommitteeTree& tree, const EdgeSet& mine, const EdgeSet& theirs,
                                   Party own) {
  const Party opp = opponent(own);
  const EdgeSet cut = cutoff_rayless(tree, mine, accumulation_capacity(tree, theirs));
  if (!(overflow(tree, cut, opp) == theirs)) {
    throw ContractViolated("opposing overflow changed after the rayless cutoff");
  }
  Certificate cert;
  cert.kind = own == Party::Blue ? CertificateKind::StrongBlue : CertificateKind::Red;
  try {
    cert.edges = remove_bad_edges(tree, cut, own);
  } catch (const PreconditionViolated& e) {
    throw ContractViolated(std::string("fixed pair violates the bad-edge precondition: ") + e.what());
  }
  cert.opposing_flow = flow(tree, cert.edges, opp);
  cert.root_accumulation = accumulation_diff(tree, cert.edges, cert.opposing_flow, tree.root());
  return cert;
}

}  // namespace detail

// Either a strong blue blockage or a red blockage, chosen by the root
// accumulation of the overflow fixed pair.
inline Certificate find_certificate(const CommitteeTree& tree) {
  const FixedPair fp = fixed_pair(tree);
  const bool blue = accumulation_diff(tree, fp.x, fp.y, tree.root()) >= 1;
  Certificate cert = blue ? detail::derive_blockage(tree, fp.x, fp.y, Party::Blue)
                          : detail::derive_blockage(tree, fp.y, fp.x, Party::Red);
  const auto report = verify_certificate(tree, cert);
  if (!report.passed()) {
    throw ContractViolated("certificate failed verification: " + report.first_failure());
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Certificate text format
//
//   cert <StrongBlue|Red>
//   edges <sorted source ids>
//   flow <sorted source ids>
//   rootacc <integer>

// Tree-independent contents of a certificate file.
struct CertificateRecord {
  CertificateKind kind = CertificateKind::Red;
  std::vector<long long> edges;
  std::vector<long long> flow;
  long long root_accumulation = 0;
};

inline void write_certificate(std::ostream& out, const Certificate& cert) {
  auto line = [&](const char* key, const EdgeSet& x) {
    out << key;
    for (Vertex v : x.sources()) out << ' ' << v;
    out << '\n';
  };
  out << "cert " << to_string(cert.kind) << '\n';
  line("edges", cert.edges);
  line("flow", cert.opposing_flow);
  out << "rootacc " << cert.root_accumulation << '\n';
}

inline std::string to_certificate_text(const Certificate& cert) {
  std::ostringstream out;
  write_certificate(out, cert);
  return out.str();
}

inline CertificateRecord parse_certificate(std::istream& in) {
  const auto records = detail::read_records(in);
  if (records.size() != 4) throw InputError("certificate must have exactly four lines");
  CertificateRecord rec;
  const auto& head = records[0].second;
  if (head.size() != 2 || head[0] != "cert") detail::fail_at(records[0].first, "expected 'cert <kind>'");
  if (head[1] == "StrongBlue") {
    rec.kind = CertificateKind::StrongBlue;
  } else if (head[1] == "Red") {
    rec.kind = CertificateKind::Red;
  } else {
    detail::fail_at(records[0].first, "unknown certificate kind '" + head[1] + "'");
  }
  auto ids = [](const std::pair<int, std::vector<std::string>>& r, const char* key) {
    if (r.second[0] != key) detail::fail_at(r.first, std::string("expected '") + key + "'");
    std::vector<long long> out;
    for (std::size_t i = 1; i < r.second.size(); ++i) {
      long long v = 0;
      if (!detail::parse_int(r.second[i], v)) detail::fail_at(r.first, "bad id '" + r.second[i] + "'");
      out.push_back(v);
    }
    return out;
  };
  rec.edges = ids(records[1], "edges");
  rec.flow = ids(records[2], "flow");
  const auto& acc = records[3];
  if (acc.second.size() != 2 || acc.second[0] != "rootacc" ||
      !detail::parse_int(acc.second[1], rec.root_accumulation)) {
    detail::fail_at(acc.first, "expected 'rootacc <integer>'");
  }
  return rec;
}

inline CertificateRecord parse_certificate(const std::string& text) {
  std::istringstream in(text);
  return parse_certificate(in);
}

// Binds a parsed record to a tree. Ids outside the tree make the
// verification fail instead of raising.
inline VerificationReport verify_certificate(const CommitteeTree& tree, const CertificateRecord& rec) {
  auto bind = [&](const std::vector<long long>& ids) -> std::optional<EdgeSet> {
    EdgeSet out(tree.vertex_count());
    for (long long v : ids) {
      if (v < 0 || v >= tree.vertex_count() || v == tree.root()) return std::nullopt;
      out.insert(static_cast<Vertex>(v));
    }
    return out;
  };
  const auto edges = bind(rec.edges);
  const auto f = bind(rec.flow);
  if (!edges || !f) {
    VerificationReport report;
    report.add("edges-in-tree", false, "certificate names vertices that are not non-root vertices of this tree");
    return report;
  }
  Certificate cert{rec.kind, *edges, *f, static_cast<int>(rec.root_accumulation)};
  return verify_certificate(tree, cert);
}

}  // namespace blockade
