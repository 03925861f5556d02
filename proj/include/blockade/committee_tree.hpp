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

// Rooted committee trees directed toward the root, edge sets, accumulation
// arithmetic, party flows and the finite voting rule.

#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "blockade/errors.hpp"

namespace blockade {

using Vertex = int;
inline constexpr Vertex kNoVertex = -1;

enum class Mark : std::uint8_t { None, Blue, Red, Open };

enum class Party : std::uint8_t { Blue, Red };

constexpr Party opponent(Party p) { return p == Party::Blue ? Party::Red : Party::Blue; }

constexpr Mark mark_of(Party p) { return p == Party::Blue ? Mark::Blue : Mark::Red; }

inline const char* party_name(Party p) { return p == Party::Blue ? "Blue" : "Red"; }

// A set of tree edges. Every non-root vertex has exactly one outgoing edge,
// so an edge is stored as its source vertex.
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(int vertex_count) : bits_(static_cast<std::size_t>(vertex_count), false) {}

  static EdgeSet from_sources(int vertex_count, std::span<const Vertex> sources) {
    EdgeSet out(vertex_count);
    for (Vertex s : sources) {
      if (s < 0 || s >= vertex_count) {
        throw InputError("edge source " + std::to_string(s) + " out of range");
      }
      out.insert(s);
    }
    return out;
  }

  int universe() const { return static_cast<int>(bits_.size()); }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains(Vertex s) const {
    return s >= 0 && s < universe() && bits_[static_cast<std::size_t>(s)];
  }

  void insert(Vertex s) {
    auto ref = bits_.at(static_cast<std::size_t>(s));
    if (!ref) {
      ref = true;
      ++count_;
    }
  }

  void erase(Vertex s) {
    auto ref = bits_.at(static_cast<std::size_t>(s));
    if (ref) {
      ref = false;
      --count_;
    }
  }

  // Ascending.
  std::vector<Vertex> sources() const {
    std::vector<Vertex> out;
    out.reserve(count_);
    for (int v = 0; v < universe(); ++v) {
      if (bits_[static_cast<std::size_t>(v)]) out.push_back(v);
    }
    return out;
  }

  bool subset_of(const EdgeSet& other) const {
    for (int v = 0; v < universe(); ++v) {
      if (bits_[static_cast<std::size_t>(v)] && !other.contains(v)) return false;
    }
    return true;
  }

  friend bool operator==(const EdgeSet& a, const EdgeSet& b) {
    return a.count_ == b.count_ && a.subset_of(b);
  }

 private:
  std::vector<bool> bits_;
  std::size_t count_ = 0;
};

inline EdgeSet set_union(const EdgeSet& a, const EdgeSet& b) {
  EdgeSet out = a;
  for (Vertex s : b.sources()) out.insert(s);
  return out;
}

inline EdgeSet set_difference(const EdgeSet& a, const EdgeSet& b) {
  EdgeSet out = a;
  for (Vertex s : b.sources()) out.erase(s);
  return out;
}

inline EdgeSet set_intersection(const EdgeSet& a, const EdgeSet& b) {
  EdgeSet out(a.universe());
  for (Vertex s : a.sources()) {
    if (b.contains(s)) out.insert(s);
  }
  return out;
}

// Whitespace separated source ids, ascending.
inline std::string to_string(const EdgeSet& x) {
  std::string out;
  for (Vertex s : x.sources()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(s);
  }
  return out;
}

// A finite rooted tree whose edges point toward the root. Leaves may be blue,
// red, neutral, or open (the frontier of a truncated infinite tree).
class CommitteeTree {
 public:
  CommitteeTree() = default;

  // parent[v] == kNoVertex marks the root. Throws InputError on malformed
  // structure and PreconditionViolated if the root carries a party mark.
  CommitteeTree(std::vector<Vertex> parent, std::vector<Mark> marks)
      : parent_(std::move(parent)), marks_(std::move(marks)) {
    const int n = static_cast<int>(parent_.size());
    if (n == 0) throw InputError("tree has no vertices");
    if (static_cast<int>(marks_.size()) != n) throw InputError("mark list size mismatch");
    children_.assign(static_cast<std::size_t>(n), {});
    for (Vertex v = 0; v < n; ++v) {
      const Vertex p = parent_[v];
      if (p == kNoVertex) {
        if (root_ != kNoVertex) throw InputError("multiple roots");
        root_ = v;
      } else if (p < 0 || p >= n || p == v) {
        throw InputError("vertex " + std::to_string(v) + " has invalid parent");
      } else {
        children_[p].push_back(v);
      }
    }
    if (root_ == kNoVertex) throw InputError("tree has no root");

    // Every vertex must reach the root; collect a root-first order on the way.
    order_.reserve(static_cast<std::size_t>(n));
    order_.push_back(root_);
    for (std::size_t i = 0; i < order_.size(); ++i) {
      for (Vertex c : children_[order_[i]]) order_.push_back(c);
    }
    if (static_cast<int>(order_.size()) != n) throw InputError("parent relation is not a single tree");

    if (marks_[root_] == Mark::Blue || marks_[root_] == Mark::Red) {
      throw PreconditionViolated("the root may not belong to a party");
    }
    for (Vertex v = 0; v < n; ++v) {
      if (marks_[v] == Mark::None) continue;
      if (!children_[v].empty()) {
        throw InputError("vertex " + std::to_string(v) + " is marked but not a leaf");
      }
    }
    if (marks_[root_] == Mark::Open) throw InputError("root cannot be open");
  }

  int vertex_count() const { return static_cast<int>(parent_.size()); }
  int edge_count() const { return vertex_count() - 1; }
  Vertex root() const { return root_; }

  bool has_vertex(Vertex v) const { return v >= 0 && v < vertex_count(); }

  Vertex parent(Vertex v) const { return parent_.at(static_cast<std::size_t>(v)); }
  std::span<const Vertex> children(Vertex v) const { return children_.at(static_cast<std::size_t>(v)); }
  Mark mark(Vertex v) const { return marks_.at(static_cast<std::size_t>(v)); }

  bool is_leaf(Vertex v) const { return children(v).empty(); }
  bool is_open(Vertex v) const { return mark(v) == Mark::Open; }
  bool is_party(Vertex v, Party p) const { return mark(v) == mark_of(p); }

  bool has_open_frontier() const {
    for (Mark m : marks_) {
      if (m == Mark::Open) return true;
    }
    return false;
  }

  // Root first; every vertex appears after its parent.
  std::span<const Vertex> top_down() const { return order_; }

  const std::vector<Vertex>& parents() const { return parent_; }
  const std::vector<Mark>& marks() const { return marks_; }

  EdgeSet no_edges() const { return EdgeSet(vertex_count()); }

  EdgeSet all_edges() const {
    EdgeSet out(vertex_count());
    for (Vertex v = 0; v < vertex_count(); ++v) {
      if (v != root_) out.insert(v);
    }
    return out;
  }

  CommitteeTree with_parties_swapped() const {
    std::vector<Mark> swapped = marks_;
    for (Mark& m : swapped) {
      if (m == Mark::Blue) {
        m = Mark::Red;
      } else if (m == Mark::Red) {
        m = Mark::Blue;
      }
    }
    return CommitteeTree(parent_, std::move(swapped));
  }

 private:
  std::vector<Vertex> parent_;
  std::vector<Mark> marks_;
  std::vector<std::vector<Vertex>> children_;
  std::vector<Vertex> order_;
  Vertex root_ = kNoVertex;
};

namespace detail {

inline void require_vertex(const CommitteeTree& tree, Vertex v) {
  if (!tree.has_vertex(v)) throw InputError("unknown vertex " + std::to_string(v));
}

inline std::vector<bool> incidence_mask(const CommitteeTree& tree, const EdgeSet& x) {
  std::vector<bool> mask(static_cast<std::size_t>(tree.vertex_count()), false);
  for (Vertex s : x.sources()) {
    mask[static_cast<std::size_t>(s)] = true;
    mask[static_cast<std::size_t>(tree.parent(s))] = true;
  }
  return mask;
}

}  // namespace detail

// A(v, X): edges of X entering v minus edges of X leaving v.
inline int accumulation(const CommitteeTree& tree, const EdgeSet& x, Vertex v) {
  detail::require_vertex(tree, v);
  int in = 0;
  for (Vertex c : tree.children(v)) {
    if (x.contains(c)) ++in;
  }
  const int out = (v != tree.root() && x.contains(v)) ? 1 : 0;
  return in - out;
}

// A(v, X, Y) = A(v, X) - A(v, Y).
inline int accumulation_diff(const CommitteeTree& tree, const EdgeSet& x, const EdgeSet& y,
                             Vertex v) {
  return accumulation(tree, x, v) - accumulation(tree, y, v);
}

// V(X), ascending.
inline std::vector<Vertex> incident_vertices(const CommitteeTree& tree, const EdgeSet& x) {
  const auto mask = detail::incidence_mask(tree, x);
  std::vector<Vertex> out;
  for (Vertex v = 0; v < tree.vertex_count(); ++v) {
    if (mask[static_cast<std::size_t>(v)]) out.push_back(v);
  }
  return out;
}

// Vertices with no outgoing edge in X, ascending. Includes vertices outside
// V(X); the root is always terminal.
inline std::vector<Vertex> terminal_vertices(const CommitteeTree& tree, const EdgeSet& x) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < tree.vertex_count(); ++v) {
    if (!x.contains(v)) out.push_back(v);
  }
  return out;
}

// Union of the paths from leaves of `party` whose interior vertices avoid V(X).
inline EdgeSet flow(const CommitteeTree& tree, const EdgeSet& x, Party party) {
  const auto blocked = detail::incidence_mask(tree, x);
  EdgeSet out(tree.vertex_count());
  for (Vertex leaf = 0; leaf < tree.vertex_count(); ++leaf) {
    if (!tree.is_party(leaf, party)) continue;
    out.insert(leaf);
    Vertex v = tree.parent(leaf);
    while (v != tree.root() && !blocked[static_cast<std::size_t>(v)] && !out.contains(v)) {
      out.insert(v);
      v = tree.parent(v);
    }
  }
  return out;
}

inline EdgeSet blue_flow(const CommitteeTree& tree, const EdgeSet& x) {
  return flow(tree, x, Party::Blue);
}

inline EdgeSet red_flow(const CommitteeTree& tree, const EdgeSet& x) {
  return flow(tree, x, Party::Red);
}

enum class VoteResult : std::uint8_t { Blue, Tie, Red };

inline const char* to_string(VoteResult r) {
  switch (r) {
    case VoteResult::Blue:
      return "Blue";
    case VoteResult::Tie:
      return "Tie";
    case VoteResult::Red:
      return "Red";
  }
  return "?";
}

struct VoteOutcome {
  std::vector<int> margin;  // sum of votes sent into each vertex
  VoteResult result = VoteResult::Tie;
};

// Bottom-up majority vote: a committee sends the sign of its margin, a tie
// sends nobody. Neutral leaves send nothing.
inline VoteOutcome vote_outcome(const CommitteeTree& tree) {
  if (tree.has_open_frontier()) {
    throw UnsupportedInstance("voting is undefined on a tree with an open frontier");
  }
  const int n = tree.vertex_count();
  VoteOutcome out;
  out.margin.assign(static_cast<std::size_t>(n), 0);
  std::vector<int> sent(static_cast<std::size_t>(n), 0);
  const auto order = tree.top_down();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex v = *it;
    if (tree.is_leaf(v)) {
      sent[v] = tree.is_party(v, Party::Blue) ? 1 : tree.is_party(v, Party::Red) ? -1 : 0;
      continue;
    }
    int m = 0;
    for (Vertex c : tree.children(v)) m += sent[c];
    out.margin[v] = m;
    sent[v] = (m > 0) - (m < 0);
  }
  const int root_margin = out.margin[tree.root()];
  out.result = root_margin > 0 ? VoteResult::Blue : root_margin < 0 ? VoteResult::Red : VoteResult::Tie;
  return out;
}

// ---------------------------------------------------------------------------
// Text formats.
//
//   ctree v1
//   v <id> <parent-id|root> <B|R|open|->
//
// Edge sets are written as one line of ascending source ids.

inline const char* mark_token(Mark m) {
  switch (m) {
    case Mark::Blue:
      return "B";
    case Mark::Red:
      return "R";
    case Mark::Open:
      return "open";
    case Mark::None:
      return "-";
  }
  return "-";
}

namespace detail {

inline std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline bool parse_int(const std::string& text, long long& value) {
  if (text.empty()) return false;
  std::size_t pos = 0;
  try {
    value = std::stoll(text, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == text.size();
}

// Reads non-blank lines, skipping '#' comments. Returns (line number, tokens).
inline std::vector<std::pair<int, std::vector<std::string>>> read_records(std::istream& in) {
  std::vector<std::pair<int, std::vector<std::string>>> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto toks = tokens(line);
    if (!toks.empty()) out.emplace_back(number, std::move(toks));
  }
  return out;
}

[[noreturn]] inline void fail_at(int line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

}  // namespace detail

inline CommitteeTree parse_ctree(std::istream& in) {
  const auto records = detail::read_records(in);
  if (records.empty() || records[0].second != std::vector<std::string>{"ctree", "v1"}) {
    throw InputError("missing 'ctree v1' header");
  }
  struct Row {
    long long parent;
    Mark mark;
  };
  std::vector<std::optional<Row>> rows;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& [line, tok] = records[i];
    if (tok.size() != 4 || tok[0] != "v") detail::fail_at(line, "expected 'v <id> <parent|root> <mark>'");
    long long id = 0;
    if (!detail::parse_int(tok[1], id) || id < 0 || id > 100'000'000) detail::fail_at(line, "bad vertex id");
    long long parent = kNoVertex;
    if (tok[2] != "root" && (!detail::parse_int(tok[2], parent) || parent < 0)) {
      detail::fail_at(line, "bad parent id");
    }
    Mark mark = Mark::None;
    if (tok[3] == "B") {
      mark = Mark::Blue;
    } else if (tok[3] == "R") {
      mark = Mark::Red;
    } else if (tok[3] == "open") {
      mark = Mark::Open;
    } else if (tok[3] != "-") {
      detail::fail_at(line, "bad mark '" + tok[3] + "'");
    }
    if (static_cast<std::size_t>(id) >= rows.size()) rows.resize(static_cast<std::size_t>(id) + 1);
    if (rows[id]) detail::fail_at(line, "duplicate vertex id " + tok[1]);
    rows[id] = Row{parent, mark};
  }
  std::vector<Vertex> parent(rows.size());
  std::vector<Mark> marks(rows.size());
  for (std::size_t v = 0; v < rows.size(); ++v) {
    if (!rows[v]) throw InputError("vertex ids are not dense: " + std::to_string(v) + " missing");
    if (rows[v]->parent >= static_cast<long long>(rows.size())) {
      throw InputError("vertex " + std::to_string(v) + " has unknown parent");
    }
    parent[v] = static_cast<Vertex>(rows[v]->parent);
    marks[v] = rows[v]->mark;
  }
  return CommitteeTree(std::move(parent), std::move(marks));
}

inline CommitteeTree parse_ctree(const std::string& text) {
  std::istringstream in(text);
  return parse_ctree(in);
}

inline void write_ctree(std::ostream& out, const CommitteeTree& tree) {
  out << "ctree v1\n";
  for (Vertex v = 0; v < tree.vertex_count(); ++v) {
    out << "v " << v << ' ';
    if (v == tree.root()) {
      out << "root";
    } else {
      out << tree.parent(v);
    }
    out << ' ' << mark_token(tree.mark(v)) << '\n';
  }
}

inline std::string to_ctree_text(const CommitteeTree& tree) {
  std::ostringstream out;
  write_ctree(out, tree);
  return out.str();
}

inline EdgeSet parse_edge_set(const CommitteeTree& tree, const std::string& line) {
  std::vector<Vertex> sources;
  for (const auto& tok : detail::tokens(line)) {
    long long v = 0;
    if (!detail::parse_int(tok, v) || !tree.has_vertex(static_cast<Vertex>(v)) ||
        v == tree.root()) {
      throw InputError("'" + tok + "' is not a non-root vertex");
    }
    sources.push_back(static_cast<Vertex>(v));
  }
  return EdgeSet::from_sources(tree.vertex_count(), sources);
}

}  // namespace blockade
