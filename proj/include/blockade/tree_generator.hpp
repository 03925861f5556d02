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

// Lazily generated (possibly infinite) committee trees, breadth-first
// truncation, and certificate stability across truncation depths.

#pragma once

#include <cstddef>
#include <functional>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "blockade/blockage_engine.hpp"
#include "blockade/committee_tree.hpp"
#include "blockade/errors.hpp"

namespace blockade {

template <class Label>
struct GeneratedChild {
  Label label;
  Mark mark = Mark::None;  // None, Blue or Red
};

template <class Label>
struct TreeGenerator {
  Label root;
  std::function<std::vector<GeneratedChild<Label>>(const Label&)> children;
};

// A finite state machine whose unfolding is a locally finite tree.
struct PeriodicTreeSpec {
  std::vector<std::string> names;
  std::vector<Mark> marks;
  std::vector<std::vector<int>> children;  // with multiplicity, in file order
  int root = 0;

  int state_count() const { return static_cast<int>(names.size()); }
};

// Throws InputError unless every state is reachable from the root, party
// states are childless and the root is unmarked.
inline void validate(const PeriodicTreeSpec& spec) {
  const int n = spec.state_count();
  if (n == 0) throw InputError("spec has no states");
  if (static_cast<int>(spec.marks.size()) != n || static_cast<int>(spec.children.size()) != n) {
    throw InputError("spec tables disagree in size");
  }
  if (spec.root < 0 || spec.root >= n) throw InputError("spec root is not a state");
  if (spec.marks[spec.root] != Mark::None) throw InputError("root state may not carry a party mark");
  for (int s = 0; s < n; ++s) {
    if (spec.marks[s] == Mark::Open) throw InputError("states cannot be marked open");
    if (spec.marks[s] != Mark::None && !spec.children[s].empty()) {
      throw InputError("party state '" + spec.names[s] + "' has children");
    }
    for (int c : spec.children[s]) {
      if (c < 0 || c >= n) throw InputError("child refers to an unknown state");
    }
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<int> stack{spec.root};
  seen[spec.root] = true;
  while (!stack.empty()) {
    const int s = stack.back();
    stack.pop_back();
    for (int c : spec.children[s]) {
      if (!seen[c]) {
        seen[c] = true;
        stack.push_back(c);
      }
    }
  }
  for (int s = 0; s < n; ++s) {
    if (!seen[s]) throw InputError("state '" + spec.names[s] + "' is unreachable");
  }
}

inline TreeGenerator<int> as_generator(PeriodicTreeSpec spec) {
  validate(spec);
  auto shared = std::make_shared<const PeriodicTreeSpec>(std::move(spec));
  TreeGenerator<int> gen;
  gen.root = shared->root;
  gen.children = [shared](const int& state) {
    std::vector<GeneratedChild<int>> out;
    for (int c : shared->children[state]) out.push_back({c, shared->marks[c]});
    return out;
  };
  return gen;
}

enum class FrontierMode { Neutral, OpenAsBlue, OpenAsRed };

inline const char* to_string(FrontierMode m) {
  switch (m) {
    case FrontierMode::Neutral:
      return "neutral";
    case FrontierMode::OpenAsBlue:
      return "blue";
    case FrontierMode::OpenAsRed:
      return "red";
  }
  return "?";
}

inline FrontierMode parse_frontier_mode(const std::string& text) {
  if (text == "neutral") return FrontierMode::Neutral;
  if (text == "blue") return FrontierMode::OpenAsBlue;
  if (text == "red") return FrontierMode::OpenAsRed;
  throw InputError("unknown frontier mode '" + text + "'");
}

// Breadth-first expansion down to `depth`. Vertices at the depth limit that
// still have children become open (neutral mode) or party leaves. Vertex ids
// follow breadth-first order, so the first levels keep their ids at every
// larger depth.
template <class Label>
CommitteeTree truncate(const TreeGenerator<Label>& gen, int depth, FrontierMode mode,
                       std::size_t max_children = std::size_t{1} << 16) {
  if (depth < 0) throw InputError("truncation depth must be nonnegative");
  struct Pending {
    Label label;
    Mark mark;
    int depth;
  };
  std::vector<Vertex> parent{kNoVertex};
  std::vector<Mark> marks{Mark::None};
  std::vector<Pending> queue{{gen.root, Mark::None, 0}};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Pending cur = queue[i];
    auto kids = gen.children(cur.label);
    if (kids.size() > max_children) throw InputError("generator branching exceeds the supported bound");
    if (cur.mark != Mark::None && !kids.empty()) throw InputError("party leaf produced children");
    if (kids.empty()) continue;
    if (cur.depth == depth) {
      if (i != 0) {
        marks[i] = mode == FrontierMode::Neutral      ? Mark::Open
                   : mode == FrontierMode::OpenAsBlue ? Mark::Blue
                                                      : Mark::Red;
      }
      continue;
    }
    for (auto& kid : kids) {
      if (kid.mark == Mark::Open) throw InputError("generator may not emit open marks");
      parent.push_back(static_cast<Vertex>(i));
      marks.push_back(kid.mark);
      queue.push_back({std::move(kid.label), kid.mark, cur.depth + 1});
    }
  }
  return CommitteeTree(std::move(parent), std::move(marks));
}

// Distance from the root for every vertex.
inline std::vector<int> vertex_depths(const CommitteeTree& tree) {
  std::vector<int> depth(static_cast<std::size_t>(tree.vertex_count()), 0);
  for (Vertex v : tree.top_down()) {
    if (v != tree.root()) depth[v] = depth[tree.parent(v)] + 1;
  }
  return depth;
}

// ---------------------------------------------------------------------------
// Stability study

struct StabilityRecord {
  int depth = 0;
  std::optional<FrontierMode> mode;  // empty: the truncation had no frontier
  CertificateKind kind = CertificateKind::Red;
  EdgeSet edges;
  std::vector<Vertex> prefix;  // edges with source depth <= depth - 2; all edges when finite
};

struct StabilityReport {
  std::vector<StabilityRecord> records;
  std::optional<int> stabilization_depth;
};

namespace detail {

inline std::vector<Vertex> restrict_to_depth(const std::vector<Vertex>& sources, const std::vector<int>& depth,
                                             int limit) {
  std::vector<Vertex> out;
  for (Vertex s : sources) {
    if (s < static_cast<Vertex>(depth.size()) && depth[s] < limit) out.push_back(s);
  }
  return out;
}

}  // namespace detail

// Certifies every truncation depth in [d_min, d_max] under each requested
// frontier mode. Stops early once a truncation has no frontier left. Prefixes
// keep one level of margin from the frontier, whose marks reach one edge up.
// The stabilization depth is the least recorded depth D such that every
// record at depth >= D has the same kind and the same edges with source depth
// <= D - 2.
template <class Label>
StabilityReport stability_study(const TreeGenerator<Label>& gen, int d_min, int d_max,
                                std::vector<FrontierMode> modes = {FrontierMode::Neutral, FrontierMode::OpenAsBlue,
                                                                   FrontierMode::OpenAsRed}) {
  if (d_min < 1 || d_min > d_max) throw InputError("need 1 <= depth-min <= depth-max");
  if (modes.empty()) throw InputError("no frontier modes requested");
  StabilityReport report;
  std::vector<std::vector<int>> depth_tables;
  std::vector<std::vector<Vertex>> full_edges;
  for (int d = d_min; d <= d_max; ++d) {
    const CommitteeTree neutral = truncate(gen, d, FrontierMode::Neutral);
    const bool finite = !neutral.has_open_frontier();
    std::vector<std::optional<FrontierMode>> runs;
    if (finite) {
      runs.push_back(std::nullopt);
    } else {
      for (FrontierMode m : modes) runs.push_back(m);
    }
    for (const auto& m : runs) {
      const CommitteeTree tree = m ? truncate(gen, d, *m) : neutral;
      const Certificate cert = find_certificate(tree);
      const auto depth = vertex_depths(tree);
      StabilityRecord rec;
      rec.depth = d;
      rec.mode = m;
      rec.kind = cert.kind;
      rec.edges = cert.edges;
      rec.prefix = m ? detail::restrict_to_depth(cert.edges.sources(), depth, d - 1) : cert.edges.sources();
      report.records.push_back(std::move(rec));
      depth_tables.push_back(depth);
      full_edges.push_back(cert.edges.sources());
    }
    if (finite) break;
  }

  const auto& recs = report.records;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    if (i > 0 && recs[i].depth == recs[i - 1].depth) continue;
    const int candidate = recs[i].depth;
    bool stable = true;
    for (std::size_t j = i; j < recs.size() && stable; ++j) {
      stable = recs[j].kind == recs[i].kind &&
               detail::restrict_to_depth(full_edges[j], depth_tables[j], candidate - 1) ==
                   detail::restrict_to_depth(full_edges[i], depth_tables[i], candidate - 1);
    }
    if (stable) {
      report.stabilization_depth = candidate;
      break;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Periodic spec text format
//
//   pgen v1
//   state <name> [B|R]
//   child <parent-state> <child-state>
//   root <state>

inline PeriodicTreeSpec parse_pgen(std::istream& in) {
  const auto records = detail::read_records(in);
  if (records.empty() || records[0].second != std::vector<std::string>{"pgen", "v1"}) {
    throw InputError("missing 'pgen v1' header");
  }
  PeriodicTreeSpec spec;
  std::map<std::string, int> index;
  std::optional<int> root;
  std::vector<std::pair<int, std::pair<std::string, std::string>>> edges;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& [line, tok] = records[i];
    if (tok[0] == "state") {
      if (tok.size() < 2 || tok.size() > 3) detail::fail_at(line, "expected 'state <name> [B|R]'");
      if (index.count(tok[1])) detail::fail_at(line, "duplicate state '" + tok[1] + "'");
      Mark mark = Mark::None;
      if (tok.size() == 3) {
        if (tok[2] == "B") {
          mark = Mark::Blue;
        } else if (tok[2] == "R") {
          mark = Mark::Red;
        } else {
          detail::fail_at(line, "bad state mark '" + tok[2] + "'");
        }
      }
      index[tok[1]] = spec.state_count();
      spec.names.push_back(tok[1]);
      spec.marks.push_back(mark);
      spec.children.emplace_back();
    } else if (tok[0] == "child") {
      if (tok.size() != 3) detail::fail_at(line, "expected 'child <parent> <child>'");
      edges.push_back({line, {tok[1], tok[2]}});
    } else if (tok[0] == "root") {
      if (tok.size() != 2) detail::fail_at(line, "expected 'root <state>'");
      if (root) detail::fail_at(line, "multiple root lines");
      root = line;
      spec.root = -1;
      edges.push_back({-line, {tok[1], tok[1]}});
    } else {
      detail::fail_at(line, "unknown record '" + tok[0] + "'");
    }
  }
  if (!root) throw InputError("missing root line");
  for (const auto& [line, e] : edges) {
    const auto p = index.find(e.first);
    const auto c = index.find(e.second);
    const int at = line < 0 ? -line : line;
    if (p == index.end()) detail::fail_at(at, "unknown state '" + e.first + "'");
    if (c == index.end()) detail::fail_at(at, "unknown state '" + e.second + "'");
    if (line < 0) {
      spec.root = p->second;
    } else {
      spec.children[p->second].push_back(c->second);
    }
  }
  validate(spec);
  return spec;
}

inline PeriodicTreeSpec parse_pgen(const std::string& text) {
  std::istringstream in(text);
  return parse_pgen(in);
}

inline void write_pgen(std::ostream& out, const PeriodicTreeSpec& spec) {
  out << "pgen v1\n";
  for (int s = 0; s < spec.state_count(); ++s) {
    out << "state " << spec.names[s];
    if (spec.marks[s] != Mark::None) out << ' ' << mark_token(spec.marks[s]);
    out << '\n';
  }
  for (int s = 0; s < spec.state_count(); ++s) {
    for (int c : spec.children[s]) out << "child " << spec.names[s] << ' ' << spec.names[c] << '\n';
  }
  out << "root " << spec.names[spec.root] << '\n';
}

inline std::string to_pgen_text(const PeriodicTreeSpec& spec) {
  std::ostringstream out;
  write_pgen(out, spec);
  return out.str();
}

}  // namespace blockade
