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


// Small named trees shared by the test suites.

#pragma once

#include <initializer_list>
#include <vector>

#include "blockade/blockade.hpp"

namespace fixtures {

using blockade::CommitteeTree;
using blockade::EdgeSet;
using blockade::kNoVertex;
using blockade::Mark;
using blockade::MatroidPair;
using blockade::Vertex;

constexpr Mark N = Mark::None;
constexpr Mark B = Mark::Blue;
constexpr Mark R = Mark::Red;
constexpr Mark O = Mark::Open;

// r=0; b=1 blue, d=2 red.
inline CommitteeTree fx1() { return CommitteeTree({kNoVertex, 0, 0}, {N, B, R}); }

// r=0; c1=1, c2=2; b1=3, b2=4 under c1; d1=5, d2=6 under c2.
inline CommitteeTree fx2() { return CommitteeTree({kNoVertex, 0, 0, 1, 1, 2, 2}, {N, N, N, B, B, R, R}); }

// r=0; b1=1, b2=2, d1=3.
inline CommitteeTree fx3() { return CommitteeTree({kNoVertex, 0, 0, 0}, {N, B, B, R}); }

// r=0; c1=1; b1=2, d1=3, d2=4 under c1.
inline CommitteeTree fx4() { return CommitteeTree({kNoVertex, 0, 1, 1, 1}, {N, N, B, R, R}); }

// r=0; c1=1; b1=2, b2=3, d1=4 under c1.
inline CommitteeTree fx5() { return CommitteeTree({kNoVertex, 0, 1, 1, 1}, {N, N, B, B, R}); }

// r=0 <- v1=1 <- v2=2 (open); b=3 under v1.
inline CommitteeTree fxp() { return CommitteeTree({kNoVertex, 0, 1, 1}, {N, N, O, B}); }

inline EdgeSet edges(const CommitteeTree& tree, std::initializer_list<Vertex> sources) {
  return EdgeSet::from_sources(tree.vertex_count(), std::vector<Vertex>(sources));
}

inline MatroidPair fxm2() {
  return blockade::parse_tmat(
      "tmat v1\n"
      "node t1 rankM 1 rankN 1 elems a g\n"
      "node t2 rankM 1 rankN 1 elems g b\n"
      "link t1 t2 dummy g\n");
}

inline MatroidPair fxm4() { return blockade::parse_tmat("tmat v1\nnode t rankM 2 rankN 1 elems x1 x2 x3\n"); }

}  // namespace fixtures
