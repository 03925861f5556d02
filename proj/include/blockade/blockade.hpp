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


// Umbrella header.

#pragma once

#include "blockade/blockage_engine.hpp"
#include "blockade/committee_tree.hpp"
#include "blockade/errors.hpp"
#include "blockade/instances.hpp"
#include "blockade/intersection_builder.hpp"
#include "blockade/matroid_core.hpp"
#include "blockade/tree_generator.hpp"
#include "blockade/verification.hpp"
