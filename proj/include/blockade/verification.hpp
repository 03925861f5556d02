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

#pragma once

#include <algorithm>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace blockade {

struct CheckItem {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Itemized pass/fail list. Failures are entries, never exceptions.
class VerificationReport {
 public:
  void add(std::string name, bool passed, std::string detail = {}) {
    items_.push_back({std::move(name), passed, std::move(detail)});
  }

  bool passed() const {
    return std::all_of(items_.begin(), items_.end(),
                       [](const CheckItem& item) { return item.passed; });
  }

  const std::vector<CheckItem>& items() const { return items_; }

  const CheckItem* find(const std::string& name) const {
    for (const auto& item : items_) {
      if (item.name == name) return &item;
    }
    return nullptr;
  }

  std::string first_failure() const {
    for (const auto& item : items_) {
      if (!item.passed) {
        return item.detail.empty() ? item.name : item.name + ": " + item.detail;
      }
    }
    return {};
  }

 private:
  std::vector<CheckItem> items_;
};

inline std::ostream& operator<<(std::ostream& os, const VerificationReport& report) {
  for (const auto& item : report.items()) {
    os << "check " << item.name << ' ' << (item.passed ? "pass" : "FAIL");
    if (!item.detail.empty()) os << ' ' << item.detail;
    os << '\n';
  }
  os << "verdict " << (report.passed() ? "pass" : "fail") << '\n';
  return os;
}

}  // namespace blockade
