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

#include <stdexcept>
#include <string>

namespace blockade {

// Base class of everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed files, unknown ids, out-of-range arguments.
class InputError : public Error {
 public:
  using Error::Error;
};

// Well-formed input the operation does not handle (e.g. voting on a
// truncated tree).
class UnsupportedInstance : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an operation does not hold.
class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

// A result failed its own runtime verification. Always a bug.
class ContractViolated : public Error {
 public:
  using Error::Error;
};

// Local packing arithmetic failed while assembling a federated certificate.
class FeasibilityViolated : public Error {
 public:
  using Error::Error;
};

}  // namespace blockade
