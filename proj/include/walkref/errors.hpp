// Copyright 2026 The walkref Authors
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

namespace walkref {

// Malformed or unreadable input (graph files, names, flags).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes or feature dimensions that do not line up.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A refinement did not reach a fixpoint inside its round budget.
class NotStableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A construction would exceed a configured size cap. demanded() holds the
// exact quantity that was requested, in decimal.
class LimitError : public std::runtime_error {
 public:
  LimitError(const std::string& what, std::string demanded)
      : std::runtime_error(what), demanded_(std::move(demanded)) {}
  const std::string& demanded() const { return demanded_; }

 private:
  std::string demanded_;
};

// The distinct labels of a tensor are not linearly independent.
class LabelDependenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace walkref
