// Copyright 2026 The relaxsim Authors
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

namespace relaxsim {

/// Operands have incompatible shapes (matrix sizes, subsystem layout, qubit counts).
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// A parameter lies outside its admissible range (probabilities, times, angles).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A matrix fails a state invariant (Hermiticity, unit trace, positivity, norm).
class StateError : public std::invalid_argument {
 public:
  explicit StateError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace relaxsim
