// Copyright 2026 The NLA Gaussian Authors
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

namespace nla {

/// Raised for inputs outside an operation's validity domain (maps to CLI
/// exit code 2).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when an operation that requires a convergent amplifier output is
/// asked to work past the gain boundary (CLI exit code 3).
class NonConvergentError : public std::runtime_error {
 public:
  explicit NonConvergentError(const std::string& what)
      : std::runtime_error(what) {}
};

/// V = V_E in the equivalent-circuit solver: the decomposition is not unique.
class DegenerateInputError : public DomainError {
 public:
  explicit DegenerateInputError(const std::string& what) : DomainError(what) {}
};

/// A closed-form solver produced no admissible root.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// Fock amplification factor g^cutoff would leave the double range.
class OverflowGuardError : public std::runtime_error {
 public:
  explicit OverflowGuardError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace nla
