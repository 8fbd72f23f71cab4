// Copyright 2026 The qcoex Authors
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

#ifndef QCOEX_ERRORS_HPP_
#define QCOEX_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace qcoex {

// Base class for all engine errors. Subclasses map to CLI exit codes:
// ConfigError -> 2, DomainError/RangeError -> 3, InfeasibleError -> 4,
// ConvergenceError -> 5.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Physics-domain violations: unsupported regimes, invalid state matrices,
// parameters outside their physical range.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

class RangeError : public DomainError {
 public:
  explicit RangeError(const std::string& msg) : DomainError(msg) {}
};

class InfeasibleError : public Error {
 public:
  explicit InfeasibleError(const std::string& msg) : Error(msg) {}
};

class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& msg) : Error(msg) {}
};

}  // namespace qcoex

#endif  // QCOEX_ERRORS_HPP_
