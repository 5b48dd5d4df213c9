// Copyright 2026 The iontrace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IONTRACE_ERRORS_HPP
#define IONTRACE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace iontrace {

/// A precondition or numerical contract was violated (non-unitary operator,
/// dimension mismatch, broken server reply, ...).
class ContractError : public std::runtime_error {
 public:
  explicit ContractError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid user-supplied parameter (angle out of range, unknown table row,
/// malformed spec file, ...).
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// Networking failure talking to a remote server. Distinct from ContractError
/// so callers can tell "the wire broke" from "the server misbehaved".
class TransportError : public std::runtime_error {
 public:
  explicit TransportError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace iontrace

#endif  // IONTRACE_ERRORS_HPP
