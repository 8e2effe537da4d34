// Copyright 2026 The Horoshift Authors
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

namespace horo {

enum class ErrorKind {
  kConfig,        // unparsable input or invalid configuration
  kPrecondition,  // an operation was called outside its domain
  kResourceCap,   // a size or enumeration cap was exceeded
  kInvariant,     // an internal invariant was found broken
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error ConfigError(const std::string& what) {
  return Error(ErrorKind::kConfig, what);
}
inline Error PreconditionError(const std::string& what) {
  return Error(ErrorKind::kPrecondition, what);
}
inline Error CapError(const std::string& what) {
  return Error(ErrorKind::kResourceCap, what);
}
inline Error InvariantError(const std::string& what) {
  return Error(ErrorKind::kInvariant, what);
}

// CLI exit status for an error kind: 2 config, 3 precondition, 4 cap,
// 5 invariant breach.
inline int ExitCode(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig: return 2;
    case ErrorKind::kPrecondition: return 3;
    case ErrorKind::kResourceCap: return 4;
    case ErrorKind::kInvariant: return 5;
  }
  return 1;
}

}  // namespace horo
