// Copyright 2026 The qsimnet Authors
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

namespace qsimnet {

enum class ErrorKind {
    Shape,       // length / arity / capacity mismatch
    Index,       // qubit index out of range or duplicated
    Degenerate,  // zero-norm input, constant sequence, ...
    Validation,  // bad configuration or dataset contents
    Resource,    // size guards (qubit count, permutation search)
    Io,
};

/// Base exception for everything thrown by the library. The kind decides the
/// CLI exit code (see exit_code()).
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

struct ShapeError : Error {
    explicit ShapeError(const std::string &w) : Error(ErrorKind::Shape, w) {}
};
struct IndexError : Error {
    explicit IndexError(const std::string &w) : Error(ErrorKind::Index, w) {}
};
struct DegenerateInputError : Error {
    explicit DegenerateInputError(const std::string &w)
        : Error(ErrorKind::Degenerate, w) {}
};
struct ValidationError : Error {
    explicit ValidationError(const std::string &w)
        : Error(ErrorKind::Validation, w) {}
};
struct ResourceError : Error {
    explicit ResourceError(const std::string &w)
        : Error(ErrorKind::Resource, w) {}
};
struct IoError : Error {
    explicit IoError(const std::string &w) : Error(ErrorKind::Io, w) {}
};

/// 0 success, 1 validation, 2 I/O, 3 resource/capacity.
[[nodiscard]] constexpr int exit_code(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::Io:
        return 2;
    case ErrorKind::Resource:
        return 3;
    default:
        return 1;
    }
}

} // namespace qsimnet
