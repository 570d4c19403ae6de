// Copyright 2026 The qnic authors
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

#ifndef QNIC_ERRORS_HPP
#define QNIC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qnic {

/// Base class for all qnic error conditions.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

/// Encoding requested for an all-zero vector (normalization undefined).
class ZeroVectorError : public Error {
 public:
  explicit ZeroVectorError(const std::string &msg) : Error(msg) {}
};

/// Operand dimensions do not agree.
class DimensionMismatchError : public Error {
 public:
  explicit DimensionMismatchError(const std::string &msg) : Error(msg) {}
};

/// Renormalization requested but the projected state is exactly zero.
class ZeroProjectionError : public Error {
 public:
  explicit ZeroProjectionError(const std::string &msg) : Error(msg) {}
};

/// Explicit compression target has the wrong sample count or dimension.
class TargetShapeMismatchError : public Error {
 public:
  explicit TargetShapeMismatchError(const std::string &msg) : Error(msg) {}
};

/// Training loss became NaN or infinite.
class NonFiniteLossError : public Error {
 public:
  explicit NonFiniteLossError(const std::string &msg) : Error(msg) {}
};

/// Requested dataset cannot exist (e.g. more unique images than the space holds).
class UnsatisfiableError : public Error {
 public:
  explicit UnsatisfiableError(const std::string &msg) : Error(msg) {}
};

/// File exists but its contents cannot be parsed as the expected format.
class MalformedFileError : public Error {
 public:
  explicit MalformedFileError(const std::string &msg) : Error(msg) {}
};

/// File format is not one of the supported kinds.
class UnsupportedFormatError : public Error {
 public:
  explicit UnsupportedFormatError(const std::string &msg) : Error(msg) {}
};

/// I/O failure (missing path, unwritable directory).
class IoError : public Error {
 public:
  explicit IoError(const std::string &msg) : Error(msg) {}
};

}  // namespace qnic

#endif  // QNIC_ERRORS_HPP
