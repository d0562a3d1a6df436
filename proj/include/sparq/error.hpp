// Copyright 2026 The SPARQ Authors. All Rights Reserved.
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

#pragma once

#include <stdexcept>
#include <string>

namespace sparq {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied argument violates a precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two operands that must agree in shape do not.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// File could not be opened, read, or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// File content is malformed (bad magic, truncated, checksum mismatch).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A domain-type invariant does not hold.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// A correlation is undefined because one list has no spread.
class UndefinedCorrelation : public Error {
 public:
  using Error::Error;
};

}  // namespace sparq
