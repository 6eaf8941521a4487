// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <stdexcept>
#include <string>

namespace kissgev {

// Base class of everything thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

// Filesystem or OS level failure (missing file, short read, failed write).
class IoError : public Error {
 public:
  using Error::Error;
};

// Structurally broken or unsupported file contents.
class FormatError : public Error {
 public:
  using Error::Error;
};

// A parameter or input shape violates an operation's preconditions.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Non-finite values where finite numbers are required.
class NumericError : public Error {
 public:
  using Error::Error;
};

// A factorization or eigensolver could not complete.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace kissgev
