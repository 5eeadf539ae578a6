// Copyright 2026 The adapteval Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace adapteval {

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A record file could not be decoded. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Decoded data violates a domain invariant (duplicate id, bad category, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A judge completion matched none of the expected output grammars.
class UnparseableResponse : public Error {
 public:
  using Error::Error;
};

/// A judge completion parsed, but a value is missing or out of range.
class InvalidResponse : public Error {
 public:
  using Error::Error;
};

class UnboundPlaceholder : public Error {
 public:
  explicit UnboundPlaceholder(const std::string& name)
      : Error("unbound placeholder {" + name + "}"), name_(name) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// Network or HTTP failure talking to a completion backend.
class TransportError : public Error {
 public:
  TransportError(const std::string& what, int status, bool transient)
      : Error(what), status_(status), transient_(transient) {}

  /// HTTP status, or 0 when no response was received.
  int status() const noexcept { return status_; }
  bool transient() const noexcept { return transient_; }

 private:
  int status_;
  bool transient_;
};

class CacheError : public Error {
 public:
  using Error::Error;
};

/// Kendall tau is undefined for the given inputs (e.g. a constant vector).
class UndefinedStatistic : public Error {
 public:
  using Error::Error;
};

}  // namespace adapteval
