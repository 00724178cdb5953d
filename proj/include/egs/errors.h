// Copyright 2026 The egs Authors
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

#ifndef EGS_ERRORS_H_
#define EGS_ERRORS_H_

#include <stdexcept>
#include <string>

namespace egs {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed tree shape or dangling reference while building a game.
class StructureError : public Error {
 public:
  using Error::Error;
};

// A query was made that is not meaningful for its arguments (terminal node,
// unknown player, action not feasible at an information set, ...).
class QueryError : public Error {
 public:
  using Error::Error;
};

// A transformation site does not satisfy its defining condition.
class InvalidSiteError : public Error {
 public:
  using Error::Error;
};

// A normal form has no extensive-form preimage in the supported class.
class RealizabilityError : public Error {
 public:
  using Error::Error;
};

// Two independent computations that must agree did not. Always a bug.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// Text input could not be parsed. Line and column are 1-based; zero means
// "not applicable".
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error(Format(line, column, message)), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string Format(int line, int column, const std::string& message) {
    if (line <= 0) return message;
    std::string out = "line " + std::to_string(line);
    if (column > 0) out += ", column " + std::to_string(column);
    return out + ": " + message;
  }

  int line_;
  int column_;
};

}  // namespace egs

#endif  // EGS_ERRORS_H_
