// Copyright 2026 The cellgame Authors
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

#ifndef CELLGAME_ERRORS_H_
#define CELLGAME_ERRORS_H_

#include <stdexcept>
#include <string>

namespace cellgame {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition or invariant violated by caller-supplied data.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Malformed scenario document. `path` names the offending field, e.g.
// "nodes[2].channels[0]".
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// A search exceeded its configured assignment, node or wall-time budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace cellgame

#endif  // CELLGAME_ERRORS_H_
