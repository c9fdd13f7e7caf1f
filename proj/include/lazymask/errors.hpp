// Copyright 2026 The lazymask Authors
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

#ifndef LAZYMASK_ERRORS_HPP_
#define LAZYMASK_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace lazymask {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Errors caused by bad input data rather than bad API usage. The CLI maps
// these to exit status 2.
class DataError : public Error {
 public:
  using Error::Error;
};

class InvalidInstance : public DataError {
 public:
  using DataError::DataError;
};

class SchemaViolation : public DataError {
 public:
  explicit SchemaViolation(std::string path, const std::string& what = "")
      : DataError("schema violation at " + path + (what.empty() ? "" : ": " + what)),
        path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class MalformedRow : public DataError {
 public:
  MalformedRow(std::size_t line, const std::string& what)
      : DataError("malformed row at line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class EmptyInput : public DataError {
 public:
  EmptyInput() : DataError("empty input") {}
};

class ReferenceLengthMismatch : public DataError {
 public:
  using DataError::DataError;
};

class GenerationExhausted : public Error {
 public:
  using Error::Error;
};

class RepeatedNode : public Error {
 public:
  explicit RepeatedNode(int node) : Error("node " + std::to_string(node) + " repeated in route") {}
};

class PrefixNotDepotRooted : public Error {
 public:
  PrefixNotDepotRooted() : Error("route does not start at the depot") {}
};

class IncompleteRoute : public Error {
 public:
  using Error::Error;
};

class WrongProblemKind : public Error {
 public:
  using Error::Error;
};

class TooLargeForExact : public Error {
 public:
  using Error::Error;
};

class InfeasibleInstance : public Error {
 public:
  InfeasibleInstance() : Error("instance has no feasible route") {}
};

class NoFeasibleRoute : public Error {
 public:
  NoFeasibleRoute() : Error("root candidate set exhausted with unlimited budget") {}
};

class EmptyCandidateSet : public Error {
 public:
  EmptyCandidateSet() : Error("masked softmax over an empty candidate set") {}
};

class MissingStepRecord : public Error {
 public:
  using Error::Error;
};

class TooFewSamples : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class LambdaExceedsDelta : public Error {
 public:
  using Error::Error;
};

class SupportViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace lazymask

#endif  // LAZYMASK_ERRORS_HPP_
