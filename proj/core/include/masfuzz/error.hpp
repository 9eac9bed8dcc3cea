// Copyright 2026 The masfuzz Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MASFUZZ_ERROR_HPP_
#define MASFUZZ_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace masfuzz {

// Base class for all errors raised by the framework.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &what) : std::runtime_error(what) {}
};

// Filesystem / subprocess failures.
class IoError : public Error {
 public:
  using Error::Error;
};

// A library scan produced zero public APIs; a campaign cannot proceed.
class EmptyModelError : public Error {
 public:
  using Error::Error;
};

// A type spelling could not be normalized. Carries the raw spelling.
class TypeNormalizationError : public Error {
 public:
  explicit TypeNormalizationError(const std::string &raw)
      : Error("cannot normalize type spelling: '" + raw + "'"), raw_(raw) {}
  const std::string &raw() const { return raw_; }

 private:
  std::string raw_;
};

// Malformed input artifact (coverage report, checkpoint, config...).
// Carries a short excerpt of the offending content.
class FormatError : public Error {
 public:
  using Error::Error;
};

// An operation was invoked in a state its precondition forbids.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Oracle transport failure or a reply that stayed malformed after the
// retry budget was spent.
class OracleError : public Error {
 public:
  using Error::Error;
};

// Missing prerequisite checkpoint for a pipeline stage. Names the stage
// that must run first.
class StageDependencyError : public Error {
 public:
  StageDependencyError(const std::string &missing, const std::string &required_stage)
      : Error("missing " + missing + ": run the '" + required_stage + "' stage first"),
        required_stage_(required_stage) {}
  const std::string &required_stage() const { return required_stage_; }

 private:
  std::string required_stage_;
};

}  // namespace masfuzz

#endif  // MASFUZZ_ERROR_HPP_
