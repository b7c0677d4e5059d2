// util/error.hpp
//
// Copyright 2026  The gecgan authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef GECGAN_UTIL_ERROR_HPP_
#define GECGAN_UTIL_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace gecgan {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

// Malformed input file; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string &msg, int line)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Violated data invariant (edit spans, split fractions, config ranges, ...).
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string &msg) : Error(msg) {}
};

// Checkpoint file corrupt, wrong version, or incompatible with the model.
class CheckpointError : public Error {
 public:
  explicit CheckpointError(const std::string &msg) : Error(msg) {}
};

// A step budget ran out before the stop condition was met.  Used by the
// discriminator pre-training controller; carries the best accuracy seen.
class BudgetError : public Error {
 public:
  BudgetError(const std::string &msg, double best_accuracy)
      : Error(msg), best_accuracy_(best_accuracy) {}
  double best_accuracy() const { return best_accuracy_; }

 private:
  double best_accuracy_;
};

// Mean reward stayed below the floor for too many windows; adversarial
// training aborts rather than continuing to push a dead gradient.
class DivergenceError : public Error {
 public:
  explicit DivergenceError(const std::string &msg) : Error(msg) {}
};

}  // namespace gecgan

#endif  // GECGAN_UTIL_ERROR_HPP_
