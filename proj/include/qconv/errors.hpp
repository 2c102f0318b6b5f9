// Copyright 2026 The qconv Authors
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

namespace qconv {

// Index/dimension out of range, mismatched shapes, repeated targets.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// A value was well-formed but failed a numerical contract (unitarity,
// normalization, basis completeness, config ranges).
class ValidationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
  public:
    ParseError(int line, const std::string &what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const noexcept { return line_; }

  private:
    int line_;
};

// Operation invoked in a protocol phase that does not permit it.
class StateError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

// Two state families expected to coincide do not.
class IncompatibleFamilies : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ResourceExhausted : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace qconv
