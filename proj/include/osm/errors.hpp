// Copyright 2026 The Authors.
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

#ifndef OSM_ERRORS_HPP_
#define OSM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace osm {

// Out-of-range argument to a generator, solver or verification routine.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An exact oracle was asked for an instance beyond its state-space cap.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Input does not satisfy the structural assumptions an algorithm requires.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An internal invariant broke. The message carries a state dump.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace osm

#endif  // OSM_ERRORS_HPP_
