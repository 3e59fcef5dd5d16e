/*
 * Copyright (c) 2026, fabsim authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fabsim {

// Root of the error hierarchy.  The CLI maps subclasses onto exit codes:
// ParseError -> 2, ValidationError -> 3, UnsupportedError -> 4.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  using Error::Error;
};

struct ValidationError : Error {
  using Error::Error;
};

struct UnsupportedError : Error {
  using Error::Error;
};

// Topology family cannot be built at the requested node count.
struct UnsupportedSizeError : ValidationError {
  using ValidationError::ValidationError;
};

struct NonPositiveBandwidthError : ValidationError {
  using ValidationError::ValidationError;
};

// Bisection is only defined for an even node count.
struct OddNodeCountError : ValidationError {
  using ValidationError::ValidationError;
};

struct EmptyAxisError : ValidationError {
  using ValidationError::ValidationError;
};

// A transfer references a (src, dst) pair with no direct link.
struct LinkNotInTopologyError : ValidationError {
  using ValidationError::ValidationError;
};

// A schedule step drives a node's outgoing links beyond its bandwidth budget
// (on a ring: more than one concurrent send per node).
struct NodeSendConflictError : ValidationError {
  using ValidationError::ValidationError;
};

// Requested operation has no model for this topology family.
struct UnsupportedFamilyError : UnsupportedError {
  using UnsupportedError::UnsupportedError;
};

class CapacityExceededError : public ValidationError {
 public:
  CapacityExceededError(std::uint32_t device, std::uint64_t required_bytes,
                        std::uint64_t available_bytes)
      : ValidationError("placement exceeds device memory: device " +
                        std::to_string(device) + " requires " +
                        std::to_string(required_bytes) + " bytes, capacity " +
                        std::to_string(available_bytes) + " bytes"),
        device_(device),
        required_(required_bytes),
        available_(available_bytes) {}

  std::uint32_t device() const { return device_; }
  std::uint64_t required_bytes() const { return required_; }
  std::uint64_t available_bytes() const { return available_; }

 private:
  std::uint32_t device_;
  std::uint64_t required_;
  std::uint64_t available_;
};

}  // namespace fabsim
