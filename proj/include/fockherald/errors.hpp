// Copyright 2026 The fockherald Authors
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

#include <cstdio>
#include <stdexcept>
#include <string>

namespace fockherald {

/// Base class for failures of the numerics (as opposed to invalid input,
/// which is reported with std::invalid_argument).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Hermite recurrence left the representable range.
class OverflowError : public NumericError {
 public:
  explicit OverflowError(int index)
      : NumericError("Hermite recurrence overflowed at index " + std::to_string(index) +
                     "; lower the cutoff or rescale the argument"),
        index_(index) {}

  int index() const { return index_; }

 private:
  int index_;
};

/// The retained Fock space is too small for the requested state.
class CutoffError : public NumericError {
 public:
  CutoffError(double tail_mass, int cutoff)
      : NumericError(message(tail_mass, cutoff)), tail_mass_(tail_mass) {}

  double tail_mass() const { return tail_mass_; }

 private:
  static std::string message(double tail_mass, int cutoff) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", tail_mass);
    return "cutoff " + std::to_string(cutoff) + " too small: tail mass " + buf + " exceeds the limit";
  }

  double tail_mass_;
};

}  // namespace fockherald
