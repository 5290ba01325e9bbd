// Copyright 2026 The liegroup-index Authors
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

namespace liegroup {

/// Input outside the domain of a chart or operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two objects living on different groups (or incompatible bases) were combined.
class MismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested feature exists in the theory but not in this library
/// (e.g. SU(3) representation matrices).
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A truncation band is too small for the requested operation. Carries the
/// band that would have been sufficient.
class BandError : public std::runtime_error {
 public:
  BandError(const std::string& what, int required_band)
      : std::runtime_error(what), required_band_(required_band) {}
  int required_band() const noexcept { return required_band_; }

 private:
  int required_band_;
};

/// Eigensolver failure, non-finite exponentials and similar.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Experiment configuration failed validation.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace liegroup
