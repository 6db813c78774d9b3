// Copyright 2026 The claimsim Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace claimsim {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid model parameters or scenario configuration. `field()` names the
/// offending setting as a dotted path (e.g. "delay.alpha0") when known.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message, std::string field = {})
      : Error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A time query fell outside the grid a path is defined on.
class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

/// The requested valuation is outside the regime where the closed
/// quadrature form is valid; the Monte Carlo oracle must be used instead.
class UnsupportedRegimeError : public Error {
 public:
  using Error::Error;
};

/// Division by an essentially-zero survival probability.
class DegenerateStateError : public Error {
 public:
  using Error::Error;
};

/// A Monte Carlo bucket holds too few paths for a meaningful estimate.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

}  // namespace claimsim
