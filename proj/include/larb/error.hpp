// Copyright 2026 The LARB Translator Authors
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

namespace larb {

/// Root of every exception thrown by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A lexeme was used in a slot its category does not allow.
class CategoryError : public Error {
 public:
  using Error::Error;
};

/// Suffix/prefix/transitivity agreement was violated.
class AgreementError : public Error {
 public:
  using Error::Error;
};

/// Selections were incomplete or broke a sentence rule where a complete
/// sentence was required.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Unknown lexeme id or missing data file entry.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// A builder choice was not among the offered choices.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

/// Malformed user input (files, request bodies, rankings).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Numeric parameter outside its domain.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Zero-norm or otherwise degenerate numeric input.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// Missing or inconsistent configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Network-level failure talking to a model backend (after retries).
class TransportError : public Error {
 public:
  using Error::Error;
};

/// The backend answered with a non-success status.
class BackendError : public Error {
 public:
  BackendError(int status, std::string body_excerpt)
      : Error("backend returned HTTP " + std::to_string(status) + ": " +
              body_excerpt),
        status_(status),
        body_excerpt_(std::move(body_excerpt)) {}

  int status() const noexcept { return status_; }
  const std::string& body_excerpt() const noexcept { return body_excerpt_; }

 private:
  int status_;
  std::string body_excerpt_;
};

/// A model reply could not be parsed into the requested structure.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::string raw = {})
      : Error(what), raw_(std::move(raw)) {}

  const std::string& raw() const noexcept { return raw_; }

 private:
  std::string raw_;
};

/// The segmenter's reply stayed unusable after the repair turn.
class SegmentationError : public Error {
 public:
  SegmentationError(const std::string& what, std::string raw = {})
      : Error(what), raw_(std::move(raw)) {}

  const std::string& raw() const noexcept { return raw_; }

 private:
  std::string raw_;
};

}  // namespace larb
