// Copyright 2026 The rcgeom Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace rcgeom {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition (wrong variance, slot out of
/// range, malformed input tensor).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Evaluation left the region where a field is defined: division by zero,
/// log/sqrt of a non-positive argument, non-finite intermediate, or a point
/// outside the chart's domain predicate.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Expression text could not be parsed.
class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t offset,
             std::vector<std::string> expected = {});

  std::size_t offset() const noexcept { return offset_; }
  std::vector<std::string> const& expected() const noexcept {
    return expected_;
  }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Spacetime definition file could not be turned into a model.
class LoadError : public Error {
 public:
  LoadError(std::string message, std::size_t line = 0);

  /// 1-based line number, 0 when the error is not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Metric failed the Lorentzian (+,-,-,-) checks at a point.
class SignatureError : public Error {
 public:
  using Error::Error;
};

/// Metric determinant is numerically zero.
class DegenerateMetric : public Error {
 public:
  using Error::Error;
};

/// Two routes that must agree by construction disagree: a sign or index
/// convention is broken somewhere in the implementation.
class ConventionViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace rcgeom
