// Copyright 2026 The SRLU Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace srlu {

/// Stable error taxonomy. The values mirror the status codes of the C API
/// (include/srlu.h), so exceptions can be translated without a lookup table.
enum class ErrorCode : int {
  ok = 0,
  parameter = 1,
  shape = 2,
  singular_factor = 3,
  convergence = 4,
  capacity = 5,
  numeric = 6,
  provenance = 7,
  swap_cap = 8,
  io = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& w) : Error(ErrorCode::parameter, w) {}
};

class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& w) : Error(ErrorCode::shape, w) {}
};

/// Zero (or unusable) diagonal hit while solving with a triangular factor.
/// Carries the offending diagonal index.
class SingularFactorError : public Error {
 public:
  SingularFactorError(std::size_t index, const std::string& w)
      : Error(ErrorCode::singular_factor, w), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Iteration failed to reach its tolerance. Carries the gap between the last
/// two iterates.
class ConvergenceError : public Error {
 public:
  ConvergenceError(double gap, const std::string& w) : Error(ErrorCode::convergence, w), gap_(gap) {}
  double gap() const noexcept { return gap_; }

 private:
  double gap_;
};

class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& w) : Error(ErrorCode::capacity, w) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& w) : Error(ErrorCode::numeric, w) {}
};

class ProvenanceError : public Error {
 public:
  explicit ProvenanceError(const std::string& w) : Error(ErrorCode::provenance, w) {}
};

}  // namespace srlu
