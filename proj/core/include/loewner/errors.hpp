#pragma once

#include <stdexcept>
#include <string>

#include "loewner/types.hpp"

namespace loewner {

enum class ErrorKind {
  InvalidArgument,
  PointOutsideDomain,
  UnsupportedDomain,
  CallbackFailure,
  DegeneratePair,
  TrajectoryEscaped,
  StepFailure,
  HorizonExceeded,
  BreakpointTooClose,
  CurveTooClose,
  NonIntegerWinding,
  NewtonDivergence,
  Inconclusive,
  BranchContinuationFailure,
  SchwarzPickViolation,
  SingularJacobian,
  SchemaError,
};

const char* to_string(ErrorKind kind);

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& m) : Error(ErrorKind::InvalidArgument, m) {}
};

class PointOutsideDomain : public Error {
 public:
  explicit PointOutsideDomain(const std::string& m) : Error(ErrorKind::PointOutsideDomain, m) {}
};

class UnsupportedDomain : public Error {
 public:
  explicit UnsupportedDomain(const std::string& m) : Error(ErrorKind::UnsupportedDomain, m) {}
};

class CallbackFailure : public Error {
 public:
  explicit CallbackFailure(const std::string& m) : Error(ErrorKind::CallbackFailure, m) {}
};

class DegeneratePair : public Error {
 public:
  explicit DegeneratePair(const std::string& m) : Error(ErrorKind::DegeneratePair, m) {}
};

/// The trajectory came within the boundary margin of the domain boundary.
class TrajectoryEscaped : public Error {
 public:
  TrajectoryEscaped(double t_escape, const std::string& m)
      : Error(ErrorKind::TrajectoryEscaped, m), t_escape_(t_escape) {}
  double escape_time() const noexcept { return t_escape_; }

 private:
  double t_escape_;
};

class StepFailure : public Error {
 public:
  explicit StepFailure(const std::string& m) : Error(ErrorKind::StepFailure, m) {}
};

class HorizonExceeded : public Error {
 public:
  explicit HorizonExceeded(const std::string& m) : Error(ErrorKind::HorizonExceeded, m) {}
};

class BreakpointTooClose : public Error {
 public:
  explicit BreakpointTooClose(const std::string& m) : Error(ErrorKind::BreakpointTooClose, m) {}
};

class CurveTooClose : public Error {
 public:
  explicit CurveTooClose(const std::string& m) : Error(ErrorKind::CurveTooClose, m) {}
};

class NonIntegerWinding : public Error {
 public:
  NonIntegerWinding(double value, const std::string& m)
      : Error(ErrorKind::NonIntegerWinding, m), value_(value) {}
  double value() const noexcept { return value_; }

 private:
  double value_;
};

class NewtonDivergence : public Error {
 public:
  NewtonDivergence(Complex target, std::size_t index, const std::string& m)
      : Error(ErrorKind::NewtonDivergence, m), target_(target), index_(index) {}
  Complex target() const noexcept { return target_; }
  std::size_t sequence_index() const noexcept { return index_; }

 private:
  Complex target_;
  std::size_t index_;
};

class Inconclusive : public Error {
 public:
  explicit Inconclusive(const std::string& m) : Error(ErrorKind::Inconclusive, m) {}
};

class BranchContinuationFailure : public Error {
 public:
  explicit BranchContinuationFailure(const std::string& m)
      : Error(ErrorKind::BranchContinuationFailure, m) {}
};

class SchwarzPickViolation : public Error {
 public:
  explicit SchwarzPickViolation(const std::string& m) : Error(ErrorKind::SchwarzPickViolation, m) {}
};

class SingularJacobian : public Error {
 public:
  SingularJacobian(ComplexVector z, const std::string& m)
      : Error(ErrorKind::SingularJacobian, m), z_(std::move(z)) {}
  const ComplexVector& point() const noexcept { return z_; }

 private:
  ComplexVector z_;
};

/// Malformed input document; path() locates the offending member ("params.a").
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& m)
      : Error(ErrorKind::SchemaError, m), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace loewner
