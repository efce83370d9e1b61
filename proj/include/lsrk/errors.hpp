#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lsrk {

/// Base class for all library failures that are not plain argument errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent coefficient data. `field()` names the offending
/// location using 1-based stage indices, e.g. "c[2]" or "a[4][2]".
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

/// The tableau cannot be cast into the two-register form. `index()` is the
/// 1-based stage index where the conversion broke down.
class NotTwoNStorageError : public Error {
 public:
  NotTwoNStorageError(int index, const std::string& what)
      : Error("not a 2N-storage method (index " + std::to_string(index) + "): " + what),
        index_(index) {}
  int index() const noexcept { return index_; }

 private:
  int index_;
};

/// A closed-form formula hit a vanishing denominator; the inputs belong to a
/// special case that needs a dedicated solution path.
class SpecialCaseError : public Error {
 public:
  SpecialCaseError(std::string condition, const std::string& what)
      : Error("special case (" + condition + "): " + what), condition_(std::move(condition)) {}
  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

/// Two routes that must agree exactly did not. Indicates a bug, not bad input.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

class StepError : public Error {
 public:
  using Error::Error;
};

class EstimationError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class SingularJacobianError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<std::string> history)
      : Error(what), history_(std::move(history)) {}
  /// max |residual| per iteration, formatted with 6 significant digits.
  const std::vector<std::string>& history() const noexcept { return history_; }

 private:
  std::vector<std::string> history_;
};

}  // namespace lsrk
