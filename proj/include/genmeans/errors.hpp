#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace genmeans {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Zero diagonal entry met while inverting a triangle.
class SingularError : public Error {
 public:
  explicit SingularError(Eigen::Index row)
      : Error("zero diagonal entry at row " + std::to_string(row)), row_(row) {}
  Eigen::Index row() const { return row_; }

 private:
  Eigen::Index row_;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Aggregated parameter validation report; never thrown with an empty list.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "invalid parameters:";
    for (const auto& s : v) out += " [" + s + "]";
    return out;
  }
  std::vector<std::string> violations_;
};

class GuardError : public Error {
 public:
  using Error::Error;
};

/// An input declared (or required) to have zero tail does not.
class TailError : public Error {
 public:
  using Error::Error;
};

/// Two computations that must agree did not.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace genmeans
