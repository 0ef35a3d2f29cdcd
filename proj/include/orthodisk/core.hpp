#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace orthodisk {

template <typename Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;

using Point = Point2<double>;

// Columns are points.
template <typename Scalar>
using Points2 = Eigen::Matrix<Scalar, 2, Eigen::Dynamic>;

using PointMatrix = Points2<double>;

class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error("invalid_argument", what) {}
};

class InsufficientPoints : public Error {
 public:
  explicit InsufficientPoints(const std::string& what)
      : Error("insufficient_points", what) {}
};

// Raised when a Bessel table does not reach a requested distance.
class OutOfRange : public Error {
 public:
  OutOfRange(const std::string& what, int required_n_max)
      : Error("out_of_range", what), required_n_max_(required_n_max) {}

  int required_n_max() const noexcept { return required_n_max_; }

 private:
  int required_n_max_;
};

class InternalConsistency : public Error {
 public:
  explicit InternalConsistency(const std::string& what)
      : Error("internal_consistency", what) {}
};

}  // namespace orthodisk
