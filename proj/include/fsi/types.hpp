#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "fsi/dual.hpp"

namespace fsi {

template <class T>
using Vec3T = Eigen::Matrix<T, 3, 1>;
template <class T>
using Mat3T = Eigen::Matrix<T, 3, 3>;
template <class T>
using Mat2T = Eigen::Matrix<T, 2, 2>;

using Vec3 = Vec3T<double>;
using Mat3 = Mat3T<double>;
using Mat2 = Mat2T<double>;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// Error hierarchy. Every failure raised by the library derives from Error.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ContactViolation : Error { using Error::Error; };
struct InvalidCutoff : Error { using Error::Error; };
struct DegenerateMap : Error { using Error::Error; };
struct EigensolverFailure : Error { using Error::Error; };
struct InvalidSlipLength : Error { using Error::Error; };
struct SingularSystem : Error { using Error::Error; };
struct WidthSearchFailure : Error { using Error::Error; };
struct ZeroDenominator : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct ParseError : Error {
  ParseError(int line, const std::string& key, const std::string& what)
      : Error("line " + std::to_string(line) + " (" + key + "): " + what), line(line), key(key) {}
  int line;
  std::string key;
};

}  // namespace fsi
