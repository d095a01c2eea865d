#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace degest {

using Vec   = Eigen::VectorXd;
using Mat   = Eigen::MatrixXd;
using VecXi = Eigen::VectorXi;
using MatXi = Eigen::MatrixXi;

/// Invalid user input: bad flags, malformed files, out-of-range parameters.
/// The CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Computation that cannot proceed: prior/observation support conflict,
/// unreachable generator target, solver breakdown. CLI exit code 2.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace degest
