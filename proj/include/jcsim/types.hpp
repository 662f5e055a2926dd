#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace jcsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Field-state tail mass exceeded the policy tolerance at the maximum
/// escalated truncation size.
class TruncationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Numerical breakdown: non-Hermitian operator beyond tolerance,
/// eigensolver failure, overflow, or non-finite result.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed scenario config (syntax or unknown key).
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

using WarningHandler = std::function<void(const std::string&)>;

/// Replace the process-wide warning sink (default writes to stderr).
/// Returns the previous handler.
WarningHandler set_warning_handler(WarningHandler handler);

/// Emit a non-fatal diagnostic through the installed handler.
void warn(const std::string& message);

}  // namespace jcsim
