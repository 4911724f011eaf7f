// types.hpp
// Shared scalar/matrix aliases and error types for the fermiqit library.

#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fermiqit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Global mode label. Labels are positive and carried in ascending order.
using Mode = int;
using ModeList = std::vector<Mode>;

inline constexpr double kDefaultTol = 1e-10;

// Violation of the parity super-selection structure (bad state, operator
// without definite block form, non-positive Choi state, ...).
class SsrError : public std::runtime_error {
 public:
  explicit SsrError(const std::string& what) : std::runtime_error(what) {}
};

// Mode cap for dense representations. Default 10 (1024-dimensional spaces);
// the FERMIQIT_MAX_MODES environment variable overrides it.
int max_modes();

}  // namespace fermiqit
