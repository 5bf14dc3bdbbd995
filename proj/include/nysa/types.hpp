#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace nysa {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;
using IndexList = std::vector<Index>;

/// Invalid or malformed input data (non-finite entries, unparsable files).
class data_error : public std::runtime_error {
 public:
  explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid configuration or arguments supplied by the caller.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure (singular factorization, lost positive definiteness).
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {

// Relative jitter added to the diagonal of a principal submatrix whose
// Cholesky factorization fails. Scaled by the mean diagonal of the matrix.
inline constexpr double kJitterScale = 1e-12;

}  // namespace detail

}  // namespace nysa
