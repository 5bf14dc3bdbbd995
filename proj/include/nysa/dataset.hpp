#pragma once

#include <cmath>

#include "nysa/types.hpp"

namespace nysa {

/// Standardized point set: rows are points, columns are features.
/// Each column has zero mean and unit (population) standard deviation;
/// constant input columns are mapped to all-zeros.
struct Dataset {
  Matrix points;        // n x d
  Vector feature_means; // d
  Vector feature_stds;  // d

  Index n() const { return points.rows(); }
  Index d() const { return points.cols(); }
};

/// Center and scale columns to zero mean / unit variance (divide by n).
/// Columns with zero variance become zero columns; their std is recorded
/// as 1 so the transform stays invertible entrywise.
inline Dataset standardize(const Matrix& raw) {
  const Index n = raw.rows();
  const Index d = raw.cols();
  if (n < 2) throw config_error("standardize: need at least 2 points");
  if (d < 1) throw config_error("standardize: need at least 1 feature");
  if (!raw.allFinite())
    throw data_error("standardize: input contains non-finite entries");

  Dataset out;
  out.feature_means = raw.colwise().mean();
  Matrix centered = raw.rowwise() - out.feature_means.transpose();
  out.feature_stds = (centered.array().square().colwise().sum() /
                      static_cast<double>(n))
                         .sqrt()
                         .matrix();
  for (Index j = 0; j < d; ++j) {
    if (out.feature_stds[j] == 0.0) {
      centered.col(j).setZero();
      out.feature_stds[j] = 1.0;
    } else {
      centered.col(j) /= out.feature_stds[j];
    }
  }
  out.points = std::move(centered);
  return out;
}

}  // namespace nysa
