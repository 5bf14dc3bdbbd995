#pragma once

#include <vector>

#include "nysa/projector.hpp"
#include "nysa/rng.hpp"

namespace nysa {

/// Factored regularized column approximation
///   L = A S (S^T A S + mu I)^{-1} S^T A
/// of a symmetric PSD matrix A, stored as the cross block A S plus the
/// Cholesky factor of the core. An empty landmark set represents L = 0.
struct NystromApprox {
  Matrix cross;                  // A S, n x m
  Eigen::LLT<Matrix> core_factor;
  LandmarkSet landmarks;
  double mu = 0.0;
  Index dim = 0;

  bool empty() const { return landmarks.empty(); }

  Matrix dense() const {
    if (empty()) return Matrix::Zero(dim, dim);
    return cross * core_factor.solve(cross.transpose());
  }

  /// Principal submatrix of the approximation, rows = cols = subset.
  Matrix dense_block(const IndexList& subset) const {
    const Index m = static_cast<Index>(subset.size());
    if (empty()) return Matrix::Zero(m, m);
    Matrix rows(m, cross.cols());
    for (Index a = 0; a < m; ++a)
      rows.row(a) = cross.row(subset[static_cast<std::size_t>(a)]);
    return rows * core_factor.solve(rows.transpose());
  }
};

inline NystromApprox nystrom(const Matrix& a, const LandmarkSet& landmarks,
                             double mu) {
  if (a.rows() != a.cols()) throw config_error("nystrom: matrix not square");
  if (mu < 0.0) throw config_error("nystrom: mu must be nonnegative");
  landmarks.validate(a.rows());

  NystromApprox out;
  out.landmarks = landmarks;
  out.mu = mu;
  out.dim = a.rows();
  if (landmarks.empty()) return out;

  const Index m = landmarks.size();
  out.cross.resize(a.rows(), m);
  Matrix core(m, m);
  for (Index j = 0; j < m; ++j)
    out.cross.col(j) = landmarks.weight(static_cast<std::size_t>(j)) *
                       a.col(landmarks.indices[static_cast<std::size_t>(j)]);
  // core = S^T A S: landmark rows of the cross block, reweighted.
  for (Index i = 0; i < m; ++i)
    core.row(i) = landmarks.weight(static_cast<std::size_t>(i)) *
                  out.cross.row(landmarks.indices[static_cast<std::size_t>(i)]);
  core = (0.5 * (core + core.transpose())).eval();
  core.diagonal().array() += mu;

  Eigen::LLT<Matrix> llt(core);
  if (llt.info() != Eigen::Success) {
    if (mu == 0.0)
      throw numeric_error(
          "nystrom: core matrix is singular with mu = 0; pass a small "
          "positive mu (e.g. 1e-12) to stabilize");
    out.core_factor = detail::llt_with_jitter(core, "nystrom core");
    return out;
  }
  out.core_factor = std::move(llt);
  return out;
}

/// Relative spectral-norm error ||A - L|| / ||A|| for symmetric A.
inline double error_operator_norm(const Matrix& a,
                                  const NystromApprox& approx) {
  const Matrix resid = a - approx.dense();
  Eigen::SelfAdjointEigenSolver<Matrix> er(resid, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Matrix> ea(a, Eigen::EigenvaluesOnly);
  if (er.info() != Eigen::Success || ea.info() != Eigen::Success)
    throw numeric_error("error_operator_norm: eigensolver failed");
  const double num = er.eigenvalues().cwiseAbs().maxCoeff();
  const double den = ea.eigenvalues().cwiseAbs().maxCoeff();
  if (den == 0.0) throw config_error("error_operator_norm: zero matrix");
  return num / den;
}

inline double error_operator_norm(const KernelMatrix& kernel,
                                  const NystromApprox& approx) {
  return error_operator_norm(kernel.entries, approx);
}

/// Max absolute entry of the residual A - L.
inline double error_max_norm(const Matrix& a, const NystromApprox& approx) {
  return (a - approx.dense()).cwiseAbs().maxCoeff();
}

/// Frobenius errors over random principal submatrices: the kernel block is
/// rebuilt from the points so the full Gram matrix is not required.
inline std::vector<double> error_frobenius_subsets(
    const KernelSpec& spec, const Dataset& data, const NystromApprox& approx,
    Index subset_size, int num_subsets, std::uint64_t rng_seed) {
  if (subset_size < 1 || subset_size > data.n())
    throw config_error("error_frobenius_subsets: bad subset size");
  if (num_subsets < 1)
    throw config_error("error_frobenius_subsets: need at least one subset");
  Rng rng(rng_seed);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(num_subsets));
  for (int r = 0; r < num_subsets; ++r) {
    const IndexList subset =
        sample_without_replacement(rng, data.n(), subset_size);
    const Matrix kb = kernel_cross(spec, data, subset, subset);
    out.push_back((kb - approx.dense_block(subset)).norm());
  }
  return out;
}

/// PSD-gap report for the bound that transfers a projector residual to a
/// kernel residual: scale*(P - L_proj) - (K - L_kern) should be PSD, where
/// scale = lambda_max(K) + n*gamma and the projector approximation uses
/// the rescaled regularizer mu/scale.
struct PsdGapReport {
  double min_eigenvalue = 0.0;  // of the gap matrix
  double scale = 0.0;           // lambda_max of the reference kernel
  bool holds(double rel_tol = 1e-8) const {
    return min_eigenvalue >= -rel_tol * scale;
  }
};

inline PsdGapReport check_kernel_residual_bound(const KernelMatrix& kernel,
                                                const ProjectorKernel& p,
                                                const LandmarkSet& landmarks,
                                                double mu) {
  if (!(mu > 0.0))
    throw config_error("check_kernel_residual_bound: mu must be positive");
  const double lam_max = p.kernel_spectrum[0];
  const double factor =
      lam_max + static_cast<double>(p.n()) * p.gamma;
  const Matrix kern_resid =
      kernel.entries - nystrom(kernel.entries, landmarks, mu).dense();
  const Matrix proj_resid =
      p.entries - nystrom(p.entries, landmarks, mu / factor).dense();
  const Matrix gap = factor * proj_resid - kern_resid;
  Eigen::SelfAdjointEigenSolver<Matrix> es(gap, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw numeric_error("check_kernel_residual_bound: eigensolver failed");
  return PsdGapReport{es.eigenvalues().minCoeff(), lam_max};
}

}  // namespace nysa
