#pragma once

#include <iostream>

#include "nysa/kernel.hpp"
#include "nysa/landmarks.hpp"

namespace nysa {

namespace detail {

/// Cholesky with the shared fallback policy: one retry after adding
/// diagonal jitter scaled by the mean diagonal, logged to stderr.
inline Eigen::LLT<Matrix> llt_with_jitter(Matrix a, const char* what) {
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() == Eigen::Success) return llt;
  const double jitter =
      kJitterScale * (a.rows() > 0 ? a.diagonal().cwiseAbs().mean() : 0.0);
  std::cerr << "nysa: " << what << ": Cholesky failed, retrying with jitter "
            << jitter << "\n";
  a.diagonal().array() += jitter;
  llt.compute(a);
  if (llt.info() != Eigen::Success)
    throw numeric_error(std::string(what) +
                        ": Cholesky failed beyond jitter policy");
  return llt;
}

}  // namespace detail

/// Smoothing projector P = K(K + n*gamma*I)^{-1}, built from one
/// eigendecomposition of K so that symmetry is exact and the factor B
/// (with B^T B = P) and the filtered spectrum come for free.
struct ProjectorKernel {
  Matrix entries;         // P, n x n symmetric
  double gamma = 0.0;
  Matrix factor_b;        // B = diag(sqrt(spectrum)) * V^T
  Vector spectrum;        // eigenvalues of P, descending, in [0, 1)
  Vector kernel_spectrum; // eigenvalues of K, descending

  Index n() const { return entries.rows(); }
};

/// Construction from a raw symmetric PSD matrix.
inline ProjectorKernel projector_kernel_of(const Matrix& k, double gamma) {
  if (!(gamma > 0.0))
    throw config_error("projector_kernel: gamma must be positive");
  const Index n = k.rows();
  Eigen::SelfAdjointEigenSolver<Matrix> es(k);
  if (es.info() != Eigen::Success)
    throw numeric_error("projector_kernel: eigendecomposition failed");
  const Vector lam = es.eigenvalues();  // ascending
  const double lam_max = lam[n - 1];
  const double shift = static_cast<double>(n) * gamma;

  ProjectorKernel out;
  out.gamma = gamma;
  out.kernel_spectrum.resize(n);
  out.spectrum.resize(n);
  Matrix v(n, n);  // eigenvectors reordered to descending eigenvalues
  for (Index i = 0; i < n; ++i) {
    double l = lam[n - 1 - i];
    if (l < 0.0) {
      if (l < -1e-10 * std::max(1.0, lam_max))
        throw numeric_error(
            "projector_kernel: matrix is not positive semidefinite");
      l = 0.0;  // numerically zero mode
    }
    out.kernel_spectrum[i] = l;
    out.spectrum[i] = l / (l + shift);
    v.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  out.factor_b =
      out.spectrum.array().sqrt().matrix().asDiagonal() * v.transpose();
  out.entries = v * out.spectrum.asDiagonal() * v.transpose();
  out.entries = (0.5 * (out.entries + out.entries.transpose())).eval();
  return out;
}

inline ProjectorKernel projector_kernel(const KernelMatrix& kernel,
                                        double gamma) {
  return projector_kernel_of(kernel.entries, gamma);
}

/// Ridge leverage scores: the diagonal of P.
inline Vector leverage_scores(const ProjectorKernel& p) {
  return p.entries.diagonal();
}

/// Effective dimension: trace(P).
inline double effective_dimension(const ProjectorKernel& p) {
  return p.entries.trace();
}

/// Sum of lambda/(lambda + shift) over an eigenvalue list.
inline double tikhonov_trace(const Vector& eigs, double shift) {
  return (eigs.array() / (eigs.array() + shift)).sum();
}

/// Effective dimension of K at regularization gamma without building P.
inline double effective_dimension(const KernelMatrix& kernel, double gamma) {
  return tikhonov_trace(kernel.spectrum(),
                        static_cast<double>(kernel.n()) * gamma);
}

/// Tikhonov filter applied to P itself: P(P + eps*I)^{-1}. Shares P's
/// eigenvectors, so it reduces to B^T diag(1/(spectrum+eps)) B.
inline Matrix tikhonov_filter(const ProjectorKernel& p, double eps) {
  if (!(eps > 0.0)) throw config_error("tikhonov_filter: eps must be positive");
  return p.factor_b.transpose() *
         (p.spectrum.array() + eps).inverse().matrix().asDiagonal() *
         p.factor_b;
}

/// diag(P - P_C P_CC^{-1} P_C^T): per-point residual after projecting out
/// the selected columns. Selection ignores landmark probabilities (the
/// column weights cancel in the projection).
inline Vector residual_diagonal(const ProjectorKernel& p,
                                const LandmarkSet& landmarks) {
  landmarks.validate(p.n());
  Vector diag = p.entries.diagonal();
  if (landmarks.empty()) return diag;
  const Index m = landmarks.size();
  Matrix pcc(m, m);
  Matrix pcx(m, p.n());
  for (Index a = 0; a < m; ++a) {
    pcx.row(a) = p.entries.row(landmarks.indices[static_cast<std::size_t>(a)]);
    for (Index b = 0; b < m; ++b)
      pcc(a, b) = p.entries(landmarks.indices[static_cast<std::size_t>(a)],
                            landmarks.indices[static_cast<std::size_t>(b)]);
  }
  const auto llt = detail::llt_with_jitter(pcc, "residual_diagonal");
  const Matrix solved = llt.solve(pcx);
  diag -= (pcx.array() * solved.array()).colwise().sum().matrix().transpose();
  return diag;
}

}  // namespace nysa
