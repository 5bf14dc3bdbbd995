#pragma once

#include <optional>

#include "nysa/nystrom.hpp"

namespace nysa {

/// Evaluation request: the Christoffel value at point z under the
/// constraint that the function vanishes on the exclusion set.
/// `soft_epsilon`, when present, switches to the relaxed variant that
/// penalizes (rather than enforces) the vanishing constraints.
struct ChristoffelQuery {
  Index z = 0;
  LandmarkSet exclusion;  // indices only; probabilities ignored
  std::optional<double> soft_epsilon;

  void validate(Index n) const {
    if (z < 0 || z >= n) throw config_error("ChristoffelQuery: z out of range");
    exclusion.validate(n);
    for (Index s : exclusion.indices)
      if (s == z)
        throw config_error("ChristoffelQuery: z inside the exclusion set");
    if (soft_epsilon && !(*soft_epsilon > 0.0))
      throw config_error("ChristoffelQuery: soft_epsilon must be positive");
  }
};

namespace detail {

// P restricted to the exclusion set (rows/cols C) and the column P_{C,z}.
inline void christoffel_slices(const ProjectorKernel& p, const LandmarkSet& c,
                               Index z, Matrix& pcc, Vector& pcz) {
  const Index m = c.size();
  pcc.resize(m, m);
  pcz.resize(m);
  for (Index a = 0; a < m; ++a) {
    const Index ia = c.indices[static_cast<std::size_t>(a)];
    pcz[a] = p.entries(ia, z);
    for (Index b = 0; b < m; ++b)
      pcc(a, b) = p.entries(ia, c.indices[static_cast<std::size_t>(b)]);
  }
}

}  // namespace detail

/// Inverse Christoffel value via the Schur-complement form:
///   n^{-1} [P - P_C P_CC^{-1} P_C^T]_{zz}.
/// This is the production path; the determinant and projection forms below
/// exist to cross-validate it.
inline double christoffel_inverse(const ProjectorKernel& p,
                                  const ChristoffelQuery& q) {
  q.validate(p.n());
  const double inv_n = 1.0 / static_cast<double>(p.n());
  if (q.exclusion.empty()) return inv_n * p.entries(q.z, q.z);
  Matrix pcc;
  Vector pcz;
  detail::christoffel_slices(p, q.exclusion, q.z, pcc, pcz);
  const auto llt = detail::llt_with_jitter(pcc, "christoffel_inverse");
  return inv_n * (p.entries(q.z, q.z) - pcz.dot(llt.solve(pcz)));
}

/// Determinant-ratio form: n^{-1} det(P_{C+z,C+z}) / det(P_CC), evaluated
/// with log-determinants to delay underflow (every eigenvalue of P is < 1,
/// so raw determinants vanish quickly as |C| grows).
inline double christoffel_inverse_det(const ProjectorKernel& p,
                                      const ChristoffelQuery& q) {
  q.validate(p.n());
  if (q.exclusion.empty())
    throw config_error("christoffel_inverse_det: exclusion set is empty");
  const Index m = q.exclusion.size();
  Matrix big(m + 1, m + 1);  // exclusion block bordered by row/col z
  Matrix pcc;
  Vector pcz;
  detail::christoffel_slices(p, q.exclusion, q.z, pcc, pcz);
  big.topLeftCorner(m, m) = pcc;
  big.topRightCorner(m, 1) = pcz;
  big.bottomLeftCorner(1, m) = pcz.transpose();
  big(m, m) = p.entries(q.z, q.z);

  Eigen::LLT<Matrix> llt_c(pcc);
  if (llt_c.info() != Eigen::Success)
    throw numeric_error(
        "christoffel_inverse_det: exclusion block is numerically singular; "
        "use the Schur-complement path");
  Eigen::LLT<Matrix> llt_b(big);
  if (llt_b.info() != Eigen::Success)
    throw numeric_error(
        "christoffel_inverse_det: bordered block is numerically singular; "
        "use the Schur-complement path");
  const double logdet_c =
      2.0 * llt_c.matrixLLT().diagonal().array().log().sum();
  const double logdet_b =
      2.0 * llt_b.matrixLLT().diagonal().array().log().sum();
  return std::exp(logdet_b - logdet_c) / static_cast<double>(p.n());
}

/// Projection form: n^{-1} ||b_z - proj_{span(B_C)} b_z||^2 where b_i is
/// the i-th column of the factor B. Orthonormal basis from a QR of B_C.
inline double christoffel_inverse_projection(const ProjectorKernel& p,
                                             const ChristoffelQuery& q) {
  q.validate(p.n());
  const double inv_n = 1.0 / static_cast<double>(p.n());
  const Vector bz = p.factor_b.col(q.z);
  if (q.exclusion.empty()) return inv_n * bz.squaredNorm();
  const Index m = q.exclusion.size();
  Matrix bc(p.n(), m);
  for (Index j = 0; j < m; ++j)
    bc.col(j) = p.factor_b.col(q.exclusion.indices[static_cast<std::size_t>(j)]);
  const Eigen::HouseholderQR<Matrix> qr(bc);
  const Matrix thin_q = qr.householderQ() * Matrix::Identity(p.n(), m);
  const Vector resid = bz - thin_q * (thin_q.transpose() * bz);
  return inv_n * resid.squaredNorm();
}

/// Soft-constraint variant: n^{-1} [P - L_{eps,C}(P)]_{zz} with the
/// exclusion columns unweighted. Converges to christoffel_inverse as
/// eps -> 0 and to n^{-1} P_zz as eps -> infinity.
inline double christoffel_inverse_soft(const ProjectorKernel& p,
                                       const ChristoffelQuery& q) {
  q.validate(p.n());
  if (!q.soft_epsilon)
    throw config_error("christoffel_inverse_soft: soft_epsilon not set");
  const double eps = *q.soft_epsilon;
  const double inv_n = 1.0 / static_cast<double>(p.n());
  if (q.exclusion.empty()) return inv_n * p.entries(q.z, q.z);
  Matrix pcc;
  Vector pcz;
  detail::christoffel_slices(p, q.exclusion, q.z, pcc, pcz);
  pcc.diagonal().array() += eps;
  const auto llt = detail::llt_with_jitter(pcc, "christoffel_inverse_soft");
  return inv_n * (p.entries(q.z, q.z) - pcz.dot(llt.solve(pcz)));
}

/// Variational oracle: solves the equality-constrained quadratic program
/// behind the Christoffel value by a dense KKT system. Unweighted queries
/// minimize a^T M a, M = n * K (K + n*gamma*I), subject to (K a)_z = 1 and
/// (K a)_s = 0 on the exclusion set. When `weights` is given, the objective
/// becomes n * (K diag(w) K + n*gamma*K) with only the z constraint (the
/// exclusion then enters through the weights). The scaling makes the value
/// the exact reciprocal of christoffel_inverse; alpha does not depend on it.
/// Test oracle only: O((n+|C|)^3) dense solve, capped at n <= 200.
struct QpSolution {
  double value = 0.0;  // optimal objective = Christoffel value
  Vector alpha;        // optimal coefficients
};

inline QpSolution qp_oracle(const KernelMatrix& kernel, double gamma,
                            const ChristoffelQuery& q,
                            const std::optional<Vector>& weights = {}) {
  const Index n = kernel.n();
  if (n > 200) throw config_error("qp_oracle: oracle capped at n = 200");
  if (!(gamma > 0.0)) throw config_error("qp_oracle: gamma must be positive");
  q.validate(n);
  if (weights && weights->size() != n)
    throw config_error("qp_oracle: weights length mismatch");

  const Matrix& k = kernel.entries;
  const double shift = static_cast<double>(n) * gamma;
  // Objective scaled so the optimal value is the exact reciprocal of the
  // closed-form inverse (which carries a 1/n prefactor); alpha is invariant
  // under this scaling.
  Matrix m(n, n);
  if (weights)
    m = static_cast<double>(n) * (k * weights->asDiagonal() * k + shift * k);
  else
    m = static_cast<double>(n) * (k * k + shift * k);
  m = (0.5 * (m + m.transpose())).eval();

  // Constraint rows: (K a)_z = 1 first, then (K a)_s = 0 per exclusion
  // index (hard-constrained queries only).
  const Index nc = 1 + (weights ? Index{0} : q.exclusion.size());
  Matrix a_cons(nc, n);
  a_cons.row(0) = k.row(q.z);
  if (!weights)
    for (Index j = 1; j < nc; ++j)
      a_cons.row(j) =
          k.row(q.exclusion.indices[static_cast<std::size_t>(j - 1)]);

  Matrix kkt = Matrix::Zero(n + nc, n + nc);
  kkt.topLeftCorner(n, n) = 2.0 * m;
  kkt.topRightCorner(n, nc) = a_cons.transpose();
  kkt.bottomLeftCorner(nc, n) = a_cons;
  Vector rhs = Vector::Zero(n + nc);
  rhs[n] = 1.0;

  const Eigen::FullPivLU<Matrix> lu(kkt);
  if (!lu.isInvertible())
    throw numeric_error("qp_oracle: KKT system is singular");
  const Vector sol = lu.solve(rhs);
  QpSolution out;
  out.alpha = sol.head(n);
  out.value = out.alpha.dot(m * out.alpha);
  return out;
}

}  // namespace nysa
