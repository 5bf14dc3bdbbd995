#pragma once

#include <limits>

#include "nysa/nystrom.hpp"

namespace nysa {

/// Greedy deterministic selection record. Entry j describes the step that
/// picked the (j+1)-th landmark: `sigma[j]` is the largest residual
/// diagonal value before the pick (the value at the picked index),
/// `residual_after[j]` the largest residual after it, and `bound[j]` the
/// spectral convergence bound for j+1 landmarks (NaN where undefined).
struct DasTrace {
  LandmarkSet landmarks;  // selection order, unweighted
  std::vector<double> sigma;
  std::vector<double> residual_after;
  std::vector<double> bound;
};

/// Convergence bound for the greedy residual after m landmarks:
///   2 ||P||_inf sqrt(spectrum[floor(m/2)]),
/// defined for 2 <= m < n (spectrum is 0-based descending).
inline double das_convergence_bound(const ProjectorKernel& p, Index m) {
  if (m < 2 || m >= p.n())
    throw config_error("das_convergence_bound: need 2 <= m < n");
  const double p_inf = p.entries.cwiseAbs().maxCoeff();
  return 2.0 * p_inf * std::sqrt(p.spectrum[m / 2]);
}

/// Deterministic adaptive sampling: repeatedly pick the index with the
/// largest residual diagonal. Implemented as a pivoted Cholesky of P so
/// each step costs O(n·k) instead of a fresh projection; ties break to
/// the lowest index.
inline DasTrace das_sample(const ProjectorKernel& p, Index k) {
  const Index n = p.n();
  if (k < 1 || k > n) throw config_error("das_sample: need 1 <= k <= n");
  DasTrace tr;
  tr.sigma.reserve(static_cast<std::size_t>(k));
  tr.residual_after.reserve(static_cast<std::size_t>(k));
  tr.bound.reserve(static_cast<std::size_t>(k));
  Vector d = p.entries.diagonal();
  Matrix t(n, k);
  const double p_inf = p.entries.cwiseAbs().maxCoeff();
  for (Index j = 0; j < k; ++j) {
    Index s = 0;
    double best = d[0];
    for (Index i = 1; i < n; ++i)
      if (d[i] > best) {
        best = d[i];
        s = i;
      }
    if (!(best > 0.0))
      throw numeric_error("das_sample: residual vanished before k landmarks");
    tr.sigma.push_back(best);
    tr.landmarks.indices.push_back(s);
    Vector col = p.entries.col(s);
    if (j > 0)
      col.noalias() -= t.leftCols(j) * t.row(s).head(j).transpose();
    col /= std::sqrt(best);
    t.col(j) = col;
    d -= col.cwiseAbs2();
    d[s] = 0.0;  // exact cancellation up to roundoff; pin it
    tr.residual_after.push_back(d.maxCoeff());
    const Index m = j + 1;
    tr.bound.push_back(m >= 2 && m < n
                           ? 2.0 * p_inf * std::sqrt(p.spectrum[m / 2])
                           : std::numeric_limits<double>::quiet_NaN());
  }
  return tr;
}

/// Randomized adaptive sampling record: one row per visited index.
struct RasTrace {
  LandmarkSet landmarks;          // accepted indices with probabilities
  std::vector<double> scores;     // s_i
  std::vector<double> clipped;    // min(1, (1+t) s_i)
  std::vector<double> probs;      // min(1, c * clipped)
  std::vector<std::uint8_t> accepted;
  double gamma = 0.0;
  double epsilon = 0.0;
  double c = 0.0;
  double t = 0.0;
};

namespace detail {

/// Single-pass adaptive sampling over any dense symmetric projector-like
/// matrix. The score at index i is the soft residual
///   s_i = (P_ii - v^T (S^T P S + eps I)^{-1} v) / eps,   v = S^T P e_i,
/// maintained through a growing Cholesky factor: accepting index i with
/// probability p appends column e_i/sqrt(p), which extends the factor by
/// one row whose diagonal entry is sqrt(w^2 eps s_i + eps) >= sqrt(eps).
/// Exactly one uniform draw is consumed per visited index so traces from
/// different score backends stay branch-aligned.
inline RasTrace ras_core(const Matrix& p, double gamma, double epsilon,
                         double c, double t, std::uint64_t rng_seed) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw config_error("ras_sample: epsilon must lie in (0, 1)");
  if (!(c > 0.0)) throw config_error("ras_sample: c must be positive");
  if (!(t >= 0.0)) throw config_error("ras_sample: t must be nonnegative");

  const Index n = p.rows();
  Rng rng(rng_seed);
  RasTrace tr;
  tr.gamma = gamma;
  tr.epsilon = epsilon;
  tr.c = c;
  tr.t = t;
  tr.scores.reserve(static_cast<std::size_t>(n));
  tr.clipped.reserve(static_cast<std::size_t>(n));
  tr.probs.reserve(static_cast<std::size_t>(n));
  tr.accepted.reserve(static_cast<std::size_t>(n));

  Matrix chol = Matrix::Zero(n, n);  // growing factor of S^T P S + eps I
  IndexList idx;
  std::vector<double> wts;
  for (Index i = 0; i < n; ++i) {
    const Index m = static_cast<Index>(idx.size());
    double resid = p(i, i);  // P_ii - ||L^{-1} v||^2
    Vector x;
    if (m > 0) {
      Vector v(m);
      for (Index j = 0; j < m; ++j)
        v[j] = wts[static_cast<std::size_t>(j)] *
               p(idx[static_cast<std::size_t>(j)], i);
      x = chol.topLeftCorner(m, m)
              .triangularView<Eigen::Lower>()
              .solve(v);
      resid -= x.squaredNorm();
    }
    const double s = resid > 0.0 ? resid / epsilon : 0.0;
    const double l = std::min(1.0, (1.0 + t) * s);
    const double prob = std::min(1.0, c * l);
    const double u = rng.u01();
    const bool take = u < prob;
    tr.scores.push_back(s);
    tr.clipped.push_back(l);
    tr.probs.push_back(prob);
    tr.accepted.push_back(take ? 1 : 0);
    if (!take) continue;
    const double w = 1.0 / std::sqrt(prob);
    if (m > 0) chol.row(m).head(m) = (w * x).transpose();
    chol(m, m) = std::sqrt(w * w * (resid > 0.0 ? resid : 0.0) + epsilon);
    idx.push_back(i);
    wts.push_back(w);
    tr.landmarks.indices.push_back(i);
    tr.landmarks.probabilities.push_back(prob);
  }
  return tr;
}

}  // namespace detail

inline RasTrace ras_sample(const ProjectorKernel& p, double epsilon, double c,
                           double t, std::uint64_t rng_seed) {
  return detail::ras_core(p.entries, p.gamma, epsilon, c, t, rng_seed);
}

/// Same control flow on an externally supplied dense projector matrix
/// (used to cross-check the feature-space path against its densification).
inline RasTrace ras_sample_dense(const Matrix& p, double gamma,
                                 double epsilon, double c, double t,
                                 std::uint64_t rng_seed) {
  if (p.rows() != p.cols())
    throw config_error("ras_sample_dense: matrix not square");
  return detail::ras_core(p, gamma, epsilon, c, t, rng_seed);
}

/// k distinct indices uniformly without replacement.
inline LandmarkSet uniform_sample(Index n, Index k, std::uint64_t rng_seed) {
  if (k < 1 || k > n) throw config_error("uniform_sample: need 1 <= k <= n");
  Rng rng(rng_seed);
  LandmarkSet out;
  out.indices = sample_without_replacement(rng, n, k);
  return out;
}

/// k distinct indices drawn sequentially with probability proportional to
/// the leverage scores, renormalizing after each draw.
inline LandmarkSet rls_sample(const ProjectorKernel& p, Index k,
                              std::uint64_t rng_seed) {
  const Index n = p.n();
  if (k < 1 || k > n) throw config_error("rls_sample: need 1 <= k <= n");
  Vector scores = p.entries.diagonal();
  Rng rng(rng_seed);
  LandmarkSet out;
  out.indices.reserve(static_cast<std::size_t>(k));
  for (Index j = 0; j < k; ++j) {
    const double total = scores.sum();
    if (!(total > 0.0))
      throw numeric_error("rls_sample: leverage mass exhausted");
    double target = rng.u01() * total;
    Index pick = -1;
    for (Index i = 0; i < n; ++i) {
      if (scores[i] <= 0.0) continue;
      target -= scores[i];
      if (target < 0.0) {
        pick = i;
        break;
      }
    }
    if (pick < 0)  // roundoff pushed the target past the last positive mass
      for (Index i = n - 1; i >= 0; --i)
        if (scores[i] > 0.0) {
          pick = i;
          break;
        }
    out.indices.push_back(pick);
    scores[pick] = 0.0;
  }
  return out;
}

/// Report for the spectral-premise kernel bound: if the sampled feature
/// gram stays within `t` of the full one in operator norm, the kernel
/// residual is dominated by a scaled Tikhonov filter of P.
struct SamplingGapReport {
  double premise_gap = 0.0;  // lambda_max(Psi Psi^T - Psi S S^T Psi^T)
  bool premise_holds = false;
  double min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
  double scale = 0.0;  // lambda_max of the kernel matrix

  bool holds(double rel_tol = 1e-8) const {
    return !premise_holds || min_eigenvalue >= -rel_tol * scale;
  }
};

inline SamplingGapReport check_sampling_gap_bound(const ProjectorKernel& p,
                                                  const KernelMatrix& kernel,
                                                  const LandmarkSet& s,
                                                  double epsilon, double t) {
  if (!(epsilon > 0.0))
    throw config_error("check_sampling_gap_bound: epsilon must be positive");
  if (!(t > 0.0 && t < 1.0 / (1.0 + epsilon)))
    throw config_error(
        "check_sampling_gap_bound: need 0 < t < 1/(1+epsilon)");
  s.validate(p.n());
  const Index n = p.n();

  // Psi = (B B^T + eps I)^{-1/2} B; B B^T is diagonal in the stored basis.
  const Matrix psi =
      (p.spectrum.array() + epsilon).rsqrt().matrix().asDiagonal() *
      p.factor_b;
  const Matrix psi_s = psi * s.sampling_matrix(n);
  const Matrix diff = psi * psi.transpose() - psi_s * psi_s.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> es(diff, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw numeric_error("check_sampling_gap_bound: eigensolver failed");

  SamplingGapReport report;
  report.premise_gap = es.eigenvalues().maxCoeff();
  report.premise_holds = report.premise_gap <= t;
  report.scale = p.kernel_spectrum[0];
  if (report.premise_holds) {
    const double ngamma = static_cast<double>(n) * p.gamma;
    const double shifted = epsilon * ngamma / (1.0 + epsilon);
    const Matrix lhs =
        kernel.entries - nystrom(kernel.entries, s, shifted).dense();
    const Matrix rhs = (epsilon * ngamma / (1.0 - t * (1.0 + epsilon))) *
                       tikhonov_filter(p, epsilon);
    Eigen::SelfAdjointEigenSolver<Matrix> eg(rhs - lhs,
                                             Eigen::EigenvaluesOnly);
    if (eg.info() != Eigen::Success)
      throw numeric_error("check_sampling_gap_bound: eigensolver failed");
    report.min_eigenvalue = eg.eigenvalues().minCoeff();
  }
  return report;
}

}  // namespace nysa
