#pragma once

#include <cmath>
#include <thread>

#include "nysa/dataset.hpp"
#include "nysa/types.hpp"

namespace nysa {

enum class KernelFamily { GaussianRBF, Laplace };

/// Shift-invariant kernel with unit diagonal:
///   GaussianRBF: k(x,y) = exp(-||x-y||^2 / (2 sigma^2))
///   Laplace:     k(x,y) = exp(-||x-y|| / sigma)
struct KernelSpec {
  KernelFamily family = KernelFamily::GaussianRBF;
  double bandwidth = 1.0;  // sigma > 0

  void validate() const {
    if (!(bandwidth > 0.0))
      throw config_error("KernelSpec: bandwidth must be positive");
  }
};

inline const char* kernel_family_name(KernelFamily f) {
  return f == KernelFamily::GaussianRBF ? "gaussian" : "laplace";
}

inline double kernel_eval(const KernelSpec& spec,
                          const Eigen::Ref<const Vector>& x,
                          const Eigen::Ref<const Vector>& y) {
  spec.validate();
  if (x.size() != y.size())
    throw config_error("kernel_eval: dimension mismatch");
  const double sq = (x - y).squaredNorm();
  if (spec.family == KernelFamily::GaussianRBF)
    return std::exp(-sq / (2.0 * spec.bandwidth * spec.bandwidth));
  return std::exp(-std::sqrt(sq) / spec.bandwidth);
}

/// Dense symmetric kernel Gram matrix with its generating spec.
struct KernelMatrix {
  Matrix entries;  // n x n, unit diagonal
  KernelSpec spec;

  Index n() const { return entries.rows(); }

  /// Eigenvalues in descending order.
  Vector spectrum() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(entries,
                                             Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
      throw numeric_error("KernelMatrix::spectrum: eigensolver failed");
    return es.eigenvalues().reverse();
  }

  double lambda_max() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(entries,
                                             Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
      throw numeric_error("KernelMatrix::lambda_max: eigensolver failed");
    return es.eigenvalues().maxCoeff();
  }
};

namespace detail {

// Row-parallel fill. Every entry is computed independently from the points,
// so results do not depend on the number of threads.
template <typename Fill>
inline void parallel_rows(Index n, const Fill& fill) {
  const unsigned hw = std::thread::hardware_concurrency();
  const unsigned workers =
      n >= 256 && hw > 1 ? std::min<unsigned>(hw, 8) : 1;
  if (workers == 1) {
    for (Index i = 0; i < n; ++i) fill(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (Index i = static_cast<Index>(w); i < n;
           i += static_cast<Index>(workers))
        fill(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace detail

inline KernelMatrix kernel_matrix(const KernelSpec& spec,
                                  const Dataset& data) {
  spec.validate();
  const Index n = data.n();
  KernelMatrix out;
  out.spec = spec;
  try {
    out.entries.resize(n, n);
  } catch (const std::bad_alloc&) {
    throw config_error("kernel_matrix: cannot allocate " +
                       std::to_string(n) + "x" + std::to_string(n) +
                       " matrix; reduce the dataset or use the feature path");
  }
  Matrix& K = out.entries;
  const Matrix& X = data.points;
  detail::parallel_rows(n, [&](Index i) {
    K(i, i) = 1.0;
    for (Index j = 0; j < i; ++j) {
      const double v = kernel_eval(spec, X.row(i).transpose(),
                                   X.row(j).transpose());
      K(i, j) = v;
      K(j, i) = v;
    }
  });
  return out;
}

/// Rectangular kernel block K[rows, cols] computed directly from points;
/// the full Gram matrix is never formed.
inline Matrix kernel_cross(const KernelSpec& spec, const Dataset& data,
                           const IndexList& rows, const IndexList& cols) {
  spec.validate();
  const Index n = data.n();
  for (Index r : rows)
    if (r < 0 || r >= n) throw config_error("kernel_cross: row index out of range");
  for (Index c : cols)
    if (c < 0 || c >= n) throw config_error("kernel_cross: col index out of range");
  Matrix out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  const Matrix& X = data.points;
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b)
      out(static_cast<Index>(a), static_cast<Index>(b)) =
          rows[a] == cols[b]
              ? 1.0
              : kernel_eval(spec, X.row(rows[a]).transpose(),
                            X.row(cols[b]).transpose());
  return out;
}

}  // namespace nysa
