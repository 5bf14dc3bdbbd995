#pragma once

#include <fstream>

#include "nysa/samplers.hpp"

namespace nysa {

/// Random trigonometric feature map z(x) = scale * cos(W x + b) whose
/// inner products approximate the gaussian kernel in expectation.
struct RffMap {
  Matrix frequencies;  // n_F x d, iid normal with std 1/bandwidth
  Vector phases;       // n_F, iid uniform on [0, 2*pi)
  double scale = 0.0;  // sqrt(2 / n_F)

  Index n_features() const { return frequencies.rows(); }
  Index dim() const { return frequencies.cols(); }
};

/// Draw a feature map for the gaussian kernel. Draw order is fixed
/// (frequencies row-major, then phases) so a seed pins the map exactly.
inline RffMap rff_build(const KernelSpec& spec, Index d, Index n_f,
                        std::uint64_t rng_seed) {
  spec.validate();
  if (spec.family != KernelFamily::GaussianRBF)
    throw config_error(
        "rff_build: feature maps are only implemented for the gaussian "
        "family");
  if (d < 1 || n_f < 1)
    throw config_error("rff_build: need d >= 1 and n_f >= 1");
  Rng rng(rng_seed);
  RffMap map;
  map.frequencies.resize(n_f, d);
  for (Index i = 0; i < n_f; ++i)
    for (Index j = 0; j < d; ++j)
      map.frequencies(i, j) = rng.normal() / spec.bandwidth;
  map.phases.resize(n_f);
  for (Index i = 0; i < n_f; ++i)
    map.phases[i] = rng.u01() * 6.283185307179586477;
  map.scale = std::sqrt(2.0 / static_cast<double>(n_f));
  return map;
}

/// Feature row for one point.
inline Vector rff_features_point(const RffMap& map,
                                 const Eigen::Ref<const Vector>& x) {
  if (x.size() != map.dim())
    throw config_error("rff_features_point: dimension mismatch");
  return (((map.frequencies * x) + map.phases).array().cos() * map.scale)
      .matrix();
}

/// n x n_F feature matrix F with row i = z(x_i), so F F^T approximates K.
inline Matrix featurize(const RffMap& map, const Dataset& data) {
  if (data.d() != map.dim())
    throw config_error("featurize: dataset dimension mismatch");
  Matrix f(data.n(), map.n_features());
  detail::parallel_rows(data.n(), [&](Index i) {
    f.row(i) = (((map.frequencies * data.points.row(i).transpose()) +
                 map.phases)
                    .array()
                    .cos() *
                map.scale)
        .transpose();
  });
  return f;
}

/// Binary cache for feature matrices: 8-byte magic, int64 rows/cols,
/// little-endian row-major doubles.
inline void write_feature_cache(const std::string& path, const Matrix& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw data_error("cannot write feature cache: " + path);
  const char magic[8] = {'N', 'Y', 'S', 'A', 'F', 'T', '0', '1'};
  out.write(magic, 8);
  const std::int64_t dims[2] = {f.rows(), f.cols()};
  out.write(reinterpret_cast<const char*>(dims), sizeof(dims));
  for (Index i = 0; i < f.rows(); ++i)
    out.write(reinterpret_cast<const char*>(f.row(i).eval().data()),
              static_cast<std::streamsize>(sizeof(double)) * f.cols());
}

inline Matrix read_feature_cache(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("cannot open feature cache: " + path);
  char magic[8];
  in.read(magic, 8);
  if (!in || std::string(magic, 8) != "NYSAFT01")
    throw data_error("feature cache has wrong magic: " + path);
  std::int64_t dims[2];
  in.read(reinterpret_cast<char*>(dims), sizeof(dims));
  if (!in || dims[0] < 1 || dims[1] < 1)
    throw data_error("feature cache has bad dimensions: " + path);
  Matrix f(dims[0], dims[1]);
  std::vector<double> row(static_cast<std::size_t>(dims[1]));
  for (std::int64_t i = 0; i < dims[0]; ++i) {
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(sizeof(double)) *
                static_cast<std::streamsize>(dims[1]));
    if (!in) throw data_error("feature cache truncated: " + path);
    for (std::int64_t j = 0; j < dims[1]; ++j)
      f(i, j) = row[static_cast<std::size_t>(j)];
  }
  return f;
}

/// Feature-space projector generator: exposes the diagonal and single
/// columns of P = F (F^T F + n*gamma*I)^{-1} F^T from one factorization
/// of the n_F x n_F core, without forming P.
class RffProjector {
 public:
  RffProjector(Matrix f, double gamma) : f_(std::move(f)), gamma_(gamma) {
    if (!(gamma_ > 0.0))
      throw config_error("RffProjector: gamma must be positive");
    Matrix core = f_.transpose() * f_;
    core.diagonal().array() += static_cast<double>(f_.rows()) * gamma_;
    core_ = detail::llt_with_jitter(std::move(core), "RffProjector core");
    const Matrix half = core_.matrixL().solve(f_.transpose());  // n_F x n
    diag_ = half.colwise().squaredNorm().transpose();
  }

  Index n() const { return f_.rows(); }
  double gamma() const { return gamma_; }
  const Matrix& features() const { return f_; }
  const Vector& diag() const { return diag_; }

  /// Column P e_i.
  Vector column(Index i) const {
    if (i < 0 || i >= n()) throw config_error("RffProjector: bad column");
    return f_ * core_.solve(f_.row(i).transpose());
  }

  /// Core solve against one feature row (shared by the sampler below).
  Vector solve_feature(Index i) const {
    return core_.solve(f_.row(i).transpose());
  }

  /// Dense P, for tests and desk-scale checks only.
  Matrix dense() const { return f_ * core_.solve(f_.transpose()); }

 private:
  Matrix f_;
  double gamma_ = 0.0;
  Eigen::LLT<Matrix> core_;
  Vector diag_;
};

/// Adaptive sampling against the feature-space projector. Control flow is
/// identical to ras_sample (one uniform draw per index); scores read the
/// generator's diagonal and columns, and the core inverse
/// (S^T P S + eps I)^{-1} is maintained by block inverse updates on each
/// acceptance, recomputed from scratch every 256 acceptances to stop
/// drift.
inline RasTrace approx_ras(const RffProjector& proj, double epsilon, double c,
                           double t, std::uint64_t rng_seed) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw config_error("approx_ras: epsilon must lie in (0, 1)");
  if (!(c > 0.0)) throw config_error("approx_ras: c must be positive");
  if (!(t >= 0.0)) throw config_error("approx_ras: t must be nonnegative");

  const Index n = proj.n();
  Rng rng(rng_seed);
  RasTrace tr;
  tr.gamma = proj.gamma();
  tr.epsilon = epsilon;
  tr.c = c;
  tr.t = t;
  tr.scores.reserve(static_cast<std::size_t>(n));
  tr.clipped.reserve(static_cast<std::size_t>(n));
  tr.probs.reserve(static_cast<std::size_t>(n));
  tr.accepted.reserve(static_cast<std::size_t>(n));

  Matrix inv;                 // (S^T P S + eps I)^{-1}, m x m
  Matrix solved(proj.features().cols(), 0);  // columns (F^T F + n g I)^{-1} f_s
  IndexList idx;
  std::vector<double> wts;
  int since_rebuild = 0;

  const auto rebuild = [&]() {
    const Index m = static_cast<Index>(idx.size());
    Matrix core(m, m);
    for (Index a = 0; a < m; ++a)
      for (Index b = 0; b < m; ++b)
        core(a, b) = wts[static_cast<std::size_t>(a)] *
                     wts[static_cast<std::size_t>(b)] *
                     proj.features()
                         .row(idx[static_cast<std::size_t>(a)])
                         .dot(solved.col(b));
    core = (0.5 * (core + core.transpose())).eval();
    core.diagonal().array() += epsilon;
    inv = detail::llt_with_jitter(std::move(core), "approx_ras core")
              .solve(Matrix::Identity(m, m));
  };

  for (Index i = 0; i < n; ++i) {
    const Index m = static_cast<Index>(idx.size());
    double resid = proj.diag()[i];
    Vector v;
    if (m > 0) {
      // v_j = w_j P(idx_j, i) via the cached core solves of the landmarks.
      v.resize(m);
      const auto fi = proj.features().row(i);
      for (Index j = 0; j < m; ++j)
        v[j] = wts[static_cast<std::size_t>(j)] * fi.dot(solved.col(j));
      resid -= v.dot(inv * v);
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
    solved.conservativeResize(Eigen::NoChange, m + 1);
    solved.col(m) = proj.solve_feature(i);
    idx.push_back(i);
    wts.push_back(w);
    tr.landmarks.indices.push_back(i);
    tr.landmarks.probabilities.push_back(prob);

    if (++since_rebuild >= 256) {
      rebuild();
      since_rebuild = 0;
      continue;
    }
    if (m == 0) {
      inv.resize(1, 1);
      inv(0, 0) = 1.0 / (w * w * proj.diag()[i] + epsilon);
      continue;
    }
    // Block inverse update for the bordered core [M  u; u^T d] with
    // u = w v, d = w^2 P_ii + eps.
    const Vector u_vec = w * v;
    const double d_new = w * w * proj.diag()[i] + epsilon;
    const Vector q = inv * u_vec;
    const double delta = d_new - u_vec.dot(q);
    if (!(delta > 0.0)) {
      rebuild();
      since_rebuild = 0;
      continue;
    }
    Matrix grown(m + 1, m + 1);
    grown.topLeftCorner(m, m) = inv + (q * q.transpose()) / delta;
    grown.topRightCorner(m, 1) = -q / delta;
    grown.bottomLeftCorner(1, m) = (-q / delta).transpose();
    grown(m, m) = 1.0 / delta;
    inv = std::move(grown);
  }
  return tr;
}

}  // namespace nysa
