#pragma once

#include <cmath>
#include <unordered_set>
#include <vector>

#include "nysa/types.hpp"

namespace nysa {

/// Selected column subset. When probabilities are present (importance
/// sampling) the sampling matrix column for index i is e_i/sqrt(p_i);
/// otherwise it is the plain unit vector e_i.
struct LandmarkSet {
  IndexList indices;
  std::vector<double> probabilities;  // empty => unweighted

  Index size() const { return static_cast<Index>(indices.size()); }
  bool empty() const { return indices.empty(); }
  bool weighted() const { return !probabilities.empty(); }

  /// Column weight 1/sqrt(p_i) (1 when unweighted).
  double weight(std::size_t pos) const {
    return weighted() ? 1.0 / std::sqrt(probabilities[pos]) : 1.0;
  }

  void validate(Index n) const {
    std::unordered_set<Index> seen;
    for (Index i : indices) {
      if (i < 0 || i >= n)
        throw config_error("LandmarkSet: index out of range");
      if (!seen.insert(i).second)
        throw config_error("LandmarkSet: duplicate index");
    }
    if (weighted()) {
      if (probabilities.size() != indices.size())
        throw config_error("LandmarkSet: probabilities misaligned");
      for (double p : probabilities)
        if (!(p > 0.0) || p > 1.0)
          throw config_error("LandmarkSet: probability outside (0, 1]");
    }
  }

  /// Dense n x |C| sampling matrix S.
  Matrix sampling_matrix(Index n) const {
    validate(n);
    Matrix s = Matrix::Zero(n, size());
    for (std::size_t j = 0; j < indices.size(); ++j)
      s(indices[j], static_cast<Index>(j)) = weight(j);
    return s;
  }

  /// Same indices with the probabilities stripped.
  LandmarkSet unweighted() const { return LandmarkSet{indices, {}}; }

  static LandmarkSet all(Index n) {
    LandmarkSet out;
    out.indices.resize(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) out.indices[static_cast<std::size_t>(i)] = i;
    return out;
  }
};

}  // namespace nysa
