#pragma once

#include <cmath>

#include "nysa/types.hpp"

namespace nysa {

/// Lower real branch of the Lambert W function: the solution w <= -1 of
/// w*exp(w) = y for y in [-1/e, 0). Bracketed Newton iteration: the map
/// w -> w*exp(w) is strictly decreasing on (-inf, -1], so a bisection
/// fallback keeps every step inside a shrinking bracket. Converges to
/// 1e-12 relative.
inline double lambert_w_lower(double y) {
  const double branch_point = -std::exp(-1.0);
  if (!(y < 0.0) || y < branch_point)
    throw config_error("lambert_w_lower: argument outside [-1/e, 0)");
  if (y == branch_point) return -1.0;

  // Bracket [lo, hi] with h(lo) >= y >= h(hi), h(w) = w*exp(w).
  double hi = -1.0;
  double lo = -2.0;
  while (lo * std::exp(lo) < y) lo *= 2.0;

  // Seed from the asymptotic expansion for y -> 0-.
  const double l1 = std::log(-y);
  const double l2 = std::log(-l1);
  double w = l1 - l2 + l2 / l1;
  if (!(w >= lo && w <= hi)) w = 0.5 * (lo + hi);

  for (int it = 0; it < 200; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - y;
    if (f > 0.0)
      lo = w;  // h decreasing: h(w) > y means w below the root
    else
      hi = w;
    const double deriv = ew * (1.0 + w);
    double step = deriv != 0.0 ? w - f / deriv : 0.5 * (lo + hi);
    if (!(step > lo && step < hi)) step = 0.5 * (lo + hi);
    const double delta = std::abs(step - w);
    w = step;
    if (delta <= 1e-12 * std::max(1.0, std::abs(w))) break;
  }
  return w;
}

/// Smallest oversampling factor c for which the spectral-error guarantee
/// of the adaptive sampler holds with probability 1-delta:
///   c >= -(28/3) * W_{-1}(-3(1+eps)delta / (700 d_eff)),
/// floored at (1+sqrt(37))/3. `d_eff` must be the effective dimension at
/// the shifted regularization eps*n*gamma/(1+eps); gamma itself only
/// enters through that evaluation and is validated here for sign.
inline double oversampling_lower_bound(double eps, double gamma, double delta,
                                       double d_eff) {
  if (!(eps > 0.0)) throw config_error("oversampling_lower_bound: eps <= 0");
  if (!(gamma > 0.0))
    throw config_error("oversampling_lower_bound: gamma <= 0");
  if (!(delta > 0.0 && delta < 1.0))
    throw config_error("oversampling_lower_bound: delta outside (0,1)");
  if (!(d_eff > 0.0))
    throw config_error("oversampling_lower_bound: d_eff <= 0");
  const double arg = -3.0 * (1.0 + eps) * delta / (700.0 * d_eff);
  const double floor_c = (1.0 + std::sqrt(37.0)) / 3.0;
  const double lambert_c = -(28.0 / 3.0) * lambert_w_lower(arg);
  return std::max(lambert_c, floor_c);
}

}  // namespace nysa
