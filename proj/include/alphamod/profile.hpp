#pragma once

#include <cmath>

namespace alphamod {

// C-infinity descending step built from S(t) = exp(-kappa/t):
//   T(t) = S(1-t) / (S(t) + S(1-t)),
// so T = 1 for t <= 0, T = 0 for t >= 1, all derivatives vanish at both
// ends, and T(t) + T(1-t) = 1 exactly. kappa controls the steepness of the
// middle section.
struct SmoothStep {
  double kappa = 3.0;

  double operator()(double t) const {
    if (t <= 0.0) return 1.0;
    if (t >= 1.0) return 0.0;
    // T(t) = 1 / (1 + exp(kappa*(1/(1-t) - 1/t)))
    const double e = kappa * (1.0 / (1.0 - t) - 1.0 / t);
    if (e > 700.0) return 0.0;
    if (e < -700.0) return 1.0;
    return 1.0 / (1.0 + std::exp(e));
  }
};

// Even plateau profile in one variable: 1 for |d| <= plateau, smooth descent
// to 0 at |d| >= support, where d is a signed distance.
inline double plateau_bump(double d, double plateau, double support, const SmoothStep& step) {
  const double a = std::fabs(d);
  if (a <= plateau) return 1.0;
  if (a >= support) return 0.0;
  return step((a - plateau) / (support - plateau));
}

}  // namespace alphamod
