#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "alphamod/errors.hpp"
#include "alphamod/grid.hpp"
#include "alphamod/profile.hpp"

namespace alphamod {

// Dyadic Littlewood-Paley system: phi_0 is 1 on |xi| <= 4/3 and supported in
// |xi| < 3/2; for j >= 1, phi_j(xi) = Phi(2^{-j} xi) - Phi(2^{-j+1} xi) where
// Phi is the base cap, so phi_j has plateau 2^j [3/4, 4/3], support
// 2^j (2/3, 3/2), the sum telescopes to exactly 1 on |xi| <= (4/3) 2^{J_max},
// and phi_j phi_l = 0 for |j - l| >= 2.
//
// The default step sharpness is deliberately soft. Quasi-norm integrals
// int |Delta_j f|^p with p < 1 pick up the far spatial tails of the block
// kernels, and the half-power tail mass of the kernel saturates by
// |x| ~ 64 * 2^{-j} at kappa = 2 versus |x| ~ 2000 * 2^{-j} at kappa = 12.
class DyadicPartition {
 public:
  int J_max = 0;
  double kappa = 2.0;

  double cap(double xi) const {  // Phi
    return plateau_bump(xi, 4.0 / 3.0, 3.0 / 2.0, SmoothStep{kappa});
  }

  double value(int j, double xi) const {
    if (j < 0 || j > J_max) throw DomainError("dyadic level out of range");
    if (j == 0) return cap(xi);
    const double p = std::pow(2.0, static_cast<double>(-j));
    return cap(xi * p) - cap(xi * p * 2.0);
  }

  double covered_band() const { return (4.0 / 3.0) * std::pow(2.0, static_cast<double>(J_max)); }
  double support_band() const { return (3.0 / 2.0) * std::pow(2.0, static_cast<double>(J_max)); }

  // Support interval of level j on the positive axis.
  double support_lo(int j) const {
    return j == 0 ? 0.0 : (2.0 / 3.0) * std::pow(2.0, static_cast<double>(j));
  }
  double support_hi(int j) const { return (3.0 / 2.0) * std::pow(2.0, static_cast<double>(j)); }

  SpectralWindow sample(int j, const Grid& g) const {
    const double hi = support_hi(j);
    return SpectralWindow::from_function(g, -hi, hi, [&](double xi) { return value(j, xi); });
  }
};

inline DyadicPartition build_dyadic(int J_max, const Grid& g, double kappa = 2.0) {
  if (J_max < 1) throw ConfigError("dyadic.J_max must be >= 1");
  DyadicPartition dp;
  dp.J_max = J_max;
  dp.kappa = kappa;
  if (dp.support_band() > g.nyquist())
    throw ConfigError("dyadic.J_max " + std::to_string(J_max) +
                      " reaches past the grid band (support " + std::to_string(dp.support_band()) +
                      " vs " + std::to_string(g.nyquist()) + ")");
  return dp;
}

// Frequency block at dyadic level j.
inline GridFunction dyadic_block(const GridFunction& f, int j, const DyadicPartition& dp) {
  return apply_multiplier(f, dp.sample(j, f.grid()));
}

}  // namespace alphamod
