#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "alphamod/covering.hpp"
#include "alphamod/dyadic.hpp"
#include "alphamod/errors.hpp"
#include "alphamod/fft.hpp"
#include "alphamod/grid.hpp"
#include "alphamod/parallel.hpp"
#include "alphamod/rational.hpp"

namespace alphamod {

struct NormOptions {
  // Maximum admissible spectral energy fraction outside the covered band.
  double band_guard = 1e-10;
  // 0: evaluate blocks on the full grid. >= 1: evaluate each block by an
  // inverse transform on a small grid holding `oversample` times the window
  // span (exact at the sample points; the oversampling controls quadrature).
  int zoom_oversample = 0;
};

namespace detail {

inline std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// L^p norm of the function whose spectrum is f's restricted to the window.
inline double block_lebesgue_norm(const GridFunction& f, const SpectralWindow& win,
                                  const Exponent& p, int zoom_oversample) {
  const Grid& g = f.grid();
  const long long lo = std::max(win.lo, g.min_bin());
  const long long hi = std::min(win.hi(), g.max_bin());
  if (hi < lo || win.w.empty()) return 0.0;
  bool any = false;
  for (long long sb = lo; sb <= hi && !any; ++sb)
    any = win.w[static_cast<std::size_t>(sb - win.lo)] != 0.0 &&
          f.spectrum()[g.bin_of(sb)] != cd(0.0, 0.0);
  if (!any) return 0.0;

  const std::size_t span = static_cast<std::size_t>(hi - lo + 1);
  std::size_t M = 0;
  if (zoom_oversample >= 1)
    M = next_pow2(std::max<std::size_t>(64, span * static_cast<std::size_t>(zoom_oversample)));
  if (M == 0 || M >= g.N) {
    // Full-grid path.
    std::vector<cd> spec(g.N, cd(0, 0));
    for (long long sb = lo; sb <= hi; ++sb) {
      const std::size_t m = g.bin_of(sb);
      spec[m] = f.spectrum()[m] * win.w[static_cast<std::size_t>(sb - win.lo)];
    }
    return lebesgue_norm(GridFunction::from_spectrum(g, std::move(spec)), p);
  }
  // Zoomed path: the block values at the M coarse sample points are exact;
  // only the L^p quadrature feels the coarser step.
  std::vector<cd> z(M, cd(0, 0));
  for (long long sb = lo; sb <= hi; ++sb) {
    const cd c = f.spectrum()[g.bin_of(sb)] * win.w[static_cast<std::size_t>(sb - win.lo)];
    const std::size_t pos = static_cast<std::size_t>(((sb % static_cast<long long>(M)) +
                                                      static_cast<long long>(M)) %
                                                     static_cast<long long>(M));
    z[pos] += (sb & 1LL) ? -c : c;
  }
  fft::transform_pow2(z, true);
  const double dxi = g.dxi();
  const double dxc = 2.0 * g.L / static_cast<double>(M);
  if (p.is_infinite()) {
    double m = 0.0;
    for (const auto& v : z) m = std::max(m, std::abs(v) * dxi);
    return m;
  }
  const double pd = p.p_double();
  double acc = 0.0;
  for (const auto& v : z) acc += std::pow(std::abs(v) * dxi, pd) * dxc;
  return std::pow(acc, 1.0 / pd);
}

inline void check_guard(const GridFunction& f, double band, double guard, const char* what) {
  const double frac = band_energy_fraction(f, band);
  if (frac > guard)
    throw InsufficientCovering(std::string(what) + ": spectral energy fraction " +
                               std::to_string(frac) + " outside band " + std::to_string(band) +
                               " exceeds guard " + std::to_string(guard));
}

}  // namespace detail

// Block-sum norm over the polynomial window system:
//   ( sum_k ( <k>^{s/(1-alpha)} ||block_k f||_{L^p} )^q )^{1/q},
// sup over k at q = inf.
inline double alpha_modulation_norm(const GridFunction& f, const Exponent& p, const Exponent& q,
                                    const Rational& s, const AlphaCovering& cov,
                                    const NormOptions& opts = {}) {
  const Grid& g = f.grid();
  detail::check_guard(f, std::min(cov.covered_band(), 0.995 * g.nyquist()), opts.band_guard,
                      "block-sum norm");
  const double e = to_double(s / (Rational(1) - cov.alpha));
  std::vector<long long> ks;
  for (std::size_t i = 0; i < cov.win.size(); ++i) {
    const auto& w = cov.win[i];
    if (w.lo <= g.nyquist() && w.hi >= -g.nyquist()) ks.push_back(cov.index_of(i));
  }
  std::vector<double> terms(ks.size(), 0.0);
  parallel_for(ks.size(), [&](std::size_t i) {
    const long long k = ks[i];
    const double kk = static_cast<double>(k);
    const double weight = std::pow(1.0 + kk * kk, 0.5 * e);
    terms[i] = weight * detail::block_lebesgue_norm(f, cov.sample(k, g), p, opts.zoom_oversample);
  });
  if (q.is_infinite()) {
    double m = 0.0;
    for (double t : terms) m = std::max(m, t);
    return m;
  }
  const double qd = q.p_double();
  double acc = 0.0;
  for (double t : terms) acc += std::pow(t, qd);
  return std::pow(acc, 1.0 / qd);
}

// Dyadic sum-outside norm: ( sum_j ( 2^{j s} ||block_j f||_{L^p} )^q )^{1/q}.
inline double besov_norm(const GridFunction& f, const Exponent& p, const Exponent& q,
                         const Rational& s, const DyadicPartition& dp,
                         const NormOptions& opts = {}) {
  detail::check_guard(f, std::min(dp.covered_band(), 0.995 * f.grid().nyquist()), opts.band_guard,
                      "dyadic sum-outside norm");
  const double sd = to_double(s);
  std::vector<double> terms(static_cast<std::size_t>(dp.J_max) + 1, 0.0);
  parallel_for(terms.size(), [&](std::size_t j) {
    const double weight = std::pow(2.0, sd * static_cast<double>(j));
    terms[j] = weight * detail::block_lebesgue_norm(f, dp.sample(static_cast<int>(j), f.grid()), p,
                                                    opts.zoom_oversample);
  });
  if (q.is_infinite()) {
    double m = 0.0;
    for (double t : terms) m = std::max(m, t);
    return m;
  }
  const double qd = q.p_double();
  double acc = 0.0;
  for (double t : terms) acc += std::pow(t, qd);
  return std::pow(acc, 1.0 / qd);
}

// Dyadic sum-inside norm: || ( sum_j ( 2^{j s} |block_j f| )^q )^{1/q} ||_{L^p}.
// p = inf is outside this scale.
inline double triebel_norm(const GridFunction& f, const Exponent& p, const Exponent& q,
                           const Rational& s, const DyadicPartition& dp,
                           const NormOptions& opts = {}) {
  if (p.is_infinite()) throw DomainError("sum-inside norm requires p < inf");
  const Grid& g = f.grid();
  detail::check_guard(f, std::min(dp.covered_band(), 0.995 * g.nyquist()), opts.band_guard,
                      "dyadic sum-inside norm");
  const double sd = to_double(s);
  const bool qinf = q.is_infinite();
  const double qd = qinf ? 0.0 : q.p_double();
  std::vector<double> acc(g.N, 0.0);
  for (int j = 0; j <= dp.J_max; ++j) {
    GridFunction blk = dyadic_block(f, j, dp);
    const double weight = std::pow(2.0, sd * static_cast<double>(j));
    for (std::size_t i = 0; i < g.N; ++i) {
      const double v = weight * std::abs(blk.values()[i]);
      if (qinf)
        acc[i] = std::max(acc[i], v);
      else
        acc[i] += std::pow(v, qd);
    }
  }
  const double pd = p.p_double();
  double total = 0.0;
  const double dx = g.dx();
  for (std::size_t i = 0; i < g.N; ++i) {
    const double v = qinf ? acc[i] : std::pow(acc[i], 1.0 / qd);
    total += std::pow(v, pd) * dx;
  }
  return std::pow(total, 1.0 / pd);
}

// Local Hardy-scale norm: the sum-inside norm at q = 2, s = 0.
inline double local_hardy_norm(const GridFunction& f, const Exponent& p, const DyadicPartition& dp,
                               const NormOptions& opts = {}) {
  return triebel_norm(f, p, Exponent::from_p(Rational(2)), Rational(0), dp, opts);
}

struct MaximalOptions {
  int t_points = 16;
  double t_min = 1e-4;
  double t_max = 0.99;
};

// Truncated maximal-function norm: || sup_{t in (0,1)} |psi_t * f| ||_{L^p},
// with psi given by its spectrum khat and psi_t = t^{-1} psi(./t). The sup is
// sampled on a geometric t-grid.
inline double maximal_hardy_norm(const GridFunction& f, const Exponent& p,
                                 const std::function<double(double)>& khat,
                                 const MaximalOptions& mopts = {}, const NormOptions& opts = {}) {
  (void)opts;
  const Grid& g = f.grid();
  if (mopts.t_points < 2 || !(mopts.t_min > 0) || !(mopts.t_max > mopts.t_min) ||
      !(mopts.t_max < 1))
    throw ConfigError("maximal-function t grid must be geometric inside (0,1)");
  double peak = 0.0;
  for (int i = 0; i <= 64; ++i)
    peak = std::max(peak, std::fabs(khat(g.nyquist() * static_cast<double>(i) / 64.0)));
  if (std::fabs(khat(0.0)) < 1e-6 * std::max(peak, 1e-300))
    throw KernelMeanZero("kernel has vanishing mean; the maximal form cannot see averages");
  std::vector<double> acc(g.N, 0.0);
  const double ratio = std::pow(mopts.t_max / mopts.t_min, 1.0 / static_cast<double>(mopts.t_points - 1));
  for (int it = 0; it < mopts.t_points; ++it) {
    const double t = mopts.t_min * std::pow(ratio, static_cast<double>(it));
    std::vector<cd> spec(g.N);
    for (std::size_t m = 0; m < g.N; ++m) spec[m] = f.spectrum()[m] * khat(t * g.xi(m));
    GridFunction conv = GridFunction::from_spectrum(g, std::move(spec));
    for (std::size_t i = 0; i < g.N; ++i) acc[i] = std::max(acc[i], std::abs(conv.values()[i]));
  }
  if (p.is_infinite()) {
    double m = 0.0;
    for (double v : acc) m = std::max(m, v);
    return m;
  }
  const double pd = p.p_double();
  double total = 0.0;
  for (double v : acc) total += std::pow(v, pd) * g.dx();
  return std::pow(total, 1.0 / pd);
}

inline double gaussian_kernel_spectrum(double xi) { return std::exp(-M_PI * xi * xi); }

}  // namespace alphamod
