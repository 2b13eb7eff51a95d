#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "alphamod/errors.hpp"
#include "alphamod/grid.hpp"
#include "alphamod/profile.hpp"
#include "alphamod/rational.hpp"

namespace alphamod {

struct CoveringOptions {
  double c = 0.45;   // plateau radius factor, plateau = c * scale_k
  double C = 0.0;    // support radius factor; 0 selects the default 0.95/(1-alpha)
  double kappa = 3.0;
  double required_band = 0.0;  // ConfigError if the covered band falls short
  double gap_floor = 1e-6;     // minimum raw window sum on the covered band
};

// Smooth partition of unity subordinate to the polynomially scaled window
// system with centers mu_k = <k>^beta k and scales s_k = <k>^beta,
// beta = alpha/(1-alpha). Each window is exactly 1 on its plateau
// [mu_k - c s_k, mu_k + c s_k], supported in [mu_k - C s_k, mu_k + C s_k],
// and consecutive windows share complementary C-infinity transitions, so the
// window sum is exactly 1 on the covered band. Windows are analytic objects;
// sample() puts one onto a grid's frequency axis on demand.
class AlphaCovering {
 public:
  struct Window {
    double mu = 0, scale = 1, plateau = 0;
    double lo = 0, hi = 0;  // support interval
  };
  struct Zone {  // transition zone between window i and i+1 (array indices)
    double lo = 0, hi = 0;
    double rho_left = 1, rho_right = 1;  // reach fraction of each neighbor
  };

  Rational alpha{0};
  double c = 0.45, C = 0.95;
  double kappa = 3.0;
  long long K_max = 0;
  double beta = 0.0;
  std::vector<Window> win;   // index k + K_max
  std::vector<Zone> zones;   // size win.size() - 1

  long long index_of(std::size_t arr) const { return static_cast<long long>(arr) - K_max; }
  std::size_t arr_of(long long k) const {
    if (k < -K_max || k > K_max)
      throw IndexOutOfCovering("block index " + std::to_string(k) + " outside covering (K_max " +
                               std::to_string(K_max) + ")");
    return static_cast<std::size_t>(k + K_max);
  }
  const Window& window(long long k) const { return win[arr_of(k)]; }

  // Outer plateau edge: partition of unity holds exactly on [-B, B].
  double covered_band() const { return win.back().mu + win.back().plateau; }

  // Raw (pre-normalization) window value.
  double raw_value(long long k, double xi) const {
    const std::size_t i = arr_of(k);
    const Window& w = win[i];
    if (xi < w.lo || xi > w.hi) return 0.0;
    const SmoothStep step{kappa};
    if (std::fabs(xi - w.mu) <= w.plateau) return 1.0;
    if (xi > w.mu) {
      if (i + 1 == win.size()) {
        const double t0 = w.mu + w.plateau;
        return step((xi - t0) / (w.hi - t0));
      }
      const Zone& z = zones[i];
      const double zeta = (xi - z.lo) / (z.hi - z.lo);
      if (zeta >= z.rho_left) return 0.0;
      return step(zeta / z.rho_left);
    }
    if (i == 0) {
      const double t0 = w.mu - w.plateau;
      return step((t0 - xi) / (t0 - w.lo));
    }
    const Zone& z = zones[i - 1];
    const double zeta = (z.hi - xi) / (z.hi - z.lo);
    if (zeta >= z.rho_right) return 0.0;
    return step(zeta / z.rho_right);
  }

  double raw_sum(double xi) const {
    // Overlap is at most two adjacent windows; locate by center.
    auto it = std::upper_bound(centers_.begin(), centers_.end(), xi);
    long long i = static_cast<long long>(it - centers_.begin());
    double s = 0.0;
    for (long long j = std::max<long long>(0, i - 2); j <= std::min<long long>(win.size() - 1, i + 1); ++j)
      s += raw_value(index_of(static_cast<std::size_t>(j)), xi);
    return s;
  }

  // Normalized window: partition of unity on the covered band, raw rolloff
  // outside it (where only the outermost window lives).
  double value(long long k, double xi) const {
    const double u = raw_value(k, xi);
    if (u == 0.0) return 0.0;
    if (std::fabs(xi) > covered_band()) return u;
    const double s = raw_sum(xi);
    return s > 0.0 ? u / s : 0.0;
  }

  // Number of windows with nonzero value at xi.
  int overlap_count(double xi) const {
    auto it = std::upper_bound(centers_.begin(), centers_.end(), xi);
    long long i = static_cast<long long>(it - centers_.begin());
    int n = 0;
    for (long long j = std::max<long long>(0, i - 2); j <= std::min<long long>(win.size() - 1, i + 1); ++j)
      if (raw_value(index_of(static_cast<std::size_t>(j)), xi) > 0.0) ++n;
    return n;
  }

  SpectralWindow sample(long long k, const Grid& g) const {
    const Window& w = window(k);
    if (w.lo > g.nyquist() || w.hi < -g.nyquist())
      throw GridOverflowError("covering window " + std::to_string(k) + " lies outside the grid band");
    return SpectralWindow::from_function(g, w.lo, w.hi, [&](double xi) { return value(k, xi); });
  }

  void finalize_centers() {
    centers_.clear();
    centers_.reserve(win.size());
    for (const auto& w : win) centers_.push_back(w.mu);
  }

 private:
  std::vector<double> centers_;
};

inline AlphaCovering build_alpha_covering(const Rational& alpha, long long K_max,
                                          const CoveringOptions& opt = {}) {
  if (alpha < Rational(0) || alpha >= Rational(1)) throw ConfigError("covering.alpha must lie in [0,1)");
  if (K_max < 1) throw ConfigError("covering.K_max must be >= 1");
  const double beta = to_double(alpha / (Rational(1) - alpha));
  const double c = opt.c;
  const double C = opt.C > 0.0 ? opt.C : 0.95 / (1.0 - to_double(alpha));
  if (!(c > 0.0)) throw ConfigError("covering.c must be positive");
  if (!(C > c)) throw ConfigError("covering.C must exceed covering.c");

  AlphaCovering cov;
  cov.alpha = alpha;
  cov.c = c;
  cov.C = C;
  cov.kappa = opt.kappa;
  cov.K_max = K_max;
  cov.beta = beta;
  cov.win.resize(static_cast<std::size_t>(2 * K_max + 1));
  for (long long k = -K_max; k <= K_max; ++k) {
    const double kk = static_cast<double>(k);
    const double scale = std::pow(1.0 + kk * kk, 0.5 * beta);
    AlphaCovering::Window w;
    w.mu = scale * kk;
    w.scale = scale;
    w.plateau = c * scale;
    cov.win[static_cast<std::size_t>(k + K_max)] = w;
  }
  cov.zones.resize(cov.win.size() - 1);
  for (std::size_t i = 0; i + 1 < cov.win.size(); ++i) {
    AlphaCovering::Window& a = cov.win[i];
    AlphaCovering::Window& b = cov.win[i + 1];
    AlphaCovering::Zone z;
    z.lo = a.mu + a.plateau;
    z.hi = b.mu - b.plateau;
    const double width = z.hi - z.lo;
    if (!(width > 0))
      throw CoveringGapError("plateaus of adjacent windows " + std::to_string(cov.index_of(i)) +
                             "," + std::to_string(cov.index_of(i + 1)) +
                             " collide; no exact covering with c=" + std::to_string(c));
    z.rho_left = std::min(1.0, (C - c) * a.scale / width);
    z.rho_right = std::min(1.0, (C - c) * b.scale / width);
    if (z.rho_left + z.rho_right < 1.0)
      throw CoveringGapError("windows " + std::to_string(cov.index_of(i)) + "," +
                             std::to_string(cov.index_of(i + 1)) +
                             " cannot bridge their transition zone (support factor C too small)");
    cov.zones[i] = z;
  }
  for (std::size_t i = 0; i < cov.win.size(); ++i) {
    AlphaCovering::Window& w = cov.win[i];
    if (i == 0) {
      w.lo = w.mu - C * w.scale;
    } else {
      const AlphaCovering::Zone& z = cov.zones[i - 1];
      w.lo = z.hi - z.rho_right * (z.hi - z.lo);
    }
    if (i + 1 == cov.win.size()) {
      w.hi = w.mu + C * w.scale;
    } else {
      const AlphaCovering::Zone& z = cov.zones[i];
      w.hi = z.lo + z.rho_left * (z.hi - z.lo);
    }
  }
  cov.finalize_centers();

  // Sampled gap check over every transition zone (the plateaus are 1).
  for (const auto& z : cov.zones) {
    for (int t = 0; t <= 64; ++t) {
      const double xi = z.lo + (z.hi - z.lo) * static_cast<double>(t) / 64.0;
      if (cov.raw_sum(xi) < opt.gap_floor)
        throw CoveringGapError("window sum drops to " + std::to_string(cov.raw_sum(xi)) +
                               " at xi=" + std::to_string(xi));
    }
  }
  if (opt.required_band > 0.0 && cov.covered_band() < opt.required_band)
    throw ConfigError("covering.K_max yields covered band " + std::to_string(cov.covered_band()) +
                      " below the requested band " + std::to_string(opt.required_band));
  return cov;
}

// Smallest K_max whose covering reaches the requested band.
inline long long K_max_for_band(const Rational& alpha, double band, double c = 0.45,
                                long long cap = 1000000) {
  if (alpha < Rational(0) || alpha >= Rational(1)) throw ConfigError("covering.alpha must lie in [0,1)");
  const double beta = to_double(alpha / (Rational(1) - alpha));
  for (long long k = 1; k <= cap; ++k) {
    const double kk = static_cast<double>(k);
    const double scale = std::pow(1.0 + kk * kk, 0.5 * beta);
    if (scale * kk + c * scale >= band) return k;
  }
  throw ConfigError("requested band needs more than " + std::to_string(cap) + " windows");
}

struct CoveringReport {
  bool inner_exact = false;
  bool support_contained = false;
  bool partition_exact = false;
  bool derivative_scaling = false;
  bool overlap_bounded = false;
  bool pass = false;
  double max_inner_defect = 0.0;
  double max_support_excess = 0.0;   // extent excess over C*scale, relative
  double max_partition_defect = 0.0;
  double min_raw_sum = 1.0;
  double slope_first = 0.0, slope_second = 0.0;
  double expected_slope_first = 0.0, expected_slope_second = 0.0;
  int derivative_points = 0;
  int max_overlap = 0;

  nlohmann::json to_json() const {
    return {{"inner_exact", inner_exact},
            {"support_contained", support_contained},
            {"partition_exact", partition_exact},
            {"derivative_scaling", derivative_scaling},
            {"overlap_bounded", overlap_bounded},
            {"pass", pass},
            {"max_inner_defect", max_inner_defect},
            {"max_support_excess", max_support_excess},
            {"max_partition_defect", max_partition_defect},
            {"min_raw_sum", min_raw_sum},
            {"slope_first", slope_first},
            {"slope_second", slope_second},
            {"expected_slope_first", expected_slope_first},
            {"expected_slope_second", expected_slope_second},
            {"derivative_points", derivative_points},
            {"max_overlap", max_overlap}};
  }
};

struct VerifyOptions {
  int samples_per_window = 1024;
  double fd_step = 1.0 / 512.0;     // finite-difference step (grid dxi)
  double inner_tol = 1e-9;
  double partition_tol = 1e-9;
  double slope_tol_first = 0.1;
  double slope_tol_second = 0.2;
  double min_bracket = 8.0;         // fit derivative slopes for <k> >= this
};

// Checks the four covering conditions: plateau exactness, support
// containment, partition of unity on the covered band, derivative decay
// matching <k>^{-beta} and <k>^{-2 beta}.
inline CoveringReport verify_covering(const AlphaCovering& cov, const VerifyOptions& opt = {}) {
  CoveringReport rep;
  const double B = cov.covered_band();
  const int M = std::max(64, opt.samples_per_window);

  rep.inner_exact = true;
  rep.support_contained = true;
  rep.overlap_bounded = true;
  for (std::size_t i = 0; i < cov.win.size(); ++i) {
    const long long k = cov.index_of(i);
    const auto& w = cov.win[i];
    for (int t = 0; t <= 32; ++t) {
      const double xi = w.mu - w.plateau + 2.0 * w.plateau * static_cast<double>(t) / 32.0;
      rep.max_inner_defect = std::max(rep.max_inner_defect, std::fabs(1.0 - cov.value(k, xi)));
    }
    const double excess =
        std::max(w.hi - (w.mu + cov.C * w.scale), (w.mu - cov.C * w.scale) - w.lo) / w.scale;
    rep.max_support_excess = std::max(rep.max_support_excess, excess);
    if (excess > 1e-12) rep.support_contained = false;
    const double margin = 1e-9 * w.scale;
    if (cov.raw_value(k, w.hi + margin) != 0.0 || cov.raw_value(k, w.lo - margin) != 0.0)
      rep.support_contained = false;
  }
  if (rep.max_inner_defect > opt.inner_tol) rep.inner_exact = false;

  // Partition and overlap sweep across the covered band.
  for (std::size_t i = 0; i < cov.win.size(); ++i) {
    const auto& w = cov.win[i];
    const double lo = std::max(w.lo, -B), hi = std::min(w.hi, B);
    if (!(hi > lo)) continue;
    for (int t = 0; t <= M; ++t) {
      const double xi = lo + (hi - lo) * static_cast<double>(t) / M;
      double s = 0.0;
      for (long long j = std::max<long long>(0, static_cast<long long>(i) - 2);
           j <= std::min<long long>(cov.win.size() - 1, static_cast<long long>(i) + 2); ++j)
        s += cov.value(cov.index_of(static_cast<std::size_t>(j)), xi);
      rep.max_partition_defect = std::max(rep.max_partition_defect, std::fabs(s - 1.0));
      rep.min_raw_sum = std::min(rep.min_raw_sum, cov.raw_sum(xi));
      rep.max_overlap = std::max(rep.max_overlap, cov.overlap_count(xi));
    }
  }
  rep.partition_exact = rep.max_partition_defect <= opt.partition_tol;
  rep.overlap_bounded = rep.max_overlap <= 2;

  // Derivative decay, fitted over <k> >= min_bracket on the positive side.
  std::vector<double> logs_k, logs_d1, logs_d2;
  for (long long k = 1; k <= cov.K_max; ++k) {
    const double br = std::sqrt(1.0 + static_cast<double>(k) * static_cast<double>(k));
    if (br < opt.min_bracket) continue;
    const auto& w = cov.window(k);
    double d1 = 0.0, d2 = 0.0;
    const double h = opt.fd_step;
    for (int t = 0; t <= M; ++t) {
      const double xi = w.lo + (w.hi - w.lo) * static_cast<double>(t) / M;
      const double vm = cov.value(k, xi - h), v0 = cov.value(k, xi), vp = cov.value(k, xi + h);
      d1 = std::max(d1, std::fabs(vp - vm) / (2.0 * h));
      d2 = std::max(d2, std::fabs(vp - 2.0 * v0 + vm) / (h * h));
    }
    if (d1 > 0 && d2 > 0) {
      logs_k.push_back(std::log(br));
      logs_d1.push_back(std::log(d1));
      logs_d2.push_back(std::log(d2));
    }
  }
  rep.expected_slope_first = -cov.beta;
  rep.expected_slope_second = -2.0 * cov.beta;
  rep.derivative_points = static_cast<int>(logs_k.size());
  if (logs_k.size() >= 4) {
    auto slope = [](const std::vector<double>& x, const std::vector<double>& y) {
      double mx = 0, my = 0;
      for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
      mx /= static_cast<double>(x.size());
      my /= static_cast<double>(x.size());
      double num = 0, den = 0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
      }
      return num / den;
    };
    rep.slope_first = slope(logs_k, logs_d1);
    rep.slope_second = slope(logs_k, logs_d2);
    rep.derivative_scaling = std::fabs(rep.slope_first - rep.expected_slope_first) <= opt.slope_tol_first &&
                             std::fabs(rep.slope_second - rep.expected_slope_second) <= opt.slope_tol_second;
  } else {
    rep.derivative_scaling = false;
  }

  rep.pass = rep.inner_exact && rep.support_contained && rep.partition_exact &&
             rep.derivative_scaling && rep.overlap_bounded;
  return rep;
}

enum class BlockProfile { Canonical, Rough };
enum class ShellKind { Intersecting, Contained };

// Frequency-localized block of f at window k. Canonical uses the partition
// window; Rough uses the wider cap that is identically 1 on the window's
// support (so rough * canonical == canonical).
inline GridFunction alpha_block(const GridFunction& f, long long k, const AlphaCovering& cov,
                                BlockProfile profile = BlockProfile::Canonical) {
  const auto& w = cov.window(k);
  if (profile == BlockProfile::Canonical) return apply_multiplier(f, cov.sample(k, f.grid()));
  const double pad = 0.5 * (cov.C - cov.c) * w.scale;
  const SmoothStep step{cov.kappa};
  auto rough = SpectralWindow::from_function(
      f.grid(), w.lo - pad, w.hi + pad, [&](double xi) {
        if (xi >= w.lo && xi <= w.hi) return 1.0;
        if (xi > w.hi) return step((xi - w.hi) / pad);
        return step((w.lo - xi) / pad);
      });
  return apply_multiplier(f, rough);
}

// Window indices whose support meets (Intersecting) or is contained in
// (Contained) the dyadic shell; both signs of the shell are considered.
inline std::vector<long long> shell_indices(const AlphaCovering& cov, int j, ShellKind kind) {
  if (j < 0) throw DomainError("shell level must be >= 0");
  const double p2 = std::pow(2.0, static_cast<double>(j));
  const double outer = (kind == ShellKind::Intersecting ? 4.0 / 3.0 : 8.0 / 7.0) * p2;
  const double inner = (kind == ShellKind::Intersecting ? 3.0 / 4.0 : 7.0 / 8.0) * p2;
  if ((4.0 / 3.0) * p2 > cov.covered_band())
    throw ShellOutOfCovering("shell " + std::to_string(j) + " reaches past the covered band");
  std::vector<long long> out;
  for (std::size_t i = 0; i < cov.win.size(); ++i) {
    const auto& w = cov.win[i];
    bool take = false;
    if (kind == ShellKind::Intersecting) {
      take = (w.hi >= inner && w.lo <= outer) || (w.hi >= -outer && w.lo <= -inner);
    } else {
      take = (w.lo >= inner && w.hi <= outer) || (w.lo >= -outer && w.hi <= -inner);
    }
    if (take) out.push_back(cov.index_of(i));
  }
  return out;
}

inline nlohmann::json covering_to_json(const AlphaCovering& cov, bool with_windows = true) {
  nlohmann::json j{{"alpha", to_string(cov.alpha)}, {"c", cov.c},
                   {"C", cov.C},                    {"kappa", cov.kappa},
                   {"K_max", cov.K_max},            {"covered_band", cov.covered_band()},
                   {"beta", cov.beta}};
  if (with_windows) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < cov.win.size(); ++i) {
      const auto& w = cov.win[i];
      rows.push_back({{"k", cov.index_of(i)},
                      {"mu", w.mu},
                      {"scale", w.scale},
                      {"plateau", w.plateau},
                      {"lo", w.lo},
                      {"hi", w.hi}});
    }
    j["windows"] = rows;
  }
  return j;
}

}  // namespace alphamod
