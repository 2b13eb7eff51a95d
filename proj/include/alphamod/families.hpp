#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "alphamod/covering.hpp"

namespace alphamod {

// ---------------------------------------------------------------------------
// Atoms for the local Hardy scale (one space dimension): supported in a cube
// Q, bounded by |Q|^{-1/p}, and, for small cubes, with vanishing moments up
// to floor(1/p - 1).

enum class AtomKind { I, II };  // I: |Q| < 1 with moment conditions, II: |Q| >= 1 without

struct Atom {
  Exponent p;
  double center = 0.0;
  double side = 0.0;
  AtomKind kind = AtomKind::I;
  int moment_order = 0;
  GridFunction values;

  double measure() const { return side; }
};

inline int atom_moment_order(const Exponent& p) {
  if (p.is_infinite() || p.u < Rational(1)) throw DomainError("atoms require 0 < p <= 1");
  return static_cast<int>(floor_rat(p.u - Rational(1)));
}

namespace detail {

// Gaussian elimination for the tiny Gram systems of the moment projection.
// Returns false on a vanishing pivot; the solution lands in b.
inline bool solve_dense(std::vector<std::vector<double>>& G, std::vector<double>& b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(G[r][col]) > std::fabs(G[piv][col])) piv = r;
    if (std::fabs(G[piv][col]) < 1e-300) return false;
    std::swap(G[piv], G[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = G[r][col] / G[col][col];
      for (std::size_t c = col; c < n; ++c) G[r][c] -= f * G[col][c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t col = n; col-- > 0;) {
    for (std::size_t c = col + 1; c < n; ++c) b[col] -= G[col][c] * b[c];
    b[col] /= G[col][col];
  }
  return true;
}

}  // namespace detail

// Builds a random smooth atom on the cube [center - side/2, center + side/2].
// Kind I removes the moments up to floor(1/p - 1) by a projection weighted
// with a smooth bump vanishing at the cube boundary, so the support condition
// survives exactly; both kinds are rescaled to sup |a| = (1 - 1e-6)|Q|^{-1/p}.
// Deterministic in seed.
inline Atom make_atom(const Grid& g, const Exponent& p, double side, AtomKind kind,
                      std::uint64_t seed, double center = 0.0) {
  const int n_mom = atom_moment_order(p);  // also validates p
  if (n_mom > 8) throw DomainError("moment order above 8 is outside the generator's range");
  if (!(side > 0.0)) throw DomainError("atom side must be positive");
  if (kind == AtomKind::I && !(side < 1.0)) throw DomainError("kind I atoms need |Q| < 1");
  if (kind == AtomKind::II && side < 1.0) throw DomainError("kind II atoms need |Q| >= 1");
  if (std::fabs(center) + 0.5 * side > 0.95 * g.L)
    throw GridOverflowError("atom cube reaches the domain edge");

  std::vector<std::size_t> in;
  std::vector<double> t;
  for (std::size_t i = 0; i < g.N; ++i) {
    const double ti = (g.x(i) - center) / (0.5 * side);
    if (std::fabs(ti) < 1.0) {
      in.push_back(i);
      t.push_back(ti);
    }
  }
  if (in.size() < 8)
    throw DegenerateAtom("cube side " + std::to_string(side) + " is too close to the grid step");

  const SmoothStep step{3.0};
  std::vector<double> w(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) w[i] = plateau_bump(t[i], 0.6, 1.0, step);

  const double sup_target = (1.0 - 1e-6) * std::pow(side, -to_double(p.u));
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(attempt + 1));
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> poly(static_cast<std::size_t>(n_mom) + 5);
    for (auto& c : poly) c = uni(rng);

    std::vector<double> a(in.size());
    double sup_raw = 0.0;
    for (std::size_t i = 0; i < in.size(); ++i) {
      double v = 0.0;
      for (std::size_t m = poly.size(); m-- > 0;) v = v * t[i] + poly[m];
      a[i] = w[i] * v;
      sup_raw = std::max(sup_raw, std::fabs(a[i]));
    }

    if (kind == AtomKind::I) {
      const std::size_t nb = static_cast<std::size_t>(n_mom) + 1;
      std::vector<std::vector<double>> G(nb, std::vector<double>(nb, 0.0));
      std::vector<double> rhs(nb, 0.0);
      std::vector<double> pw(2 * nb - 1);
      for (std::size_t i = 0; i < in.size(); ++i) {
        pw[0] = 1.0;
        for (std::size_t m = 1; m < pw.size(); ++m) pw[m] = pw[m - 1] * t[i];
        for (std::size_t b = 0; b < nb; ++b) {
          rhs[b] += pw[b] * a[i];
          for (std::size_t c = 0; c < nb; ++c) G[b][c] += pw[b + c] * w[i];
        }
      }
      if (!detail::solve_dense(G, rhs)) continue;
      for (std::size_t i = 0; i < in.size(); ++i) {
        double corr = 0.0;
        for (std::size_t b = rhs.size(); b-- > 0;) corr = corr * t[i] + rhs[b];
        a[i] -= w[i] * corr;
      }
    }

    double sup = 0.0;
    for (double v : a) sup = std::max(sup, std::fabs(v));
    if (!(sup > 1e-12 * std::max(sup_raw, 1e-300))) continue;  // annihilated, resample

    std::vector<cd> vals(g.N, cd(0.0, 0.0));
    const double scale = sup_target / sup;
    for (std::size_t i = 0; i < in.size(); ++i) vals[in[i]] = cd(a[i] * scale, 0.0);
    return Atom{p, center, side, kind, n_mom, GridFunction::from_physical(g, std::move(vals))};
  }
  throw DegenerateAtom("moment projection annihilated every candidate bump");
}

// Standalone invariant battery: support, size, moment, and resolution checks.
struct AtomCheck {
  bool support_ok = false;
  bool size_ok = false;
  bool moments_ok = false;
  bool resolved = false;
  double max_outside = 0.0;
  double sup_norm = 0.0;
  double size_bound = 0.0;
  double worst_moment_ratio = 0.0;  // measured moment / allowed bound, worst order
  int samples_inside = 0;

  bool pass() const { return support_ok && size_ok && moments_ok && resolved; }
};

inline AtomCheck validate_atom(const Atom& a) {
  const Grid& g = a.values.grid();
  AtomCheck chk;
  chk.size_bound = std::pow(a.side, -to_double(a.p.u));
  for (std::size_t i = 0; i < g.N; ++i) {
    const double mag = std::abs(a.values.values()[i]);
    if (std::fabs(g.x(i) - a.center) <= 0.5 * a.side) {
      ++chk.samples_inside;
      chk.sup_norm = std::max(chk.sup_norm, mag);
    } else {
      chk.max_outside = std::max(chk.max_outside, mag);
    }
  }
  chk.support_ok = chk.max_outside == 0.0;
  chk.size_ok = chk.sup_norm <= chk.size_bound * (1.0 + 1e-12);
  chk.resolved = chk.samples_inside >= 8;
  chk.moments_ok = true;
  if (a.kind == AtomKind::I) {
    const double dx = g.dx();
    for (int b = 0; b <= a.moment_order; ++b) {
      cd m(0.0, 0.0);
      for (std::size_t i = 0; i < g.N; ++i) {
        const cd v = a.values.values()[i];
        if (v == cd(0.0, 0.0)) continue;
        m += std::pow(g.x(i), static_cast<double>(b)) * v;
      }
      const double bound = 1e-8 * std::pow(a.side, static_cast<double>(b)) *
                           std::pow(a.side, 1.0 - to_double(a.p.u));
      chk.worst_moment_ratio = std::max(chk.worst_moment_ratio, std::abs(m) * dx / bound);
    }
    chk.moments_ok = chk.worst_moment_ratio <= 1.0;
  }
  return chk;
}

// Envelope comparison for a rough frequency block of an origin-centered atom
// on the complement of the doubled cube: the plain envelope is
//   scale_k * <scale_k x>^{-decay_order} * |Q|^{1 - 1/p},
// and kind I atoms additionally earn the moment factor
//   (|Q| * <k>^{1/(1-alpha)})^{moment_order + 1}.
struct TailReport {
  long long k = 0;
  double decay_order = 4.0;
  double moment_factor = 1.0;
  bool has_moment_factor = false;
  double max_ratio_plain = 0.0;   // max |block| / plain envelope over the tail
  double max_ratio_moment = 0.0;  // same against plain envelope * moment factor
  int samples = 0;
};

inline TailReport atom_tail_profile(const Atom& a, long long k, const AlphaCovering& cov,
                                    double decay_order = 4.0) {
  if (a.center != 0.0) throw DomainError("tail profile expects an origin-centered atom");
  TailReport rep;
  rep.k = k;
  rep.decay_order = decay_order;
  const GridFunction blk = alpha_block(a.values, k, cov, BlockProfile::Rough);
  const Grid& g = a.values.grid();
  const double sk = cov.window(k).scale;
  const double pref = sk * std::pow(a.side, 1.0 - to_double(a.p.u));
  if (a.kind == AtomKind::I) {
    rep.has_moment_factor = true;
    const double inv1ma = 1.0 / (1.0 - to_double(cov.alpha));
    const double kb = std::sqrt(1.0 + static_cast<double>(k) * static_cast<double>(k));
    rep.moment_factor = std::pow(a.side * std::pow(kb, inv1ma), a.moment_order + 1);
  }
  for (std::size_t i = 0; i < g.N; ++i) {
    const double x = g.x(i);
    if (std::fabs(x) <= a.side || std::fabs(x) > 0.9 * g.L) continue;
    const double env = pref * std::pow(1.0 + (sk * x) * (sk * x), -0.5 * decay_order);
    ++rep.samples;
    rep.max_ratio_plain = std::max(rep.max_ratio_plain, std::abs(blk.values()[i]) / env);
  }
  rep.max_ratio_moment = rep.has_moment_factor ? rep.max_ratio_plain / rep.moment_factor : 0.0;
  return rep;
}

// ---------------------------------------------------------------------------
// Extremal families, all specified through their spectra.
//   Dilated: spectrum H(xi / lambda) with H a plateau profile (1 on B(0,1),
//            supported in B(0,2)).
//   DyadicBump: even annulus profile at scale 2^level, identically 1 on
//            {7/8 <= |xi|/2^level <= 8/7}, supported in {3/4 <= . <= 4/3},
//            translated by level * separation.
//   CombG: nonnegative combination of consecutive dyadic bumps, member at
//            level j translated by j * separation.
//   AlphaBump: bump riding window k of a covering, supported strictly inside
//            the window plateau, spectrum integral normalized to scale_k.
//   CombF: combination of consecutive window bumps, member i translated by
//            i * separation.
//   Flat: the dilated profile at lambda = 2^level.
//   LinfComb: combination of window bumps with no translation, so the values
//            at the origin add coherently.
enum class FamilyKind { Dilated, DyadicBump, CombG, AlphaBump, CombF, Flat, LinfComb };

struct FamilyDescriptor {
  FamilyKind kind = FamilyKind::Dilated;
  double lambda = 1.0;         // Dilated
  int level = 0;               // DyadicBump j, Flat J
  double separation = 0.0;     // comb translation step
  long long first = 0;         // first level (CombG), window index (AlphaBump/CombF/LinfComb)
  std::vector<double> coeffs;  // comb coefficients, nonnegative
  double rad_frac = 0.9;       // window-bump support as a fraction of the plateau

  static FamilyDescriptor dilated(double lambda) {
    FamilyDescriptor d;
    d.kind = FamilyKind::Dilated;
    d.lambda = lambda;
    return d;
  }
  static FamilyDescriptor dyadic_bump(int j, double h = 0.0) {
    FamilyDescriptor d;
    d.kind = FamilyKind::DyadicBump;
    d.level = j;
    d.separation = h;
    return d;
  }
  static FamilyDescriptor comb_G(std::vector<double> a, long long first_level, double h) {
    FamilyDescriptor d;
    d.kind = FamilyKind::CombG;
    d.coeffs = std::move(a);
    d.first = first_level;
    d.separation = h;
    return d;
  }
  static FamilyDescriptor alpha_bump(long long k, double rad_frac = 0.9) {
    FamilyDescriptor d;
    d.kind = FamilyKind::AlphaBump;
    d.first = k;
    d.rad_frac = rad_frac;
    return d;
  }
  static FamilyDescriptor comb_F(std::vector<double> b, long long first_index, double h) {
    FamilyDescriptor d;
    d.kind = FamilyKind::CombF;
    d.coeffs = std::move(b);
    d.first = first_index;
    d.separation = h;
    return d;
  }
  static FamilyDescriptor flat(int J) {
    FamilyDescriptor d;
    d.kind = FamilyKind::Flat;
    d.level = J;
    return d;
  }
  static FamilyDescriptor linf_comb(std::vector<double> a, long long first_index) {
    FamilyDescriptor d;
    d.kind = FamilyKind::LinfComb;
    d.coeffs = std::move(a);
    d.first = first_index;
    return d;
  }
};

namespace detail {

struct MemberShape {
  double amp = 1.0;
  double offset = 0.0;  // member carries the phase e^{+2 pi i offset xi}: g(x + offset)
  double band = 0.0;    // outer edge of the member's spectral support
  std::function<double(double)> shape;
};

inline double flat_profile(double xi, const SmoothStep& step) {
  return plateau_bump(xi, 1.0, 2.0, step);
}

inline double annulus_profile(double r, const SmoothStep& step) {
  const double a = std::fabs(r);
  if (a <= 0.75 || a >= 4.0 / 3.0) return 0.0;
  const double asc = a >= 0.875 ? 1.0 : step((0.875 - a) / 0.125);
  const double desc = a <= 8.0 / 7.0 ? 1.0 : step((a - 8.0 / 7.0) / (4.0 / 3.0 - 8.0 / 7.0));
  return asc * desc;
}

// Midpoint quadrature; the integrand is smooth with compact support, so this
// converges faster than any power of the step.
inline double profile_integral(double plateau, double support, const SmoothStep& step) {
  const int n = 1 << 14;
  const double h = 2.0 * support / n;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += plateau_bump(-support + (i + 0.5) * h, plateau, support, step);
  return s * h;
}

inline void require_coeffs(const FamilyDescriptor& d) {
  if (d.coeffs.empty()) throw ConfigError("comb family needs at least one coefficient");
  for (double c : d.coeffs)
    if (!(c >= 0.0)) throw ConfigError("comb coefficients must be nonnegative");
}

inline std::vector<MemberShape> family_members(const FamilyDescriptor& d,
                                               const AlphaCovering* cov) {
  const SmoothStep step{3.0};
  std::vector<MemberShape> out;
  switch (d.kind) {
    case FamilyKind::Dilated:
    case FamilyKind::Flat: {
      const double lam =
          d.kind == FamilyKind::Dilated ? d.lambda : std::pow(2.0, static_cast<double>(d.level));
      if (!(lam > 0.0)) throw ConfigError("dilation parameter must be positive");
      MemberShape m;
      m.band = 2.0 * lam;
      m.shape = [lam, step](double xi) { return flat_profile(xi / lam, step); };
      out.push_back(std::move(m));
      break;
    }
    case FamilyKind::DyadicBump:
    case FamilyKind::CombG: {
      std::size_t count = 1;
      long long first = d.level;
      if (d.kind == FamilyKind::CombG) {
        require_coeffs(d);
        count = d.coeffs.size();
        first = d.first;
      }
      for (std::size_t i = 0; i < count; ++i) {
        const long long j = first + static_cast<long long>(i);
        if (j < 0) throw ConfigError("dyadic bump level must be >= 0");
        const double p2 = std::pow(2.0, static_cast<double>(j));
        MemberShape m;
        m.amp = d.kind == FamilyKind::CombG ? d.coeffs[i] : 1.0;
        m.offset = static_cast<double>(j) * d.separation;
        m.band = (4.0 / 3.0) * p2;
        m.shape = [p2, step](double xi) { return annulus_profile(xi / p2, step); };
        out.push_back(std::move(m));
      }
      break;
    }
    case FamilyKind::AlphaBump:
    case FamilyKind::CombF:
    case FamilyKind::LinfComb: {
      if (cov == nullptr) throw ConfigError("window-bump families need a covering");
      if (!(d.rad_frac > 0.0) || d.rad_frac >= 1.0)
        throw CoveringMismatch("window-bump support fraction " + std::to_string(d.rad_frac) +
                               " straddles the window plateau");
      std::size_t count = 1;
      if (d.kind != FamilyKind::AlphaBump) {
        require_coeffs(d);
        count = d.coeffs.size();
      }
      const double plat_t = 0.5 * d.rad_frac * cov->c;
      const double supp_t = d.rad_frac * cov->c;
      const SmoothStep cstep{cov->kappa};
      const double inv_integral = 1.0 / profile_integral(plat_t, supp_t, cstep);
      for (std::size_t i = 0; i < count; ++i) {
        const long long k = d.first + static_cast<long long>(i);
        const auto& wnd = cov->window(k);  // throws when k leaves the covering
        MemberShape m;
        m.amp = d.kind == FamilyKind::AlphaBump ? 1.0 : d.coeffs[i];
        m.offset = d.kind == FamilyKind::CombF ? static_cast<double>(i) * d.separation : 0.0;
        m.band = std::fabs(wnd.mu) + supp_t * wnd.scale;
        m.shape = [mu = wnd.mu, sc = wnd.scale, plat_t, supp_t, inv_integral, cstep](double xi) {
          return inv_integral * plateau_bump((xi - mu) / sc, plat_t, supp_t, cstep);
        };
        out.push_back(std::move(m));
      }
      break;
    }
  }
  return out;
}

inline std::vector<cd> member_spectrum(const MemberShape& m, const Grid& g) {
  if (m.band > 0.98 * g.nyquist())
    throw GridOverflowError("family member band " + std::to_string(m.band) +
                            " exceeds the grid's usable band");
  std::vector<cd> spec(g.N, cd(0.0, 0.0));
  for (std::size_t i = 0; i < g.N; ++i) {
    const double xi = g.xi(i);
    const double v = m.shape(xi);
    if (v == 0.0) continue;
    const double ph = 2.0 * M_PI * m.offset * xi;
    spec[i] = m.amp * v * cd(std::cos(ph), std::sin(ph));
  }
  return spec;
}

inline void check_family_edge_mass(const GridFunction& f, double tol) {
  const Grid& g = f.grid();
  const std::size_t guard = g.N / 32;
  double edge = 0.0, total = 0.0;
  for (std::size_t i = 0; i < g.N; ++i) {
    const double e = std::norm(f.values()[i]);
    total += e;
    if (i < guard || i >= g.N - guard) edge += e;
  }
  if (total > 0.0 && edge > tol * total)
    throw GridOverflowError("family mass reaches the domain edge (fraction " +
                            std::to_string(edge / total) + ")");
}

}  // namespace detail

inline GridFunction make_family(const FamilyDescriptor& d, const Grid& g,
                                const AlphaCovering* cov = nullptr, double edge_mass_tol = 1e-6) {
  const auto members = detail::family_members(d, cov);
  std::vector<cd> spec(g.N, cd(0.0, 0.0));
  for (const auto& m : members) {
    const auto part = detail::member_spectrum(m, g);
    for (std::size_t i = 0; i < g.N; ++i) spec[i] += part[i];
  }
  GridFunction f = GridFunction::from_spectrum(g, std::move(spec));
  detail::check_family_edge_mass(f, edge_mass_tol);
  return f;
}

// Relative cross-member interference of a comb:
//   sum_{i<j} int |f_i||f_j| dx / sum_i int |f_i|^2 dx.
// Streams one member at a time, so memory stays at two real arrays.
inline double comb_interference(const FamilyDescriptor& d, const Grid& g,
                                const AlphaCovering* cov = nullptr) {
  const auto members = detail::family_members(d, cov);
  if (members.size() < 2) return 0.0;
  std::vector<double> sum_abs(g.N, 0.0), sum_sq(g.N, 0.0);
  for (const auto& m : members) {
    GridFunction f = GridFunction::from_spectrum(g, detail::member_spectrum(m, g));
    for (std::size_t i = 0; i < g.N; ++i) {
      const double mag = std::abs(f.values()[i]);
      sum_abs[i] += mag;
      sum_sq[i] += mag * mag;
    }
  }
  double cross = 0.0, total = 0.0;
  for (std::size_t i = 0; i < g.N; ++i) {
    cross += sum_abs[i] * sum_abs[i] - sum_sq[i];
    total += sum_sq[i];
  }
  return total > 0.0 ? 0.5 * cross / total : 0.0;
}

}  // namespace alphamod
