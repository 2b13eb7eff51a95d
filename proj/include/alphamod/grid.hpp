#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <utility>
#include <vector>

#include "alphamod/errors.hpp"
#include "alphamod/fft.hpp"
#include "alphamod/profile.hpp"
#include "alphamod/rational.hpp"

namespace alphamod {

using cd = std::complex<double>;

// Uniform periodic grid on [-L, L) with N samples. Frequencies live on the
// dual grid with spacing 1/(2L); the representable band is |xi| <= N/(4L).
struct Grid {
  double L = 256.0;
  std::size_t N = 65536;

  static Grid make(double L, std::size_t N) {
    if (!(L > 0)) throw ConfigError("grid half-length L must be positive");
    if (!fft::is_pow2(N) || N < 8) throw ConfigError("grid size N must be a power of two >= 8");
    return Grid{L, N};
  }

  double dx() const { return 2.0 * L / static_cast<double>(N); }
  double dxi() const { return 1.0 / (2.0 * L); }
  double nyquist() const { return static_cast<double>(N) / (4.0 * L); }
  double x(std::size_t i) const { return -L + static_cast<double>(i) * dx(); }

  // Signed frequency index of storage bin m (standard wrap-around order).
  long long signed_bin(std::size_t m) const {
    return m < N / 2 ? static_cast<long long>(m) : static_cast<long long>(m) - static_cast<long long>(N);
  }
  double xi(std::size_t m) const { return static_cast<double>(signed_bin(m)) * dxi(); }
  std::size_t bin_of(long long sb) const {
    return static_cast<std::size_t>(sb >= 0 ? sb : sb + static_cast<long long>(N));
  }
  long long min_bin() const { return -static_cast<long long>(N) / 2; }
  long long max_bin() const { return static_cast<long long>(N) / 2 - 1; }

  friend bool operator==(const Grid& a, const Grid& b) { return a.L == b.L && a.N == b.N; }
};

// A function carried on a Grid together with its discrete frequency data.
// Conventions: hat f(xi) = int f(x) e^{-2 pi i x xi} dx, approximated by the
// quadrature sum over samples, so spectrum[m] = dx * (-1)^m * DFT(values)[m]
// and Plancherel holds exactly: sum |f|^2 dx = sum |hat f|^2 dxi.
class GridFunction {
 public:
  static GridFunction from_physical(const Grid& g, std::vector<cd> values) {
    if (values.size() != g.N) throw ConfigError("sample count does not match grid");
    std::vector<cd> spec = values;
    fft::transform_pow2(spec, false);
    const double dx = g.dx();
    for (std::size_t m = 0; m < g.N; ++m) spec[m] *= (m & 1) ? -dx : dx;
    return GridFunction(g, std::move(values), std::move(spec));
  }

  static GridFunction from_spectrum(const Grid& g, std::vector<cd> spectrum) {
    if (spectrum.size() != g.N) throw ConfigError("spectrum size does not match grid");
    std::vector<cd> phys(g.N);
    for (std::size_t m = 0; m < g.N; ++m) phys[m] = (m & 1) ? -spectrum[m] : spectrum[m];
    fft::transform_pow2(phys, true);
    const double dxi = g.dxi();
    for (auto& v : phys) v *= dxi;
    return GridFunction(g, std::move(phys), std::move(spectrum));
  }

  const Grid& grid() const { return grid_; }
  const std::vector<cd>& values() const { return phys_; }
  const std::vector<cd>& spectrum() const { return spec_; }

 private:
  GridFunction(const Grid& g, std::vector<cd> phys, std::vector<cd> spec)
      : grid_(g), phys_(std::move(phys)), spec_(std::move(spec)) {}

  Grid grid_;
  std::vector<cd> phys_, spec_;
};

// Quadrature Lebesgue (quasi-)norm, sup form at p = inf.
inline double lebesgue_norm(const GridFunction& f, const Exponent& p) {
  if (p.is_infinite()) {
    double m = 0.0;
    for (const auto& v : f.values()) m = std::max(m, std::abs(v));
    return m;
  }
  const double pd = p.p_double();
  const double dx = f.grid().dx();
  double acc = 0.0;
  for (const auto& v : f.values()) acc += std::pow(std::abs(v), pd) * dx;
  return std::pow(acc, 1.0 / pd);
}

// A real spectral window given on a contiguous span of signed bins. Values
// off the span are zero.
struct SpectralWindow {
  long long lo = 0;  // first signed bin
  std::vector<double> w;

  long long hi() const { return lo + static_cast<long long>(w.size()) - 1; }

  // Samples fn on all bins whose frequencies lie in [xi_lo, xi_hi].
  template <class Fn>
  static SpectralWindow from_function(const Grid& g, double xi_lo, double xi_hi, Fn&& fn) {
    if (!(xi_lo <= xi_hi)) throw DomainError("empty window range");
    long long lo = static_cast<long long>(std::ceil(xi_lo / g.dxi() - 1e-12));
    long long hi = static_cast<long long>(std::floor(xi_hi / g.dxi() + 1e-12));
    lo = std::max(lo, g.min_bin());
    hi = std::min(hi, g.max_bin());
    SpectralWindow out;
    out.lo = lo;
    if (hi < lo) return out;
    out.w.resize(static_cast<std::size_t>(hi - lo + 1));
    for (long long sb = lo; sb <= hi; ++sb)
      out.w[static_cast<std::size_t>(sb - lo)] = fn(static_cast<double>(sb) * g.dxi());
    return out;
  }

  static SpectralWindow full_axis(const Grid& g, double value = 1.0) {
    SpectralWindow out;
    out.lo = g.min_bin();
    out.w.assign(g.N, value);
    return out;
  }
};

// Fourier multiplier with symbol given by the window (zero off the span).
inline GridFunction apply_multiplier(const GridFunction& f, const SpectralWindow& win) {
  const Grid& g = f.grid();
  std::vector<cd> spec(g.N, cd(0.0, 0.0));
  for (long long sb = std::max(win.lo, g.min_bin()); sb <= std::min(win.hi(), g.max_bin()); ++sb) {
    const std::size_t m = g.bin_of(sb);
    spec[m] = f.spectrum()[m] * win.w[static_cast<std::size_t>(sb - win.lo)];
  }
  return GridFunction::from_spectrum(g, std::move(spec));
}

// Periodic convolution: exact under the quadrature transform conventions,
// since the spectrum of f*g is the product of the spectra.
inline GridFunction convolve(const GridFunction& a, const GridFunction& b) {
  if (!(a.grid() == b.grid())) throw ConfigError("convolution operands live on different grids");
  std::vector<cd> spec(a.grid().N);
  for (std::size_t m = 0; m < spec.size(); ++m) spec[m] = a.spectrum()[m] * b.spectrum()[m];
  return GridFunction::from_spectrum(a.grid(), std::move(spec));
}

// Fraction of spectral energy strictly outside the symmetric band [-Xi, Xi].
inline double band_energy_fraction(const GridFunction& f, double Xi) {
  if (!(Xi >= 0)) throw DomainError("band edge must be >= 0");
  double total = 0.0, outside = 0.0;
  const Grid& g = f.grid();
  for (std::size_t m = 0; m < g.N; ++m) {
    const double e = std::norm(f.spectrum()[m]);
    total += e;
    if (std::fabs(g.xi(m)) > Xi) outside += e;
  }
  return total > 0.0 ? outside / total : 0.0;
}

// Closed-form synthesis descriptors. All constructions are spectral: the
// spectrum is evaluated analytically on the dual grid, translations becoming
// exact phase factors, so synthesized data is deterministic and alias-free
// whenever the band fits under the Nyquist limit.
struct SynthSpec {
  enum class Kind { Gaussian, SmoothBump, Modulated, Translated, Dilated };

  Kind kind = Kind::Gaussian;
  double radius = 1.0;  // SmoothBump support radius (plateau at radius/2)
  double kappa = 3.0;   // SmoothBump steepness
  double shift = 0.0;   // Modulated: frequency offset; Translated: spatial offset
  double scale = 1.0;   // Dilated: lambda > 0
  std::shared_ptr<const SynthSpec> base;

  static SynthSpec gaussian() { return SynthSpec{}; }
  static SynthSpec smooth_bump(double radius, double kappa = 3.0) {
    if (!(radius > 0)) throw DomainError("bump radius must be positive");
    SynthSpec s;
    s.kind = Kind::SmoothBump;
    s.radius = radius;
    s.kappa = kappa;
    return s;
  }
  static SynthSpec modulated(SynthSpec b, double xi0) {
    SynthSpec s;
    s.kind = Kind::Modulated;
    s.shift = xi0;
    s.base = std::make_shared<const SynthSpec>(std::move(b));
    return s;
  }
  static SynthSpec translated(SynthSpec b, double x0) {
    SynthSpec s;
    s.kind = Kind::Translated;
    s.shift = x0;
    s.base = std::make_shared<const SynthSpec>(std::move(b));
    return s;
  }
  static SynthSpec dilated(SynthSpec b, double lambda) {
    if (!(lambda > 0)) throw DomainError("dilation factor must be positive");
    SynthSpec s;
    s.kind = Kind::Dilated;
    s.scale = lambda;
    s.base = std::make_shared<const SynthSpec>(std::move(b));
    return s;
  }

  cd spectrum_at(double xi) const {
    switch (kind) {
      case Kind::Gaussian:
        return cd(std::exp(-M_PI * xi * xi), 0.0);
      case Kind::SmoothBump:
        return cd(plateau_bump(xi, 0.5 * radius, radius, SmoothStep{kappa}), 0.0);
      case Kind::Modulated:
        return base->spectrum_at(xi - shift);
      case Kind::Translated: {
        // shift by x0 means f(x - x0), i.e. phase e^{-2 pi i x0 xi}
        const double ph = -2.0 * M_PI * shift * xi;
        return base->spectrum_at(xi) * cd(std::cos(ph), std::sin(ph));
      }
      case Kind::Dilated:
        return base->spectrum_at(xi / scale);
    }
    throw DomainError("unknown synthesis kind");
  }

  double band_extent() const {
    switch (kind) {
      case Kind::Gaussian: return 7.0;
      case Kind::SmoothBump: return radius;
      case Kind::Modulated: return base->band_extent() + std::fabs(shift);
      case Kind::Translated: return base->band_extent();
      case Kind::Dilated: return base->band_extent() * scale;
    }
    return 0.0;
  }

  double space_extent() const {
    switch (kind) {
      case Kind::Gaussian: return 7.0;
      case Kind::SmoothBump: return 80.0 / radius;
      case Kind::Modulated: return base->space_extent();
      case Kind::Translated: return base->space_extent() + std::fabs(shift);
      case Kind::Dilated: return base->space_extent() / scale;
    }
    return 0.0;
  }
};

// Builds the described function on the grid. Throws GridOverflowError when
// the construction escapes the representable band or the periodic box.
inline GridFunction synthesize(const Grid& g, const SynthSpec& spec,
                               double edge_mass_tol = 1e-6) {
  if (spec.band_extent() > 0.98 * g.nyquist())
    throw GridOverflowError("spectral support exceeds the grid band");
  if (spec.space_extent() > 0.95 * g.L)
    throw GridOverflowError("spatial support exceeds the grid box");
  std::vector<cd> s(g.N);
  for (std::size_t m = 0; m < g.N; ++m) s[m] = spec.spectrum_at(g.xi(m));
  GridFunction f = GridFunction::from_spectrum(g, std::move(s));
  // The box must actually contain the function: check mass near the edges.
  double edge = 0.0, total = 0.0;
  const std::size_t guard = g.N / 32;
  for (std::size_t i = 0; i < g.N; ++i) {
    const double e = std::norm(f.values()[i]);
    total += e;
    if (i < guard || i >= g.N - guard) edge += e;
  }
  if (total > 0.0 && edge / total > edge_mass_tol)
    throw GridOverflowError("function mass reaches the periodic boundary");
  return f;
}

}  // namespace alphamod
