#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "alphamod/norms.hpp"

using namespace alphamod;

namespace {

GridFunction stock_function(const Grid& g, double band, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cd> spec(g.N, cd(0, 0));
  const SmoothStep step{3.0};
  for (std::size_t m = 0; m < g.N; ++m) {
    const double xi = g.xi(m);
    if (std::fabs(xi) <= band)
      spec[m] = cd(u(rng), u(rng)) * plateau_bump(xi, 0.7 * band, band, step);
  }
  return GridFunction::from_spectrum(g, std::move(spec));
}

double l2_norm(const GridFunction& f) { return lebesgue_norm(f, Exponent::from_p(Rational(2))); }

const Exponent p2 = Exponent::from_p(Rational(2));
const Exponent q1 = Exponent::from_p(Rational(1));
const Exponent qinf = Exponent::infinity();

}  // namespace

TEST_CASE("block-sum norm at p=q=2, s=0 stays close to the energy norm") {
  Grid g = Grid::make(32.0, 8192);
  for (auto alpha : {Rational(0), Rational(1, 2), Rational(2, 3)}) {
    auto cov = build_alpha_covering(alpha, K_max_for_band(alpha, g.nyquist()));
    for (std::uint64_t seed : {1ULL, 2ULL}) {
      auto f = stock_function(g, 0.8 * std::min(cov.covered_band(), g.nyquist()), seed);
      const double ratio = alpha_modulation_norm(f, p2, p2, Rational(0), cov) / l2_norm(f);
      CAPTURE(to_string(alpha), seed, ratio);
      CHECK(ratio >= 0.9);
      CHECK(ratio <= 1.1);
    }
  }
}

TEST_CASE("dyadic norms at p=q=2, s=0 stay close to the energy norm") {
  Grid g = Grid::make(32.0, 8192);
  auto dp = build_dyadic(5, g);
  auto f = stock_function(g, 0.9 * dp.covered_band(), 3);
  const double l2 = l2_norm(f);
  const double b = besov_norm(f, p2, p2, Rational(0), dp);
  const double t = triebel_norm(f, p2, p2, Rational(0), dp);
  CHECK(b / l2 >= 0.99);
  CHECK(b / l2 <= 1.01);
  CHECK(t == Catch::Approx(b).epsilon(1e-12));  // p = q = 2 coincide
}

TEST_CASE("block-sum norm structural properties") {
  Grid g = Grid::make(32.0, 8192);
  auto cov = build_alpha_covering(Rational(1, 2), K_max_for_band(Rational(1, 2), g.nyquist()));
  auto f = stock_function(g, 0.7 * g.nyquist(), 5);

  SECTION("monotone in q and s, homogeneous") {
    const double n_q1 = alpha_modulation_norm(f, p2, q1, Rational(0), cov);
    const double n_q2 = alpha_modulation_norm(f, p2, p2, Rational(0), cov);
    const double n_qi = alpha_modulation_norm(f, p2, qinf, Rational(0), cov);
    CHECK(n_q1 >= n_q2 * (1 - 1e-12));
    CHECK(n_q2 >= n_qi * (1 - 1e-12));

    const double s_lo = alpha_modulation_norm(f, p2, p2, Rational(-1, 2), cov);
    const double s_hi = alpha_modulation_norm(f, p2, p2, Rational(1, 2), cov);
    CHECK(s_hi >= s_lo);

    std::vector<cd> scaled(g.N);
    for (std::size_t m = 0; m < g.N; ++m) scaled[m] = 3.0 * f.spectrum()[m];
    auto f3 = GridFunction::from_spectrum(g, std::move(scaled));
    CHECK(alpha_modulation_norm(f3, p2, p2, Rational(0), cov) ==
          Catch::Approx(3.0 * n_q2).epsilon(1e-12));
  }

  SECTION("zoomed and full block evaluation agree") {
    NormOptions zoom;
    zoom.zoom_oversample = 8;
    const double full2 = alpha_modulation_norm(f, p2, p2, Rational(1, 4), cov);
    const double fast2 = alpha_modulation_norm(f, p2, p2, Rational(1, 4), cov, zoom);
    CHECK(fast2 == Catch::Approx(full2).epsilon(1e-9));  // p=2: quadrature is exact

    const double full1 = alpha_modulation_norm(f, q1, p2, Rational(0), cov);
    const double fast1 = alpha_modulation_norm(f, q1, p2, Rational(0), cov, zoom);
    CHECK(fast1 == Catch::Approx(full1).epsilon(5e-3));

    const double fulli = alpha_modulation_norm(f, qinf, p2, Rational(0), cov);
    const double fasti = alpha_modulation_norm(f, qinf, p2, Rational(0), cov, zoom);
    CHECK(fasti == Catch::Approx(fulli).epsilon(5e-3));
  }

  SECTION("band guard") {
    auto tight = build_alpha_covering(Rational(1, 2), 3);
    CHECK_THROWS_AS(alpha_modulation_norm(f, p2, p2, Rational(0), tight), InsufficientCovering);
  }
}

TEST_CASE("sum-inside norm domain") {
  Grid g = Grid::make(16.0, 2048);
  auto dp = build_dyadic(3, g);
  auto f = stock_function(g, 8.0, 7);
  CHECK_THROWS_AS(triebel_norm(f, qinf, p2, Rational(0), dp), DomainError);
  CHECK(local_hardy_norm(f, q1, dp) > 0.0);
}

TEST_CASE("maximal form") {
  Grid g = Grid::make(16.0, 2048);
  auto f = synthesize(g, SynthSpec::gaussian());
  const double m1 = maximal_hardy_norm(f, q1, gaussian_kernel_spectrum);
  const double l1 = lebesgue_norm(f, q1);
  CHECK(m1 >= 0.5 * l1);
  CHECK(m1 <= 4.0 * l1);

  CHECK_THROWS_AS(
      maximal_hardy_norm(f, q1, [](double xi) { return xi * std::exp(-xi * xi); }),
      KernelMeanZero);
  MaximalOptions bad;
  bad.t_min = 0.5;
  bad.t_max = 0.4;
  CHECK_THROWS_AS(maximal_hardy_norm(f, q1, gaussian_kernel_spectrum, bad), ConfigError);
}
