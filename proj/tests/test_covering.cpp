#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "alphamod/covering.hpp"

using namespace alphamod;

TEST_CASE("window geometry at pinned points") {
  auto cov = build_alpha_covering(Rational(1, 2), 8);
  const auto& w3 = cov.window(3);
  const double root10 = std::sqrt(10.0);
  CHECK(w3.mu == Catch::Approx(3.0 * root10).epsilon(1e-14));
  CHECK(w3.scale == Catch::Approx(root10).epsilon(1e-14));
  CHECK(w3.plateau == Catch::Approx(0.45 * root10).epsilon(1e-14));
  CHECK(cov.C == Catch::Approx(1.9).epsilon(1e-14));
  const auto& w8 = cov.window(8);  // outermost: support radius is C * scale
  CHECK(w8.hi - w8.mu == Catch::Approx(cov.C * w8.scale).epsilon(1e-12));

  auto flat = build_alpha_covering(Rational(0), 8);
  CHECK(flat.window(5).mu == Catch::Approx(5.0));
  CHECK(flat.window(5).scale == Catch::Approx(1.0));
  CHECK(flat.window(-5).mu == Catch::Approx(-5.0));
}

TEST_CASE("plateau exactness, support, and partition") {
  for (auto alpha : {Rational(0), Rational(1, 2), Rational(2, 3)}) {
    auto cov = build_alpha_covering(alpha, 16);
    CAPTURE(to_string(alpha));
    for (long long k : {-16LL, -5LL, 0LL, 3LL, 16LL}) {
      const auto& w = cov.window(k);
      for (double t : {-0.99, -0.5, 0.0, 0.5, 0.99})
        CHECK(cov.value(k, w.mu + t * w.plateau) == 1.0);
      CHECK(cov.raw_value(k, w.hi + 1e-9 * w.scale) == 0.0);
      CHECK(cov.raw_value(k, w.lo - 1e-9 * w.scale) == 0.0);
    }
    const double B = cov.covered_band();
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-B, B);
    for (int t = 0; t < 512; ++t) {
      const double xi = u(rng);
      double sum = 0.0;
      int nonzero = 0;
      for (long long k = -cov.K_max; k <= cov.K_max; ++k) {
        const double v = cov.value(k, xi);
        sum += v;
        if (v > 0) ++nonzero;
      }
      CHECK(std::fabs(sum - 1.0) < 1e-12);
      CHECK(nonzero <= 2);
      CHECK(cov.raw_sum(xi) >= 1e-6);
    }
  }
}

TEST_CASE("verification report") {
  VerifyOptions vo;
  vo.samples_per_window = 512;
  for (auto alpha : {Rational(0), Rational(1, 2), Rational(2, 3)}) {
    auto cov = build_alpha_covering(alpha, 24);
    auto rep = verify_covering(cov, vo);
    CAPTURE(to_string(alpha), rep.slope_first, rep.slope_second, rep.max_partition_defect);
    CHECK(rep.inner_exact);
    CHECK(rep.support_contained);
    CHECK(rep.partition_exact);
    CHECK(rep.derivative_scaling);
    CHECK(rep.overlap_bounded);
    CHECK(rep.pass);
    CHECK(std::fabs(rep.slope_first - rep.expected_slope_first) <= 0.1);
    CHECK(std::fabs(rep.slope_second - rep.expected_slope_second) <= 0.2);
  }
}

TEST_CASE("corrupted window is detected") {
  auto cov = build_alpha_covering(Rational(1, 2), 12);
  cov.win[cov.arr_of(4)].hi += 0.5 * cov.window(4).scale;
  VerifyOptions vo;
  vo.samples_per_window = 256;
  auto rep = verify_covering(cov, vo);
  CHECK_FALSE(rep.support_contained);
  CHECK_FALSE(rep.pass);
  // The widened edge rolls off smoothly, so the measured excess is a bit
  // under the 0.5 * scale widening but still far above sampling noise.
  CHECK(rep.max_support_excess > 0.15);
}

TEST_CASE("infeasible build options fail loudly") {
  CHECK_THROWS_AS(build_alpha_covering(Rational(0), 16, {.c = 0.9, .C = 0.91}), CoveringGapError);
  CHECK_THROWS_AS(build_alpha_covering(Rational(1, 2), 16, {.c = 0.9, .C = 0.91}), CoveringGapError);
  CHECK_THROWS_AS(build_alpha_covering(Rational(0), 16, {.c = 0.45, .C = 0.46}), CoveringGapError);
  CHECK_THROWS_AS(build_alpha_covering(Rational(1), 16), ConfigError);
  CHECK_THROWS_AS(build_alpha_covering(Rational(-1, 4), 16), ConfigError);
  CHECK_THROWS_AS(build_alpha_covering(Rational(1, 2), 0), ConfigError);
  CHECK_THROWS_AS(build_alpha_covering(Rational(1, 2), 4, {.required_band = 1e6}), ConfigError);
  auto cov = build_alpha_covering(Rational(1, 2), 4);
  CHECK_THROWS_AS(cov.window(5), IndexOutOfCovering);
  CHECK_THROWS_AS(cov.window(-5), IndexOutOfCovering);
}

TEST_CASE("shell index sets") {
  auto cov = build_alpha_covering(Rational(0), 64);
  auto gamma3 = shell_indices(cov, 3, ShellKind::Intersecting);
  CHECK(gamma3.size() == 12);
  for (long long k : gamma3) CHECK((std::llabs(k) >= 6 && std::llabs(k) <= 11));
  auto tight3 = shell_indices(cov, 3, ShellKind::Contained);
  REQUIRE(tight3.size() == 2);
  CHECK(tight3.front() == -8);
  CHECK(tight3.back() == 8);
  for (long long k : tight3) CHECK(std::count(gamma3.begin(), gamma3.end(), k) == 1);
  CHECK_THROWS_AS(shell_indices(cov, 9, ShellKind::Intersecting), ShellOutOfCovering);
  CHECK_THROWS_AS(shell_indices(cov, -1, ShellKind::Intersecting), DomainError);

  SECTION("cardinality growth matches the covering density") {
    for (auto alpha : {Rational(0), Rational(1, 2)}) {
      const double am = to_double(alpha);
      long long K = K_max_for_band(alpha, (4.0 / 3.0) * std::pow(2.0, 10.0) * 1.01);
      auto c2 = build_alpha_covering(alpha, K);
      std::vector<double> xs, ys;
      for (int j = 5; j <= 10; ++j) {
        auto s = shell_indices(c2, j, ShellKind::Intersecting);
        REQUIRE_FALSE(s.empty());
        xs.push_back(static_cast<double>(j));
        ys.push_back(std::log2(static_cast<double>(s.size())));
      }
      double mx = 0, my = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
      mx /= xs.size();
      my /= ys.size();
      double num = 0, den = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
      }
      CAPTURE(to_double(alpha), num / den);
      CHECK(std::fabs(num / den - (1.0 - am)) < 0.1);
    }
  }
}

TEST_CASE("K_max_for_band") {
  CHECK(K_max_for_band(Rational(0), 10.0) == 10);
  auto cov = build_alpha_covering(Rational(1, 2), K_max_for_band(Rational(1, 2), 100.0));
  CHECK(cov.covered_band() >= 100.0);
  auto smaller = build_alpha_covering(Rational(1, 2), cov.K_max - 1);
  CHECK(smaller.covered_band() < 100.0);
}

TEST_CASE("blocks reconstruct and factor through rough caps") {
  Grid g = Grid::make(32.0, 4096);
  auto cov = build_alpha_covering(Rational(1, 2), K_max_for_band(Rational(1, 2), 0.9 * g.nyquist()));
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cd> spec(g.N, cd(0, 0));
  for (std::size_t m = 0; m < g.N; ++m)
    if (std::fabs(g.xi(m)) < 0.8 * cov.covered_band() && std::fabs(g.xi(m)) < 0.8 * g.nyquist())
      spec[m] = cd(u(rng), u(rng));
  auto f = GridFunction::from_spectrum(g, std::move(spec));

  std::vector<cd> acc(g.N, cd(0, 0));
  for (long long k = -cov.K_max; k <= cov.K_max; ++k) {
    const auto& w = cov.window(k);
    if (w.lo > g.nyquist() || w.hi < -g.nyquist()) continue;
    auto blk = alpha_block(f, k, cov);
    for (std::size_t m = 0; m < g.N; ++m) acc[m] += blk.spectrum()[m];
  }
  double err = 0.0;
  for (std::size_t m = 0; m < g.N; ++m) err = std::max(err, std::abs(acc[m] - f.spectrum()[m]));
  CHECK(err < 1e-12);

  auto canonical = alpha_block(f, 2, cov);
  auto refined = alpha_block(canonical, 2, cov, BlockProfile::Rough);
  double derr = 0.0;
  for (std::size_t m = 0; m < g.N; ++m)
    derr = std::max(derr, std::abs(refined.spectrum()[m] - canonical.spectrum()[m]));
  CHECK(derr < 1e-12);
}
