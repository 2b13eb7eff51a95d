#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "alphamod/dyadic.hpp"

using namespace alphamod;

TEST_CASE("dyadic system geometry") {
  Grid g = Grid::make(32.0, 4096);  // band 32
  auto dp = build_dyadic(4, g);
  CHECK(dp.covered_band() == Catch::Approx((4.0 / 3.0) * 16.0));
  CHECK_THROWS_AS(build_dyadic(5, g), ConfigError);  // support 48 > 32
  CHECK_THROWS_AS(build_dyadic(0, g), ConfigError);

  SECTION("plateaus and supports") {
    for (int j = 1; j <= 4; ++j) {
      const double p2 = std::pow(2.0, j);
      CHECK(dp.value(j, p2) == 1.0);
      CHECK(dp.value(j, 0.8 * p2) == 1.0);
      CHECK(dp.value(j, -1.3 * p2) == 1.0);
      CHECK(dp.value(j, 0.66 * p2) == 0.0);
      CHECK(dp.value(j, 1.51 * p2) == 0.0);
    }
    CHECK(dp.value(0, 0.0) == 1.0);
    CHECK(dp.value(0, 1.3) == 1.0);
    CHECK(dp.value(0, 1.51) == 0.0);
    CHECK_THROWS_AS(dp.value(5, 1.0), DomainError);
  }

  SECTION("adjacent-only overlap and exact telescoping") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-dp.covered_band(), dp.covered_band());
    for (int t = 0; t < 400; ++t) {
      const double xi = u(rng);
      double sum = 0.0;
      for (int j = 0; j <= dp.J_max; ++j) sum += dp.value(j, xi);
      CHECK(std::fabs(sum - 1.0) < 1e-15);
      for (int j = 0; j + 2 <= dp.J_max; ++j)
        for (int l = j + 2; l <= dp.J_max; ++l)
          CHECK(dp.value(j, xi) * dp.value(l, xi) == 0.0);
    }
  }
}

TEST_CASE("dyadic blocks reconstruct band-limited data") {
  Grid g = Grid::make(16.0, 4096);  // Nyquist 64 holds the level-5 support 48
  auto dp = build_dyadic(5, g, 12.0);
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cd> spec(g.N, cd(0, 0));
  for (std::size_t m = 0; m < g.N; ++m)
    if (std::fabs(g.xi(m)) <= dp.covered_band()) spec[m] = cd(u(rng), u(rng));
  auto f = GridFunction::from_spectrum(g, std::move(spec));
  std::vector<cd> acc(g.N, cd(0, 0));
  for (int j = 0; j <= dp.J_max; ++j) {
    auto blk = dyadic_block(f, j, dp);
    for (std::size_t m = 0; m < g.N; ++m) acc[m] += blk.spectrum()[m];
  }
  double err = 0.0;
  for (std::size_t m = 0; m < g.N; ++m) err = std::max(err, std::abs(acc[m] - f.spectrum()[m]));
  CHECK(err < 1e-12);
}
