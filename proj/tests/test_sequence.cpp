#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "alphamod/sequence.hpp"

using namespace alphamod;

TEST_CASE("sequence norm pinned values") {
  SECTION("dyadic weights") {
    auto a = WeightedSequence::from_terms({{0, 1.0}, {1, 1.0}});
    CHECK(seq_norm(a, Exponent::from_p(Rational(1)), Rational(2), Rational(1)) ==
          Catch::Approx(5.0).epsilon(1e-13));
  }
  SECTION("polynomial weights carry the 1/(1-alpha) exponent") {
    auto a = WeightedSequence::from_terms({{1, 1.0}});
    CHECK(seq_norm(a, Exponent::from_p(Rational(2)), Rational(1), Rational(1, 2)) ==
          Catch::Approx(2.0).epsilon(1e-13));
  }
  SECTION("sup form") {
    auto a = WeightedSequence::from_terms({{0, 3.0}, {2, 1.0}});
    CHECK(seq_norm(a, Exponent::infinity(), Rational(0), Rational(0)) ==
          Catch::Approx(3.0).epsilon(1e-13));
  }
}

TEST_CASE("sequence norm properties") {
  std::mt19937_64 rng(91);
  std::uniform_real_distribution<double> mag(0.1, 4.0);
  for (int trial = 0; trial < 24; ++trial) {
    std::vector<std::pair<long long, double>> t1, t2;
    for (long long k = -6; k <= 6; ++k) {
      t1.push_back({k, mag(rng)});
      t2.push_back({k, mag(rng)});
    }
    auto a = WeightedSequence::from_terms(t1);
    auto b = WeightedSequence::from_terms(t2);
    Rational s(trial % 5 - 2, 2);
    Rational alpha(trial % 3, 4);

    double n1 = seq_norm(a, Exponent::from_p(Rational(1, 2)), s, alpha);
    double n2 = seq_norm(a, Exponent::from_p(Rational(1)), s, alpha);
    double n3 = seq_norm(a, Exponent::from_p(Rational(2)), s, alpha);
    double n4 = seq_norm(a, Exponent::infinity(), s, alpha);
    CHECK(n1 >= n2 * (1 - 1e-12));
    CHECK(n2 >= n3 * (1 - 1e-12));
    CHECK(n3 >= n4 * (1 - 1e-12));

    // quasi-triangle inequality at p <= 1: ||a+b||^p <= ||a||^p + ||b||^p
    std::vector<std::pair<long long, double>> sum;
    for (std::size_t i = 0; i < t1.size(); ++i) sum.push_back({t1[i].first, t1[i].second + t2[i].second});
    auto c = WeightedSequence::from_terms(sum);
    for (Rational p : {Rational(1, 2), Rational(2, 3), Rational(1)}) {
      double pd = to_double(p);
      double lhs = std::pow(seq_norm(c, Exponent::from_p(p), s, alpha), pd);
      double rhs = std::pow(seq_norm(a, Exponent::from_p(p), s, alpha), pd) +
                   std::pow(seq_norm(b, Exponent::from_p(p), s, alpha), pd);
      CHECK(lhs <= rhs * (1 + 1e-12));
    }

    // homogeneity
    std::vector<std::pair<long long, double>> scaled;
    for (auto& [k, v] : t1) scaled.push_back({k, 3.0 * v});
    CHECK(seq_norm(WeightedSequence::from_terms(scaled), Exponent::from_p(Rational(2)), s, alpha) ==
          Catch::Approx(3.0 * n3).epsilon(1e-12));
  }
}

TEST_CASE("sequence norm domain checks") {
  CHECK_THROWS_AS(WeightedSequence::from_terms({{0, -1.0}}), DomainError);
  auto neg = WeightedSequence::from_terms({{-1, 1.0}});
  CHECK_THROWS_AS(seq_norm(neg, Exponent::from_p(Rational(1)), Rational(0), Rational(1)),
                  DomainError);
  CHECK_NOTHROW(seq_norm(neg, Exponent::from_p(Rational(1)), Rational(0), Rational(1, 2)));
}
