#include <catch2/catch_amalgamated.hpp>

#include <alphamod/experiments.hpp>

using namespace alphamod;

TEST_CASE("measurement rows serialize to a stable CSV layout") {
  std::vector<Measurement> rows;
  rows.push_back({"dilation-scaling", "dilated", "lambda", 0.25, "lebesgue_norm[p=2]", 1.5});
  rows.push_back({"shell-cardinality", "shell", "level", 4.0, "window_count", 23.0});
  const std::string csv = measurements_to_csv(rows);
  CHECK(csv.rfind("experiment,family,param_name,param_value,quantity,value\n", 0) == 0);
  CHECK(csv.find("dilation-scaling,dilated,lambda,0.25,lebesgue_norm[p=2],1.5") != std::string::npos);
  CHECK(csv.find("shell-cardinality,shell,level,4,window_count,23") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("dilation scaling recovers the Lebesgue exponents and the direction") {
  DilationParams prm;
  prm.L = 512.0;
  prm.N = 1u << 17;
  prm.lambdas = {0.5, 0.25, 0.125, 0.0625};

  SECTION("p = 1 against p = 2") {
    const auto rep = run_dilation_scaling(Exponent::from_p(Rational(1)),
                                          Exponent::from_p(Rational(2)), prm);
    CHECK(rep.source.fitted_slope == Catch::Approx(0.0).margin(0.05));
    CHECK(rep.target.fitted_slope == Catch::Approx(0.5).margin(0.05));
    CHECK(rep.direction_predicted);
    CHECK(rep.direction_matches);
    CHECK(rep.pass);
    CHECK(rep.measurements.size() == 8);
  }

  SECTION("the reversed pair predicts and measures no control") {
    const auto rep = run_dilation_scaling(Exponent::from_p(Rational(2)),
                                          Exponent::from_p(Rational(1)), prm);
    CHECK_FALSE(rep.direction_predicted);
    CHECK(rep.direction_matches);
    CHECK(rep.pass);
  }

  SECTION("a quasi-norm exponent keeps the power law") {
    DilationParams wide = prm;
    wide.L = 1024.0;
    wide.N = 1u << 19;
    const auto rep = run_dilation_scaling(Exponent::from_p(Rational(1, 2)),
                                          Exponent::from_p(Rational(1)), wide);
    CHECK(rep.source.fitted_slope == Catch::Approx(-1.0).margin(0.05));
    CHECK(rep.pass);
  }
}

TEST_CASE("shell cardinality grows like the scale to the power 1 - alpha") {
  for (const auto& [num, den, expect] :
       std::vector<std::tuple<int, int, double>>{{0, 1, 1.0}, {1, 2, 0.5}, {2, 3, 1.0 / 3.0}}) {
    const auto rep = run_shell_cardinality(Rational(num, den));
    INFO("alpha = " << num << "/" << den);
    CHECK(rep.fitted_slope == Catch::Approx(expect).margin(0.1));
    CHECK(rep.pass);
    CHECK(rep.measurements.size() == 9);
  }
}

TEST_CASE("covering verification wraps the partition report into gates") {
  const auto rep = run_covering_verification(Rational(1, 2), 64);
  CHECK(rep.pass);
  CHECK(rep.gates.size() == 5);
  const auto j = rep.to_json();
  CHECK(j["kind"] == "covering-verification");
  CHECK(j["conditions"]["partition_exact"].get<bool>());
}

TEST_CASE("the p = q = 2 block sum tracks the plain L2 norm") {
  PlancherelParams prm;
  prm.count = 6;
  for (const Rational alpha : {Rational(0), Rational(1, 2)}) {
    const auto rep = run_plancherel(alpha, prm);
    INFO("alpha = " << to_string(alpha));
    CHECK(rep.pass);
    for (double r : rep.ratios) {
      CHECK(r > 0.9);
      CHECK(r < 1.1);
    }
  }
}

TEST_CASE("translated comb norms match their weighted sequence models") {
  SECTION("dyadic comb into the block scale") {
    CombEquivParams prm;
    prm.alpha = Rational(0);
    prm.p = Exponent::from_p(Rational(1));
    prm.q = Exponent::from_p(Rational(1));
    prm.trials = 4;
    const auto rep = run_comb_equivalence(CombCase::GToMod, prm);
    CHECK(rep.pass);
    CHECK(rep.spread <= 4.0);
  }
  SECTION("dyadic comb into the local Hardy scale") {
    CombEquivParams prm;
    prm.p = Exponent::from_p(Rational(1));
    prm.trials = 3;
    const auto rep = run_comb_equivalence(CombCase::GToHardy, prm);
    CHECK(rep.pass);
  }
  SECTION("window comb into the block scale") {
    CombEquivParams prm;
    prm.alpha = Rational(1, 2);
    prm.p = Exponent::from_p(Rational(2));
    prm.q = Exponent::infinity();
    prm.trials = 4;
    const auto rep = run_comb_equivalence(CombCase::FToMod, prm);
    CHECK(rep.pass);
  }
  SECTION("window comb into the quasi-norm Hardy scale") {
    CombEquivParams prm;
    prm.alpha = Rational(1, 2);
    prm.p = Exponent::from_p(Rational(1, 2));
    prm.trials = 3;
    const auto rep = run_comb_equivalence(CombCase::FToHardyQuasi, prm);
    CHECK(rep.pass);
  }
}

TEST_CASE("atom block norms stay flat across cube sizes") {
  AtomSweepParams prm;
  prm.sizes = 8;
  prm.lo = 1.0 / 32.0;
  prm.hi = 2.0;
  const auto rep = run_atom_bound_sweep(Exponent::from_p(Rational(1)), Rational(1, 2),
                                        AtomBoundCase::SupWeight, prm);
  INFO("slope " << rep.fitted_slope << " max/median " << rep.max_over_median);
  CHECK(rep.atoms == 8);
  CHECK(rep.rejected == 0);
  CHECK(rep.pass);
  const auto j = rep.to_json();
  CHECK(j["q"] == "inf");
  CHECK(j["s"] == "0");
}

TEST_CASE("sharpness probes separate growth above the threshold from below") {
  SECTION("dyadic-bump ladder at the Lebesgue corner") {
    ProbeParams prm;  // p1 = p2 = 1, q2 = inf, alpha = 0
    const auto rep = run_sharpness_probe(ProbeBranch::LowerIndex, prm);
    INFO("above " << rep.exponent_above << " below " << rep.exponent_below);
    CHECK(rep.exponent_above >= 0.1);
    CHECK(rep.exponent_below <= 0.02);
    CHECK(rep.pass);
    CHECK(rep.threshold == Rational(0));
  }
  SECTION("window-bump ladder at the self-dual point") {
    ProbeParams prm;
    prm.p1 = Exponent::from_p(Rational(2));
    prm.p2 = Exponent::from_p(Rational(2));
    prm.alpha = Rational(1, 2);
    prm.L = 64.0;
    prm.N = 1u << 17;
    const auto rep = run_sharpness_probe(ProbeBranch::AlphaIndex, prm);
    INFO("above " << rep.exponent_above << " below " << rep.exponent_below);
    CHECK(rep.pass);
  }
}

TEST_CASE("the dilation direction probe matches the index verdict") {
  SECTION("shrinking support escapes a smaller target exponent") {
    const auto rep = run_direction_probe(Exponent::from_p(Rational(2)),
                                         Exponent::from_p(Rational(1)));
    CHECK(rep.exponent == Catch::Approx(-0.5).margin(0.1));
    CHECK(rep.diverges);
    CHECK(rep.predicted_diverges);
    CHECK(rep.pass);
  }
  SECTION("the reverse pair stays bounded") {
    const auto rep = run_direction_probe(Exponent::from_p(Rational(1)),
                                         Exponent::from_p(Rational(2)));
    CHECK_FALSE(rep.diverges);
    CHECK(rep.pass);
  }
}

TEST_CASE("flat spectra drive the critical block sum up at fixed L1 size") {
  const auto rep = run_l1_flat_divergence();
  for (const auto& gate : rep.gates) {
    INFO(gate.name << " = " << gate.value);
    CHECK(gate.pass);
  }
  CHECK(rep.pass);
  CHECK(rep.extra["s_critical"] == "-1/2");
}

TEST_CASE("normalized peak combs escape the sup-norm embedding") {
  const auto rep = run_linf_comb_divergence();
  CHECK(rep.pass);
  CHECK(rep.extra["fitted_exponent"].get<double>() == Catch::Approx(0.5).margin(0.05));
}

TEST_CASE("maximal and block Hardy norms agree on window bumps") {
  const auto rep = run_hardy_consistency(Exponent::from_p(Rational(1)));
  INFO("spread " << rep.spread);
  CHECK(rep.pass);
  CHECK(rep.ratios.size() == 10);
}

TEST_CASE("convolution norms scale with the spectral radius, not the center") {
  SECTION("p = 1 is scale free") {
    const auto rep = run_young_scaling(Exponent::from_p(Rational(1)));
    CHECK(rep.per_center.front().fitted_slope == Catch::Approx(0.0).margin(0.1));
    CHECK(rep.pass);
  }
  SECTION("p = 1/2 gains half a power per doubling, squared") {
    const auto rep = run_young_scaling(Exponent::from_p(Rational(1, 2)));
    CHECK(rep.per_center.front().fitted_slope == Catch::Approx(1.0).margin(0.1));
    CHECK(rep.ratio_drift <= 0.02);
    CHECK(rep.pass);
  }
}

TEST_CASE("experiment reports are deterministic") {
  const auto a = run_shell_cardinality(Rational(1, 2));
  const auto b = run_shell_cardinality(Rational(1, 2));
  CHECK(a.to_json().dump() == b.to_json().dump());
  CHECK(measurements_to_csv(a.measurements) == measurements_to_csv(b.measurements));

  PlancherelParams prm;
  prm.count = 3;
  const auto c = run_plancherel(Rational(1, 4), prm);
  const auto d = run_plancherel(Rational(1, 4), prm);
  CHECK(c.to_json().dump() == d.to_json().dump());
}
