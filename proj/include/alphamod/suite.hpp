#pragma once

#include <chrono>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "alphamod/config.hpp"
#include "alphamod/experiments.hpp"

namespace alphamod {

// One executed suite entry: the experiment bundle's verdict, its JSON
// reports (an array, one element per case), and the measurement rows.
struct SuiteOutcome {
  std::string name;
  bool pass = false;
  nlohmann::json reports = nlohmann::json::array();
  std::vector<Measurement> rows;
  double seconds = 0.0;
};

namespace detail {

inline void absorb(SuiteOutcome& out, bool pass, nlohmann::json report,
                   const std::vector<Measurement>& rows) {
  out.pass = out.pass && pass;
  out.reports.push_back(std::move(report));
  out.rows.insert(out.rows.end(), rows.begin(), rows.end());
}

}  // namespace detail

// Runs the named experiment bundle. Each bundle fixes its own grid and case
// matrix where the scaling budget demands it; the config contributes the
// covering parameters, the seed, and the optional per-experiment overrides.
inline SuiteOutcome run_suite_experiment(const ExperimentChoice& choice, const RunConfig& cfg) {
  SuiteOutcome out;
  out.name = choice.name;
  out.pass = true;
  const auto t0 = std::chrono::steady_clock::now();

  if (choice.name == "covering-verification") {
    CoveringOptions copt;
    copt.c = cfg.cov_c;
    copt.C = cfg.cov_C;
    VerifyOptions vopt;
    if (choice.slope_tol) vopt.slope_tol_first = *choice.slope_tol;
    for (const Rational& a : {Rational(0), Rational(1, 4), Rational(1, 2), Rational(2, 3)}) {
      auto r = run_covering_verification(a, cfg.K_max, copt, vopt);
      detail::absorb(out, r.pass, r.to_json(), r.measurements);
    }
  } else if (choice.name == "plancherel") {
    PlancherelParams prm;
    prm.L = cfg.grid_L;
    prm.N = static_cast<unsigned>(cfg.grid_N);
    prm.seed = cfg.seed;
    prm.zoom = cfg.zoom_oversample;
    if (choice.trials) prm.count = *choice.trials;
    for (const Rational& a : {Rational(0), Rational(1, 4), Rational(1, 2), Rational(2, 3)}) {
      auto r = run_plancherel(a, prm);
      detail::absorb(out, r.pass, r.to_json(), r.measurements);
    }
  } else if (choice.name == "dilation-scaling") {
    DilationParams prm;
    if (choice.slope_tol) prm.slope_tol = *choice.slope_tol;
    for (const auto& [p1, p2] : std::vector<std::pair<Exponent, Exponent>>{
             {Exponent::from_p(Rational(1, 2)), Exponent::from_p(Rational(1))},
             {Exponent::from_p(Rational(2)), Exponent::from_p(Rational(1))}}) {
      auto r = run_dilation_scaling(p1, p2, prm);
      detail::absorb(out, r.pass, r.to_json(), r.measurements);
    }
  } else if (choice.name == "shell-cardinality") {
    ShellParams prm;
    if (choice.slope_tol) prm.slope_tol = *choice.slope_tol;
    for (const Rational& a : {Rational(0), Rational(1, 2)}) {
      auto r = run_shell_cardinality(a, prm);
      detail::absorb(out, r.pass, r.to_json(), r.measurements);
    }
  } else if (choice.name == "comb-equivalence") {
    struct Case {
      CombCase which;
      Rational alpha;
      Exponent p, q;
      Rational s;
    };
    const std::vector<Case> cases = {
        {CombCase::GToMod, Rational(0), Exponent::from_p(Rational(1)), Exponent::from_p(Rational(1)),
         Rational(0)},
        {CombCase::GToMod, Rational(0), Exponent::from_p(Rational(2)), Exponent::infinity(),
         Rational(1, 4)},
        {CombCase::GToMod, Rational(1, 2), Exponent::from_p(Rational(1)), Exponent::from_p(Rational(2)),
         Rational(0)},
        {CombCase::GToHardy, Rational(0), Exponent::from_p(Rational(1)), Exponent::from_p(Rational(1)),
         Rational(0)},
        {CombCase::FToMod, Rational(1, 2), Exponent::from_p(Rational(2)), Exponent::infinity(),
         Rational(0)},
        {CombCase::FToHardyQuasi, Rational(1, 2), Exponent::from_p(Rational(1, 2)),
         Exponent::from_p(Rational(1)), Rational(0)},
    };
    for (const auto& c : cases) {
      CombEquivParams prm;
      prm.alpha = c.alpha;
      prm.p = c.p;
      prm.q = c.q;
      prm.s = c.s;
      prm.seed = cfg.seed;
      prm.zoom = cfg.zoom_oversample;
      if (choice.trials) prm.trials = *choice.trials;
      if (choice.spread_bound) prm.spread_bound = *choice.spread_bound;
      auto r = run_comb_equivalence(c.which, prm);
      detail::absorb(out, r.pass, r.to_json(), r.measurements);
    }
  } else if (choice.name == "atom-bounds") {
    struct Case {
      Exponent p;
      Rational alpha;
      AtomBoundCase which;
    };
    const std::vector<Case> cases = {
        {Exponent::from_p(Rational(1)), Rational(0), AtomBoundCase::SupWeight},
        {Exponent::from_p(Rational(1)), Rational(1, 2), AtomBoundCase::SupWeight},
        {Exponent::from_p(Rational(2, 3)), Rational(0), AtomBoundCase::SupWeight},
        {Exponent::from_p(Rational(2, 3)), Rational(1, 2), AtomBoundCase::SupWeight},
        {Exponent::from_p(Rational(2, 3)), Rational(0), AtomBoundCase::Diagonal},
        {Exponent::from_p(Rational(2, 3)), Rational(1, 2), AtomBoundCase::Diagonal},
    };
    for (const auto& c : cases) {
      AtomSweepParams prm;
      prm.seed = cfg.seed;
      prm.zoom = cfg.zoom_oversample;
      if (choice.trials) prm.sizes = *choice.trials;
      if (choice.slope_tol) prm.slope_tol = *choice.slope_tol;
      auto r = run_atom_bound_sweep(c.p, c.alpha, c.which, prm);
      detail::absorb(out, r.pass, r.to_json(), r.measurements);
    }
  } else if (choice.name == "sharpness-probe") {
    {
      ProbeParams prm;  // p1 = p2 = 1, q2 = inf
      prm.alpha = Rational(0);
      auto r = run_sharpness_probe(ProbeBranch::LowerIndex, prm);
      detail::absorb(out, r.pass, r.to_json(), r.measurements);
    }
    {
      ProbeParams prm;
      prm.alpha = Rational(1, 2);
      auto r = run_sharpness_probe(ProbeBranch::LowerIndex, prm);
      detail::absorb(out, r.pass, r.to_json(), r.measurements);
    }
    {
      ProbeParams prm;
      prm.p1 = Exponent::from_p(Rational(2));
      prm.p2 = Exponent::from_p(Rational(2));
      prm.alpha = Rational(1, 2);
      prm.L = 64.0;
      prm.N = std::size_t{1} << 17;
      auto r = run_sharpness_probe(ProbeBranch::AlphaIndex, prm);
      detail::absorb(out, r.pass, r.to_json(), r.measurements);
    }
  } else if (choice.name == "direction-probe") {
    DirectionProbeParams prm;
    prm.alpha = cfg.alpha;
    if (choice.slope_tol) prm.slope_tol = *choice.slope_tol;
    for (const auto& [p1, p2] : std::vector<std::pair<Exponent, Exponent>>{
             {Exponent::from_p(Rational(1)), Exponent::from_p(Rational(2))},
             {Exponent::from_p(Rational(2)), Exponent::from_p(Rational(1))}}) {
      auto r = run_direction_probe(p1, p2, prm);
      detail::absorb(out, r.pass, r.to_json(), r.measurements);
    }
  } else if (choice.name == "endpoint-divergence") {
    {
      L1FlatParams prm;
      auto r = run_l1_flat_divergence(prm);
      detail::absorb(out, r.pass, r.to_json(), r.measurements);
    }
    {
      LinfCombParams prm;
      auto r = run_linf_comb_divergence(prm);
      detail::absorb(out, r.pass, r.to_json(), r.measurements);
    }
  } else if (choice.name == "hardy-consistency") {
    for (const Exponent& p : {Exponent::from_p(Rational(1)), Exponent::from_p(Rational(2))}) {
      HardyConsistencyParams prm;
      if (choice.spread_bound) prm.spread_bound = *choice.spread_bound;
      auto r = run_hardy_consistency(p, prm);
      detail::absorb(out, r.pass, r.to_json(), r.measurements);
    }
  } else if (choice.name == "young-scaling") {
    for (const Exponent& p : {Exponent::from_p(Rational(1, 2)), Exponent::from_p(Rational(1))}) {
      YoungParams prm;
      prm.seed = cfg.seed + 4;
      if (choice.slope_tol) prm.slope_tol = *choice.slope_tol;
      auto r = run_young_scaling(p, prm);
      detail::absorb(out, r.pass, r.to_json(), r.measurements);
    }
  } else {
    throw ConfigError("experiments: unknown experiment '" + choice.name + "'");
  }

  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace alphamod
