// Command-line front door: exact index queries, norm evaluation on described
// families, covering verification, and experiment execution with config
// ingestion and report emission.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "alphamod/config.hpp"
#include "alphamod/suite.hpp"

namespace fs = std::filesystem;
using namespace alphamod;
using nlohmann::json;

namespace {

// Bad command-line input, distinct from a failed verdict or computation.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational want_rational(const std::string& text, const char* flag) {
  auto r = parse_rational(text);
  if (!r) throw UsageError(std::string(flag) + ": '" + text + "' is not a rational literal");
  return *r;
}

Exponent want_exponent(const std::string& text, const char* flag) {
  auto e = parse_exponent(text);
  if (!e) throw UsageError(std::string(flag) + ": '" + text +
                           "' is not an exponent literal ('a/b', decimal, or 'inf')");
  return *e;
}

void need(const std::string& value, const char* flag, const char* stmt) {
  if (value.empty())
    throw UsageError(std::string("--stmt ") + stmt + " requires " + flag);
}

std::string region_list(const std::vector<Region>& rs) {
  std::string out;
  for (const Region r : rs) {
    if (!out.empty()) out += " ";
    out += region_name(r);
  }
  return out;
}

json regions_json(const std::vector<Region>& rs) {
  json arr = json::array();
  for (const Region r : rs) arr.push_back(region_name(r));
  return arr;
}

// ---------------------------------------------------------------------------
// index

struct IndexArgs {
  std::string stmt;
  std::string p, q, s, alpha;
  std::string p1, q1, s1;
  std::string p2, q2, s2;
  int n = 1;
};

int print_verdict(const std::string& stmt, const EmbeddingVerdict& v) {
  std::cout << "statement: " << stmt << "\n";
  std::cout << "threshold: s = " << to_string(v.threshold)
            << (v.strict_required ? " (strict inequality required)" : " (threshold attained)")
            << "\n";
  if (!v.regions.empty()) std::cout << "regions:   " << region_list(v.regions) << "\n";
  if (!v.detail.empty()) std::cout << "detail:    " << v.detail << "\n";
  std::cout << "verdict:   " << (v.holds ? "holds" : "fails") << "\n";
  json out{{"statement", stmt},
           {"holds", v.holds},
           {"threshold", to_string(v.threshold)},
           {"strict_required", v.strict_required},
           {"regions", regions_json(v.regions)},
           {"detail", v.detail}};
  std::cout << out.dump() << "\n";
  return v.holds ? 0 : 3;
}

int cmd_index(const IndexArgs& a) {
  const auto stmt = a.stmt;
  if (stmt == "A" || stmt == "B" || stmt == "region") {
    need(a.p, "--p", stmt.c_str());
    need(a.q, "--q", stmt.c_str());
    const Exponent p = want_exponent(a.p, "--p");
    const Exponent q = want_exponent(a.q, "--q");
    const IndexQuery iq = IndexQuery::from_reciprocals(p.u, q.u, a.n);
    const Rational A = index_A(iq), B = index_B(iq);
    const auto regA = classify_region(iq, IndexKind::Lower);
    const auto regB = classify_region(iq, IndexKind::Upper);
    std::cout << "statement: " << stmt << "\n";
    std::cout << "query:     u = 1/p = " << to_string(iq.u) << ", v = 1/q = " << to_string(iq.v)
              << ", n = " << a.n << "\n";
    json out{{"statement", stmt},
             {"u", to_string(iq.u)},
             {"v", to_string(iq.v)},
             {"n", a.n}};
    if (stmt == "A" || stmt == "region") {
      std::cout << "A = " << to_string(A) << "  (regions " << region_list(regA) << ")\n";
      out["A"] = to_string(A);
      out["A_regions"] = regions_json(regA);
      if (stmt == "A") out["value"] = to_string(A);
    }
    if (stmt == "B" || stmt == "region") {
      std::cout << "B = " << to_string(B) << "  (regions " << region_list(regB) << ")\n";
      out["B"] = to_string(B);
      out["B_regions"] = regions_json(regB);
      if (stmt == "B") out["value"] = to_string(B);
    }
    std::cout << out.dump() << "\n";
    return 0;
  }

  if (stmt == "hardy-to-mod" || stmt == "mod-to-hardy") {
    const bool fwd = stmt == "hardy-to-mod";
    SpaceParams sp;
    sp.n = a.n;
    need(a.alpha, "--alpha", stmt.c_str());
    sp.alpha = want_rational(a.alpha, "--alpha");
    Exponent hardy_p;
    if (fwd) {
      need(a.p1, "--p1", stmt.c_str());
      need(a.p2, "--p2", stmt.c_str());
      need(a.q2, "--q2", stmt.c_str());
      hardy_p = want_exponent(a.p1, "--p1");
      sp.p = want_exponent(a.p2, "--p2");
      sp.q = want_exponent(a.q2, "--q2");
      sp.s = a.s2.empty() ? Rational(0) : want_rational(a.s2, "--s2");
    } else {
      need(a.p1, "--p1", stmt.c_str());
      need(a.q1, "--q1", stmt.c_str());
      need(a.p2, "--p2", stmt.c_str());
      hardy_p = want_exponent(a.p2, "--p2");
      sp.p = want_exponent(a.p1, "--p1");
      sp.q = want_exponent(a.q1, "--q1");
      sp.s = a.s1.empty() ? Rational(0) : want_rational(a.s1, "--s1");
    }
    const auto v = verdict_hardy_alpha(
        fwd ? HardyDirection::HardyToModulation : HardyDirection::ModulationToHardy, hardy_p, sp);
    return print_verdict(stmt, v);
  }

  if (stmt == "l1-to-mod" || stmt == "mod-to-l1" || stmt == "linf-to-mod" ||
      stmt == "mod-to-linf") {
    SpaceParams sp;
    sp.n = a.n;
    need(a.alpha, "--alpha", stmt.c_str());
    sp.alpha = want_rational(a.alpha, "--alpha");
    need(a.q, "--q", stmt.c_str());
    sp.q = want_exponent(a.q, "--q");
    sp.s = a.s.empty() ? Rational(0) : want_rational(a.s, "--s");
    if (stmt == "linf-to-mod") {
      sp.p = a.p.empty() ? Exponent::infinity() : want_exponent(a.p, "--p");
    } else {
      need(a.p, "--p", stmt.c_str());
      sp.p = want_exponent(a.p, "--p");
    }
    EndpointCase c = EndpointCase::L1ToModulation;
    if (stmt == "mod-to-l1") c = EndpointCase::ModulationToL1;
    if (stmt == "linf-to-mod") c = EndpointCase::LinfToModulation;
    if (stmt == "mod-to-linf") c = EndpointCase::ModulationToLinf;
    return print_verdict(stmt, verdict_endpoint(c, sp));
  }

  if (stmt == "alpha-embed") {
    need(a.p1, "--p1", "alpha-embed");
    need(a.q1, "--q1", "alpha-embed");
    need(a.p2, "--p2", "alpha-embed");
    need(a.q2, "--q2", "alpha-embed");
    need(a.alpha, "--alpha", "alpha-embed");
    SpaceParams src, dst;
    src.p = want_exponent(a.p1, "--p1");
    src.q = want_exponent(a.q1, "--q1");
    src.s = a.s1.empty() ? Rational(0) : want_rational(a.s1, "--s1");
    src.alpha = dst.alpha = want_rational(a.alpha, "--alpha");
    src.n = dst.n = a.n;
    dst.p = want_exponent(a.p2, "--p2");
    dst.q = want_exponent(a.q2, "--q2");
    dst.s = a.s2.empty() ? Rational(0) : want_rational(a.s2, "--s2");
    const bool holds = embeds_alpha_modulation(src, dst);
    std::cout << "statement: alpha-embed\n";
    std::cout << "source:    (1/p1, 1/q1, s1) = (" << to_string(src.p.u) << ", "
              << to_string(src.q.u) << ", " << to_string(src.s) << ")\n";
    std::cout << "target:    (1/p2, 1/q2, s2) = (" << to_string(dst.p.u) << ", "
              << to_string(dst.q.u) << ", " << to_string(dst.s) << ")\n";
    std::cout << "verdict:   " << (holds ? "holds" : "fails") << "\n";
    std::cout << json{{"statement", "alpha-embed"}, {"holds", holds}}.dump() << "\n";
    return holds ? 0 : 3;
  }

  if (stmt == "seq-embed") {
    need(a.q1, "--q1", "seq-embed");
    need(a.q2, "--q2", "seq-embed");
    need(a.alpha, "--alpha", "seq-embed");
    const Exponent q1 = want_exponent(a.q1, "--q1");
    const Exponent q2 = want_exponent(a.q2, "--q2");
    const Rational s1 = a.s1.empty() ? Rational(0) : want_rational(a.s1, "--s1");
    const Rational s2 = a.s2.empty() ? Rational(0) : want_rational(a.s2, "--s2");
    const Rational alpha = want_rational(a.alpha, "--alpha");
    const bool holds = embeds_sequence(q1, s1, q2, s2, alpha, a.n);
    std::cout << "statement: seq-embed\n";
    std::cout << "source:    l_q1 with q1 = " << to_string(q1.u) << " (reciprocal), s1 = "
              << to_string(s1) << "\n";
    std::cout << "target:    l_q2 with q2 = " << to_string(q2.u) << " (reciprocal), s2 = "
              << to_string(s2) << "\n";
    std::cout << "verdict:   " << (holds ? "holds" : "fails") << "\n";
    std::cout << json{{"statement", "seq-embed"}, {"holds", holds}}.dump() << "\n";
    return holds ? 0 : 3;
  }

  throw UsageError("unknown --stmt '" + stmt + "'");
}

// ---------------------------------------------------------------------------
// verify-covering

int cmd_verify_covering(const std::string& alpha_str, double c, double C, long long kmax,
                        double L, long long N) {
  const Rational alpha = want_rational(alpha_str, "--alpha");
  CoveringOptions copt;
  copt.c = c;
  copt.C = C;
  VerifyOptions vopt;
  if (L > 0) vopt.fd_step = 1.0 / (2.0 * L);
  if (N > 0) vopt.samples_per_window = static_cast<int>(std::max<long long>(64, N / 64));

  const auto rep = run_covering_verification(alpha, kmax, copt, vopt);
  const auto& r = rep.conditions;
  std::printf("covering: alpha = %s, c = %g, C = %s, K_max = %lld\n", to_string(alpha).c_str(),
              c, C > 0 ? std::to_string(C).c_str() : "default", kmax);
  std::printf("  %-22s %-5s %s\n", "condition", "pass", "measure");
  std::printf("  %-22s %-5s max defect %.3e\n", "plateau_exact", r.inner_exact ? "yes" : "NO",
              r.max_inner_defect);
  std::printf("  %-22s %-5s max excess %.3e\n", "support_contained",
              r.support_contained ? "yes" : "NO", r.max_support_excess);
  std::printf("  %-22s %-5s max defect %.3e (min raw sum %.3f)\n", "partition_exact",
              r.partition_exact ? "yes" : "NO", r.max_partition_defect, r.min_raw_sum);
  std::printf("  %-22s %-5s slope %.4f expected %.4f (%d points, overlap <= %d)\n",
              "derivative_scaling", r.derivative_scaling ? "yes" : "NO", r.slope_first,
              r.expected_slope_first, r.derivative_points, r.max_overlap);
  std::printf("verdict: %s\n", rep.pass ? "pass" : "FAIL");
  json out = rep.to_json();
  std::cout << out.dump() << "\n";
  return rep.pass ? 0 : 3;
}

// ---------------------------------------------------------------------------
// norm

int cmd_norm(const std::string& family, const std::string& space, const std::string& p_str,
             const std::string& q_str, const std::string& s_str, const std::string& alpha_str,
             double L, long long N) {
  const Exponent p = want_exponent(p_str, "--p");
  const Exponent q = want_exponent(q_str, "--q");
  const Rational s = want_rational(s_str, "--s");
  const Rational alpha = want_rational(alpha_str, "--alpha");
  if (N < 8 || (N & (N - 1)) != 0) throw UsageError("--N must be a power of two >= 8");

  const auto colon = family.find(':');
  if (colon == std::string::npos)
    throw UsageError("--family must look like kind:value (dilated:0.25, dyadic:3, window:5, flat:4)");
  const std::string kind = family.substr(0, colon);
  const std::string arg = family.substr(colon + 1);

  const Grid g = Grid::make(L, static_cast<std::size_t>(N));
  const AlphaCovering cov =
      build_alpha_covering(alpha, K_max_for_band(alpha, 0.9 * 0.995 * g.nyquist()));

  FamilyDescriptor d = FamilyDescriptor::dilated(1.0);
  if (kind == "dilated") {
    d = FamilyDescriptor::dilated(std::stod(arg));
  } else if (kind == "dyadic") {
    d = FamilyDescriptor::dyadic_bump(std::stoi(arg));
  } else if (kind == "window") {
    d = FamilyDescriptor::alpha_bump(std::stoll(arg));
  } else if (kind == "flat") {
    d = FamilyDescriptor::flat(std::stoi(arg));
  } else {
    throw UsageError("unknown family kind '" + kind + "'");
  }

  const GridFunction f = make_family(d, g, &cov);
  double value = 0.0;
  std::string label;
  if (space == "mod") {
    value = alpha_modulation_norm(f, p, q, s, cov);
    label = "alpha-modulation norm (p=" + to_string(p) + ", q=" + to_string(q) +
            ", s=" + to_string(s) + ", alpha=" + to_string(alpha) + ")";
  } else if (space == "hardy") {
    const int J = static_cast<int>(std::floor(std::log2(g.nyquist() / 1.5)));
    value = local_hardy_norm(f, p, build_dyadic(J, g));
    label = "local Hardy norm (p=" + to_string(p) + ")";
  } else if (space == "lebesgue") {
    value = lebesgue_norm(f, p);
    label = "Lebesgue norm (p=" + to_string(p) + ")";
  } else {
    throw UsageError("--space must be one of mod, hardy, lebesgue");
  }

  std::cout << "family: " << family << " on [-" << L << ", " << L << "] with N = " << N << "\n";
  std::cout << label << " = " << value << "\n";
  std::cout << json{{"statement", "norm"},
                    {"family", family},
                    {"space", space},
                    {"p", to_string(p)},
                    {"q", to_string(q)},
                    {"s", to_string(s)},
                    {"alpha", to_string(alpha)},
                    {"value", value}}
                   .dump()
            << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// experiment

std::string utc_stamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

// Append-only: a fresh directory per run, never reusing an existing one.
fs::path claim_run_dir(const fs::path& out_dir, const std::string& name, std::uint64_t seed) {
  const std::string base = name + "-" + utc_stamp() + "-seed" + std::to_string(seed);
  fs::path dir = out_dir / base;
  for (int i = 2; fs::exists(dir); ++i) dir = out_dir / (base + "-" + std::to_string(i));
  fs::create_directories(dir);
  return dir;
}

int cmd_experiment(const std::string& config_path, const std::vector<std::string>& only,
                   std::int64_t seed_override, const std::string& out_override) {
  RunConfig cfg;
  try {
    if (!config_path.empty())
      cfg = load_run_config(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
  if (!out_override.empty()) cfg.out_dir = out_override;

  std::vector<ExperimentChoice> selection = cfg.experiments;
  if (selection.empty())
    for (const auto& name : experiment_names()) selection.push_back(ExperimentChoice{name});
  if (!only.empty()) {
    std::vector<ExperimentChoice> picked;
    for (const auto& name : only) {
      if (!is_known_experiment(name)) {
        std::cerr << "config error: --only: unknown experiment '" << name << "'\n";
        return 2;
      }
      bool found = false;
      for (const auto& choice : selection)
        if (choice.name == name) {
          picked.push_back(choice);
          found = true;
          break;
        }
      if (!found) picked.push_back(ExperimentChoice{name});
    }
    selection = std::move(picked);
  }

  fs::create_directories(cfg.out_dir);
  bool all_pass = true;
  json results = json::array();
  for (const auto& choice : selection) {
    const fs::path dir = claim_run_dir(cfg.out_dir, choice.name, cfg.seed);
    json report;
    bool pass = false;
    double seconds = 0.0;
    std::vector<Measurement> rows;
    try {
      const SuiteOutcome out = run_suite_experiment(choice, cfg);
      pass = out.pass;
      seconds = out.seconds;
      rows = out.rows;
      report = json{{"experiment", out.name},
                    {"seed", cfg.seed},
                    {"pass", out.pass},
                    {"reports", out.reports}};
    } catch (const std::exception& e) {
      pass = false;
      report = json{{"experiment", choice.name},
                    {"seed", cfg.seed},
                    {"pass", false},
                    {"error", e.what()}};
    }
    {
      std::ofstream rf(dir / "report.json");
      rf << report.dump(2) << "\n";
    }
    {
      std::ofstream mf(dir / "measurements.csv");
      mf << measurements_to_csv(rows);
    }
    all_pass = all_pass && pass;
    std::printf("experiment %-22s %s  (%.1fs, %zu measurements) -> %s\n", choice.name.c_str(),
                pass ? "PASS" : "FAIL", seconds, rows.size(), dir.string().c_str());
    results.push_back(json{{"name", choice.name},
                           {"pass", pass},
                           {"seconds", seconds},
                           {"dir", dir.string()}});
  }
  std::cout << json{{"statement", "experiment"},
                    {"seed", cfg.seed},
                    {"out_dir", cfg.out_dir},
                    {"results", results},
                    {"pass", all_pass}}
                   .dump()
            << "\n";
  return all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "alphamod: exact index calculus, block-decomposition norms, and scaling experiments\n"
      "for the embedding theory between local Hardy spaces and alpha-modulation spaces"};
  app.require_subcommand(1);

  IndexArgs ia;
  auto* idx = app.add_subcommand(
      "index", "Exact embedding verdicts and index-function values (rational arithmetic)");
  idx->add_option("--stmt", ia.stmt,
                  "statement: A, B, region, hardy-to-mod, mod-to-hardy, l1-to-mod, mod-to-l1, "
                  "linf-to-mod, mod-to-linf, alpha-embed, seq-embed")
      ->required();
  idx->add_option("--p", ia.p, "Lebesgue/block exponent p ('a/b', decimal, or 'inf')");
  idx->add_option("--q", ia.q, "summation exponent q");
  idx->add_option("--s", ia.s, "smoothness s (rational)");
  idx->add_option("--alpha", ia.alpha, "scale parameter alpha (rational in [0,1))");
  idx->add_option("--p1", ia.p1, "source-space p");
  idx->add_option("--q1", ia.q1, "source-space q");
  idx->add_option("--s1", ia.s1, "source-space s (default 0)");
  idx->add_option("--p2", ia.p2, "target-space p");
  idx->add_option("--q2", ia.q2, "target-space q");
  idx->add_option("--s2", ia.s2, "target-space s (default 0)");
  idx->add_option("--n", ia.n, "dimension (default 1)");

  std::string vc_alpha = "1/2";
  double vc_c = 0.45, vc_C = 0.0, vc_L = 256.0;
  long long vc_kmax = 64, vc_N = 65536;
  auto* vc = app.add_subcommand("verify-covering",
                                "Check the partition-of-unity conditions of a window covering");
  vc->add_option("--alpha", vc_alpha, "scale parameter alpha (default 1/2)");
  vc->add_option("--c", vc_c, "plateau radius factor (default 0.45)");
  vc->add_option("--C", vc_C, "support radius factor (0 = alpha-dependent default)");
  vc->add_option("--kmax", vc_kmax, "largest window index (default 64)");
  vc->add_option("--L", vc_L, "grid half-length; sets the finite-difference step (default 256)");
  vc->add_option("--N", vc_N, "grid size; sets the per-window sampling density (default 65536)");

  std::string nm_family, nm_space = "mod", nm_p = "2", nm_q = "2", nm_s = "0", nm_alpha = "1/2";
  double nm_L = 256.0;
  long long nm_N = 65536;
  auto* nm = app.add_subcommand("norm", "Evaluate a space norm on a described test function");
  nm->add_option("--family", nm_family,
                 "function: dilated:<lambda>, dyadic:<j>, window:<k>, flat:<J>")
      ->required();
  nm->add_option("--space", nm_space, "space: mod, hardy, lebesgue (default mod)");
  nm->add_option("--p", nm_p, "exponent p (default 2)");
  nm->add_option("--q", nm_q, "exponent q (default 2)");
  nm->add_option("--s", nm_s, "smoothness s (default 0)");
  nm->add_option("--alpha", nm_alpha, "scale parameter alpha (default 1/2)");
  nm->add_option("--L", nm_L, "grid half-length (default 256)");
  nm->add_option("--N", nm_N, "grid size, power of two (default 65536)");

  std::string ex_config, ex_out;
  std::vector<std::string> ex_only;
  std::int64_t ex_seed = -1;
  auto* ex = app.add_subcommand("experiment", "Run the numerical experiment suite");
  ex->add_option("--config", ex_config, "run configuration JSON (omit for built-in defaults)");
  ex->add_option("--only", ex_only,
                 "run only the named experiments (repeatable); known names: " +
                     [] {
                       std::string s;
                       for (const auto& n : experiment_names()) s += (s.empty() ? "" : ", ") + n;
                       return s;
                     }());
  ex->add_option("--seed", ex_seed, "override the config seed");
  ex->add_option("--out", ex_out, "override the config output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(idx)) return cmd_index(ia);
    if (app.got_subcommand(vc))
      return cmd_verify_covering(vc_alpha, vc_c, vc_C, vc_kmax, vc_L, vc_N);
    if (app.got_subcommand(nm))
      return cmd_norm(nm_family, nm_space, nm_p, nm_q, nm_s, nm_alpha, nm_L, nm_N);
    if (app.got_subcommand(ex)) return cmd_experiment(ex_config, ex_only, ex_seed, ex_out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
