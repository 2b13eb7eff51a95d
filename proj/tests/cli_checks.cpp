// End-to-end checks of the command-line front door: exit codes, documented
// output tokens, config validation, report emission, the six-column CSV
// contract, run-directory naming, and byte-for-byte determinism under a
// fixed seed. argv[1] is the CLI binary, argv[2] a scratch directory.

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void check(bool ok, const std::string& label) {
  std::printf("%s  %s\n", ok ? "ok  " : "FAIL", label.c_str());
  if (!ok) ++g_failures;
}

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunResult run(const std::string& cli, const std::string& args, const fs::path& work) {
  static int counter = 0;
  const fs::path out = work / ("stdout" + std::to_string(counter) + ".txt");
  const fs::path err = work / ("stderr" + std::to_string(counter) + ".txt");
  ++counter;
  const std::string cmd = cli + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

bool has(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

// The single run directory created under `out_dir`; empty path if not exactly one.
fs::path sole_run_dir(const fs::path& out_dir) {
  fs::path found;
  int count = 0;
  if (fs::exists(out_dir))
    for (const auto& e : fs::directory_iterator(out_dir))
      if (e.is_directory()) {
        found = e.path();
        ++count;
      }
  return count == 1 ? found : fs::path();
}

// Every CSV line must have exactly six comma-separated fields.
bool csv_six_columns(const std::string& csv, const std::string& expected_header) {
  std::istringstream in(csv);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      if (line != expected_header) return false;
      first = false;
    }
    long commas = std::count(line.begin(), line.end(), ',');
    if (commas != 5) return false;
  }
  return !first;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: cli_checks <cli-binary> <work-dir>\n");
    return 2;
  }
  const std::string cli = argv[1];
  const fs::path work = argv[2];
  fs::remove_all(work);
  fs::create_directories(work);

  // --- index statements ------------------------------------------------
  {
    auto r = run(cli, "index --stmt hardy-to-mod --p1 1 --p2 1 --q2 inf --alpha 0 --s2 0 --n 1",
                 work);
    check(r.code == 0, "hardy-to-mod at the threshold holds (exit 0)");
    check(has(r.out, "verdict:   holds") && has(r.out, "\"threshold\":\"0\""),
          "hardy-to-mod prints the verdict and threshold 0");
  }
  {
    auto r = run(cli, "index --stmt B --p 1 --q inf --n 1", work);
    check(r.code == 0 && has(r.out, "B = 1") && has(r.out, "B3"),
          "upper index B(1,inf) = 1 in region B3");
  }
  {
    auto r = run(cli, "index --stmt seq-embed --q1 inf --s1 0 --q2 1 --s2 0 --alpha 0 --n 1", work);
    check(r.code == 3 && has(r.out, "fails"), "sequence embedding without smoothness gain fails");
  }
  {
    auto r = run(cli, "index --stmt A --p not-a-number --q 1", work);
    check(r.code == 2, "malformed rational argument exits 2");
  }

  // --- covering verification -------------------------------------------
  {
    auto r = run(cli, "verify-covering --alpha 0.5 --kmax 64", work);
    check(r.code == 0 && has(r.out, "verdict: pass"), "default covering passes all conditions");
    check(has(r.out, "partition_exact") && has(r.out, "derivative_scaling"),
          "condition table lists the partition and derivative rows");
  }
  {
    auto r = run(cli, "verify-covering --alpha 0.5 --kmax 64 --c 0.9 --C 0.91", work);
    check(r.code == 3 && (has(r.err, "bridge") || has(r.out, "bridge")),
          "gap-inducing covering parameters exit 3 with a gap message");
  }
  {
    auto r = run(cli, "verify-covering --alpha 0 --kmax 64", work);
    check(r.code == 0, "uniform covering (alpha 0) passes");
  }

  // --- norm smoke test ---------------------------------------------------
  {
    auto r = run(cli, "norm --family dilated:1 --space lebesgue --p 2 --L 32 --N 4096", work);
    check(r.code == 0 && has(r.out, "Lebesgue norm") && has(r.out, "\"value\":"),
          "lebesgue norm of a described function");
  }

  // --- experiment: config validation -------------------------------------
  const fs::path bad_cfg = work / "bad.json";
  write_file(bad_cfg, "{\"covering\": {\"alpha\": \"1\"}}\n");
  {
    auto r = run(cli, "experiment --config " + bad_cfg.string() + " --out " +
                          (work / "never").string(),
                 work);
    check(r.code == 2 && has(r.err, "covering.alpha"),
          "corrupted config (alpha = 1) exits 2 naming the field");
    check(!fs::exists(work / "never"), "no reports are written for an invalid config");
  }
  {
    auto r = run(cli, "experiment --only no-such-thing --out " + (work / "never2").string(), work);
    check(r.code == 2, "unknown experiment selection exits 2");
  }

  // --- experiment: success path, run-dir naming --------------------------
  {
    const fs::path out_dir = work / "dilation";
    auto r = run(cli, "experiment --only dilation-scaling --out " + out_dir.string(), work);
    check(r.code == 0, "dilation-scaling run under the default config passes (exit 0)");
    const fs::path run_dir = sole_run_dir(out_dir);
    check(!run_dir.empty() && fs::exists(run_dir / "report.json") &&
              fs::exists(run_dir / "measurements.csv"),
          "run directory holds report.json and measurements.csv");
    const std::string name = run_dir.filename().string();
    check(name.rfind("dilation-scaling-", 0) == 0 && has(name, "-seed1"),
          "run directory is named by experiment, timestamp, and seed");
    const std::string report = slurp(run_dir / "report.json");
    check(has(report, "\"pass\": true") || has(report, "\"pass\":true"),
          "report.json records the passing verdict");
  }

  // --- experiment: determinism under a fixed seed -------------------------
  const fs::path det_cfg = work / "det.json";
  write_file(det_cfg,
             "{\"grid\": {\"L\": 32, \"N\": 8192}, \"seed\": 9,\n"
             " \"experiments\": [{\"name\": \"plancherel\", \"trials\": 4}]}\n");
  {
    const fs::path out_a = work / "det_a";
    const fs::path out_b = work / "det_b";
    auto ra = run(cli, "experiment --config " + det_cfg.string() + " --out " + out_a.string(),
                  work);
    auto rb = run(cli, "experiment --config " + det_cfg.string() + " --out " + out_b.string(),
                  work);
    check(ra.code == 0 && rb.code == 0, "both seeded runs pass");
    const fs::path da = sole_run_dir(out_a), db = sole_run_dir(out_b);
    check(!da.empty() && !db.empty() &&
              slurp(da / "report.json") == slurp(db / "report.json") &&
              slurp(da / "measurements.csv") == slurp(db / "measurements.csv"),
          "same config and seed give byte-identical reports");
  }

  // --- experiment: CSV contract on the densest quantity labels ------------
  const fs::path atoms_cfg = work / "atoms.json";
  write_file(atoms_cfg, "{\"experiments\": [{\"name\": \"atom-bounds\", \"trials\": 4}]}\n");
  {
    const fs::path out_dir = work / "atoms";
    auto r = run(cli, "experiment --config " + atoms_cfg.string() + " --out " + out_dir.string(),
                 work);
    check(r.code == 0 || r.code == 3, "atom-bounds run completes and writes reports");
    const fs::path run_dir = sole_run_dir(out_dir);
    const std::string csv = run_dir.empty() ? "" : slurp(run_dir / "measurements.csv");
    check(csv_six_columns(csv, "experiment,family,param_name,param_value,quantity,value"),
          "measurements.csv has the documented header and six fields per row");
    check(has(csv, "mod_norm[p="), "parameterised quantity labels survive the CSV format");
  }

  std::printf("%s (%d failure%s)\n", g_failures == 0 ? "all cli checks passed" : "cli checks FAILED",
              g_failures, g_failures == 1 ? "" : "s");
  return g_failures == 0 ? 0 : 1;
}
