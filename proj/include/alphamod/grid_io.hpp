#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "alphamod/grid.hpp"

namespace alphamod {

// CSV: header then one row x,re,im per sample, full double precision.
inline void write_csv(const GridFunction& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path + " for writing");
  out << "x,re,im\n";
  char buf[96];
  for (std::size_t i = 0; i < f.grid().N; ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", f.grid().x(i), f.values()[i].real(),
                  f.values()[i].imag());
    out << buf;
  }
}

inline GridFunction read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("x,re,im", 0) != 0)
    throw ConfigError("bad CSV header in " + path);
  std::vector<double> xs;
  std::vector<cd> vals;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double x, re, im;
    if (std::sscanf(line.c_str(), "%lg,%lg,%lg", &x, &re, &im) != 3)
      throw ConfigError("bad CSV row in " + path);
    xs.push_back(x);
    vals.push_back(cd(re, im));
  }
  if (xs.size() < 8) throw ConfigError("too few samples in " + path);
  Grid g = Grid::make(-xs[0], xs.size());
  if (std::fabs((xs[1] - xs[0]) - g.dx()) > 1e-9 * g.dx())
    throw ConfigError("inconsistent sample spacing in " + path);
  return GridFunction::from_physical(g, std::move(vals));
}

// Raw binary: <base>.f64 holds interleaved re,im doubles in host (little)
// endianness; <base>.json is the sidecar describing the grid and layout.
inline void write_raw(const GridFunction& f, const std::string& base) {
  std::ofstream bin(base + ".f64", std::ios::binary);
  if (!bin) throw ConfigError("cannot open " + base + ".f64 for writing");
  for (const auto& v : f.values()) {
    double re = v.real(), im = v.imag();
    bin.write(reinterpret_cast<const char*>(&re), sizeof re);
    bin.write(reinterpret_cast<const char*>(&im), sizeof im);
  }
  nlohmann::json side{{"L", f.grid().L},
                      {"N", f.grid().N},
                      {"layout", "interleaved_complex_f64"},
                      {"endianness", "little"},
                      {"samples", "physical"}};
  std::ofstream js(base + ".json");
  js << side.dump(2) << "\n";
}

inline GridFunction read_raw(const std::string& base) {
  std::ifstream js(base + ".json");
  if (!js) throw ConfigError("cannot open " + base + ".json");
  nlohmann::json side = nlohmann::json::parse(js, nullptr, false);
  if (side.is_discarded() || !side.contains("L") || !side.contains("N"))
    throw ConfigError("bad sidecar " + base + ".json");
  if (side.value("layout", "") != std::string("interleaved_complex_f64"))
    throw ConfigError("unsupported layout in " + base + ".json");
  Grid g = Grid::make(side["L"].get<double>(), side["N"].get<std::size_t>());
  std::ifstream bin(base + ".f64", std::ios::binary);
  if (!bin) throw ConfigError("cannot open " + base + ".f64");
  std::vector<cd> vals(g.N);
  for (auto& v : vals) {
    double re, im;
    bin.read(reinterpret_cast<char*>(&re), sizeof re);
    bin.read(reinterpret_cast<char*>(&im), sizeof im);
    if (!bin) throw ConfigError("truncated data in " + base + ".f64");
    v = cd(re, im);
  }
  return GridFunction::from_physical(g, std::move(vals));
}

}  // namespace alphamod
