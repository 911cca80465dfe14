#pragma once

// Runtime configuration: flat key = value config file, environment override
// for the thread count, CLI flags on top. Precedence: flags > env > file >
// defaults.

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "casq/errors.hpp"
#include "casq/modes.hpp"
#include "casq/verify.hpp"

namespace casq {

struct RunConfig {
  SlabGeometry geom;
  ModeWindow window{3, 3, 3, 3};
  std::vector<double> delta_grid;  // empty: documented default scaled by L
  std::vector<double> beta_grid;   // empty: {1, 2, 4, 8, 16} x L
  int pmax = 4;
  unsigned threads = 1;
  std::uint64_t seed = 1906;
  std::map<std::string, double> tol_overrides;
  std::string format = "json";  // json | csv
  std::string out_path;         // empty: stdout

  void validate() const {
    if (!geom.valid()) throw ConfigError("geometry fields must be positive (m >= 0)");
    if (!window.valid()) throw ConfigError("window bounds must be >= 1");
    if (format != "json" && format != "csv") throw ConfigError("format must be json or csv");
    if (pmax < 2) throw ConfigError("pmax must be >= 2");
  }

  VerifyConfig verify_config() const {
    VerifyConfig v;
    v.geom = geom;
    v.window = window;
    v.beta_grid = beta_grid;
    v.delta_grid = delta_grid;
    v.pmax = pmax;
    v.threads = threads;
    v.seed = seed;
    v.tol_overrides = tol_overrides;
    return v;
  }

  // deterministic echo for reports; execution details (threads, output
  // routing) deliberately excluded so runs differing only in them produce
  // byte-identical reports
  std::vector<std::pair<std::string, std::string>> echo() const {
    auto num = [](double x) { return json_number(x); };
    std::vector<std::pair<std::string, std::string>> e;
    e.emplace_back("Lx", num(geom.Lx));
    e.emplace_back("Ly", num(geom.Ly));
    e.emplace_back("L", num(geom.L));
    e.emplace_back("beta", num(geom.beta));
    e.emplace_back("mass", num(geom.m));
    e.emplace_back("window", std::to_string(window.jmax) + "," + std::to_string(window.kmax) +
                                 "," + std::to_string(window.lmax) + "," +
                                 std::to_string(window.nmax));
    e.emplace_back("pmax", std::to_string(pmax));
    e.emplace_back("seed", std::to_string(seed));
    std::string dg;
    for (double d : delta_grid) dg += (dg.empty() ? "" : ",") + num(d);
    e.emplace_back("delta_grid", dg.empty() ? "default" : dg);
    std::string bg;
    for (double b : beta_grid) bg += (bg.empty() ? "" : ",") + num(b);
    e.emplace_back("beta_grid", bg.empty() ? "default" : bg);
    for (const auto& [k, v] : tol_overrides) e.emplace_back("tol." + k, num(v));
    return e;
  }
};

namespace detail {

inline std::vector<double> parse_double_list(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (...) {
      throw ConfigError(std::string(what) + ": bad number '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError(std::string(what) + ": empty list");
  return out;
}

inline ModeWindow parse_window(const std::string& s) {
  const auto v = parse_double_list(s, "window");
  if (v.size() != 4) throw ConfigError("window: expected j,k,l,n");
  ModeWindow w{static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2]),
               static_cast<int>(v[3])};
  if (!w.valid()) throw ConfigError("window: bounds must be >= 1");
  return w;
}

}  // namespace detail

inline void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return (a == std::string::npos) ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key or value");
    try {
      if (key == "Lx") cfg.geom.Lx = std::stod(value);
      else if (key == "Ly") cfg.geom.Ly = std::stod(value);
      else if (key == "L") cfg.geom.L = std::stod(value);
      else if (key == "beta") cfg.geom.beta = std::stod(value);
      else if (key == "mass") cfg.geom.m = std::stod(value);
      else if (key == "window") cfg.window = detail::parse_window(value);
      else if (key == "pmax") cfg.pmax = std::stoi(value);
      else if (key == "threads") cfg.threads = static_cast<unsigned>(std::stoul(value));
      else if (key == "seed") cfg.seed = std::stoull(value);
      else if (key == "format") cfg.format = value;
      else if (key == "out") cfg.out_path = value;
      else if (key == "delta_grid") cfg.delta_grid = detail::parse_double_list(value, "delta_grid");
      else if (key == "beta_grid") cfg.beta_grid = detail::parse_double_list(value, "beta_grid");
      else if (key.rfind("tol.", 0) == 0) cfg.tol_overrides[key.substr(4)] = std::stod(value);
      else throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    } catch (const ConfigError&) {
      throw;
    } catch (...) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": bad value for '" + key + "'");
    }
  }
}

inline void apply_environment(RunConfig& cfg) {
  if (const char* t = std::getenv("CASIMIR_QUBIT_THREADS")) {
    try {
      cfg.threads = static_cast<unsigned>(std::stoul(t));
    } catch (...) {
      throw ConfigError("CASIMIR_QUBIT_THREADS: not a number");
    }
  }
}

}  // namespace casq
