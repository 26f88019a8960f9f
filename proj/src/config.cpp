#include "gmlab/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "gmlab/errors.hpp"

namespace gmlab {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& v, int line) {
  std::size_t pos = 0;
  double x;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw parse_error(line, "expected a number, got '" + v + "'");
  }
  if (pos != v.size()) throw parse_error(line, "trailing characters after number '" + v + "'");
  return x;
}

int parse_int(const std::string& v, int line) {
  double x = parse_number(v, line);
  double r = std::round(x);
  if (std::abs(x - r) > 1e-9) throw parse_error(line, "expected an integer, got '" + v + "'");
  return static_cast<int>(r);
}

std::vector<double> parse_number_list(const std::string& v, int line) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw parse_error(line, "empty entry in list");
    out.push_back(parse_number(item, line));
  }
  if (out.empty()) throw parse_error(line, "empty list");
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::string s = trim(raw);
    if (s.empty()) continue;
    auto eq = s.find('=');
    if (eq == std::string::npos) throw parse_error(line, "expected key = value");
    std::string key = trim(s.substr(0, eq));
    std::string val = trim(s.substr(eq + 1));
    if (key.empty()) throw parse_error(line, "missing key");
    if (val.empty()) throw parse_error(line, "missing value for '" + key + "'");
    if (!seen.insert(key).second) throw parse_error(line, "duplicate key '" + key + "'");

    if (key == "alpha") cfg.alpha = parse_number(val, line);
    else if (key == "mu") cfg.mu = parse_number(val, line);
    else if (key == "kernel.type") cfg.kernel.type = val;
    else if (key == "kernel.tau") cfg.kernel.tau = parse_number(val, line);
    else if (key == "kernel.kappa") cfg.kernel.kappa = parse_number(val, line);
    else if (key == "kernel.n") cfg.kernel.n = parse_int(val, line);
    else if (key == "kernel.file") cfg.kernel.file = val;
    else if (key == "u0.preset") cfg.u0.preset = val;
    else if (key == "u0.scale") cfg.u0.scale = parse_number(val, line);
    else if (key == "u0.center") cfg.u0.center = parse_number(val, line);
    else if (key == "u0.width") cfg.u0.width = parse_number(val, line);
    else if (key == "u0.height") cfg.u0.height = parse_number(val, line);
    else if (key == "u0.offset") cfg.u0.offset = parse_number(val, line);
    else if (key == "u0.length") cfg.u0.length = parse_number(val, line);
    else if (key == "u0.file") cfg.u0.file = val;
    else if (key == "sim.dt") cfg.sim.dt = parse_number(val, line);
    else if (key == "sim.horizon") cfg.sim.horizon = parse_number(val, line);
    else if (key == "sim.a_max") cfg.sim.a_max = parse_number(val, line);
    else if (key == "hopf.k_max") cfg.hopf_k_max = parse_int(val, line);
    else if (key == "sweep.param") cfg.sweep.param = val;
    else if (key == "sweep.lo") cfg.sweep.lo = parse_number(val, line);
    else if (key == "sweep.hi") cfg.sweep.hi = parse_number(val, line);
    else if (key == "sweep.steps") cfg.sweep.steps = parse_int(val, line);
    else if (key == "spectrum.multipliers") cfg.spectrum_multipliers = parse_number_list(val, line);
    else throw parse_error(line, "unknown key '" + key + "'");
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("config", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void validate_config(const RunConfig& cfg) {
  if (!(cfg.alpha > 0.0) || !std::isfinite(cfg.alpha))
    throw validation_error("alpha", "must be positive");
  if (!(cfg.mu > 0.0) || !std::isfinite(cfg.mu)) throw validation_error("mu", "must be positive");

  if (cfg.kernel.type == "shifted_gamma") {
    if (!(cfg.kernel.tau > 0.0)) throw validation_error("kernel.tau", "must be positive");
    if (cfg.kernel.kappa < 0.0) throw validation_error("kernel.kappa", "must be nonnegative");
    if (cfg.kernel.n < 0) throw validation_error("kernel.n", "must be nonnegative");
    if (cfg.kernel.kappa == 0.0 && cfg.kernel.n > 0)
      throw validation_error("kernel.kappa", "kappa = 0 requires kernel.n = 0");
  } else if (cfg.kernel.type == "tabulated") {
    if (cfg.kernel.file.empty())
      throw validation_error("kernel.file", "tabulated kernel needs a CSV file");
  } else {
    throw validation_error("kernel.type", "unknown type '" + cfg.kernel.type + "'");
  }

  const std::string& p = cfg.u0.preset;
  if (p != "equilibrium" && p != "scaled_equilibrium" && p != "bump" && p != "boundary_tail" &&
      p != "file")
    throw validation_error("u0.preset", "unknown preset '" + p + "'");
  if (p == "file" && cfg.u0.file.empty()) throw validation_error("u0.file", "preset needs a file");
  if (p == "scaled_equilibrium" && !(cfg.u0.scale > 0.0))
    throw validation_error("u0.scale", "must be positive");
  if (p == "bump" && (!(cfg.u0.width > 0.0) || !(cfg.u0.height > 0.0) || cfg.u0.center < 0.0))
    throw validation_error("u0.width", "bump needs positive width/height and center >= 0");
  if (p == "boundary_tail" &&
      (!(cfg.u0.offset > 0.0) || !(cfg.u0.length > 0.0) || !(cfg.u0.height > 0.0)))
    throw validation_error("u0.offset", "boundary tail needs positive offset/length/height");

  if (!(cfg.sim.dt > 0.0)) throw validation_error("sim.dt", "must be positive");
  if (!(cfg.sim.horizon >= cfg.sim.dt))
    throw validation_error("sim.horizon", "must be at least sim.dt");
  if (cfg.sim.a_max < 0.0) throw validation_error("sim.a_max", "must be nonnegative");

  if (cfg.hopf_k_max < 0) throw validation_error("hopf.k_max", "must be nonnegative");

  if (cfg.sweep.param != "alpha")
    throw validation_error("sweep.param", "only alpha sweeps are supported");
  if (cfg.sweep.steps < 0) throw validation_error("sweep.steps", "must be nonnegative");
  if (cfg.sweep.steps > 0 && !(cfg.sweep.lo <= cfg.sweep.hi))
    throw validation_error("sweep.lo", "sweep bounds must be ordered");

  for (double m : cfg.spectrum_multipliers)
    if (!(m > 0.0)) throw validation_error("spectrum.multipliers", "multipliers must be positive");
}

std::pair<std::vector<double>, std::vector<double>> read_two_column_csv(const std::string& path,
                                                                        const std::string& field) {
  std::ifstream in(path);
  if (!in) throw validation_error(field, "cannot open '" + path + "'");
  std::vector<double> xs, ys;
  std::string row;
  int line = 0;
  while (std::getline(in, row)) {
    ++line;
    std::string s = trim(row);
    if (s.empty()) continue;
    auto comma = s.find(',');
    if (comma == std::string::npos)
      throw validation_error(field, "line " + std::to_string(line) + ": expected two columns");
    std::string c0 = trim(s.substr(0, comma)), c1 = trim(s.substr(comma + 1));
    try {
      std::size_t p0 = 0, p1 = 0;
      double x = std::stod(c0, &p0), y = std::stod(c1, &p1);
      if (p0 != c0.size() || p1 != c1.size()) throw std::invalid_argument("trailing");
      xs.push_back(x);
      ys.push_back(y);
    } catch (const std::exception&) {
      if (line == 1 && xs.empty()) continue;  // header row
      throw validation_error(field, "line " + std::to_string(line) + ": expected numbers");
    }
  }
  if (xs.size() < 2) throw validation_error(field, "need at least two rows");
  double da = xs[1] - xs[0];
  if (std::abs(xs[0]) > 1e-9 || !(da > 0.0))
    throw validation_error(field, "ages must form a uniform grid starting at 0");
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (std::abs(xs[i] - da * static_cast<double>(i)) > 1e-9 * std::max(1.0, xs[i]))
      throw validation_error(field, "ages must form a uniform grid starting at 0");
  return {std::move(xs), std::move(ys)};
}

BirthKernel build_kernel(const RunConfig& cfg) {
  if (cfg.kernel.type == "shifted_gamma")
    return BirthKernel::shifted_gamma(cfg.kernel.tau, cfg.kernel.kappa, cfg.kernel.n, cfg.mu);
  auto [ages, values] = read_two_column_csv(cfg.kernel.file, "kernel.file");
  return BirthKernel::tabulated(ages[1] - ages[0], std::move(values), cfg.mu);
}

AgeProfile build_initial_profile(const RunConfig& cfg, const BirthKernel& kernel) {
  const ProfileSpec& p = cfg.u0;
  double a_max = cfg.sim.a_max > 0.0 ? cfg.sim.a_max : 30.0 / cfg.mu;
  try {
    if (p.preset == "equilibrium")
      return equilibrium_profile(cfg.alpha, cfg.mu, cfg.sim.dt, a_max);
    if (p.preset == "scaled_equilibrium")
      return equilibrium_profile(cfg.alpha, cfg.mu, cfg.sim.dt, a_max, p.scale);
    if (p.preset == "bump")
      return bump_profile(cfg.sim.dt, a_max, p.center, p.width, p.height);
    if (p.preset == "boundary_tail")
      return boundary_tail_profile(kernel, cfg.sim.dt, p.offset, p.length, p.height);
  } catch (const invalid_parameter& e) {
    throw validation_error("u0.preset", e.what());
  }
  auto [ages, values] = read_two_column_csv(p.file, "u0.file");
  AgeProfile out;
  out.da = ages[1] - ages[0];
  out.values = std::move(values);
  validate_profile(out);
  return out;
}

}  // namespace gmlab
