#pragma once

#include <string>
#include <vector>

#include "gmlab/kernel.hpp"
#include "gmlab/profile.hpp"
#include "gmlab/renewal.hpp"

namespace gmlab {

struct KernelSpec {
  std::string type = "shifted_gamma";  // or "tabulated"
  double tau = 1.0;
  double kappa = 0.0;
  int n = 0;
  std::string file;  // tabulated: two-column CSV (age, beta), uniform ages from 0
};

struct ProfileSpec {
  std::string preset = "equilibrium";  // equilibrium | scaled_equilibrium | bump |
                                       // boundary_tail | file
  double scale = 1.0;                  // scaled_equilibrium
  double center = 2.0, width = 1.0, height = 1.0;  // bump (height also boundary_tail)
  double offset = 1.0, length = 4.0;               // boundary_tail box past the horizon
  std::string file;
};

struct SweepSpec {
  std::string param = "alpha";
  double lo = 0.0, hi = 0.0;
  long steps = 0;  // 0 = header-only sweep
};

struct RunConfig {
  std::string subcommand;
  double alpha = 2.0;
  double mu = 1.0;
  KernelSpec kernel;
  ProfileSpec u0;
  SimConfig sim;
  int hopf_k_max = 5;
  SweepSpec sweep;
  std::vector<double> spectrum_multipliers;  // empty = default pair
  std::string out_dir = ".";
};

// Strict key=value parser: '#' starts a comment, unknown or duplicate keys are
// parse errors carrying the 1-based line number.  Range checking happens in
// validate_config, which throws validation_error naming the offending field.
RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);
void validate_config(const RunConfig& cfg);

BirthKernel build_kernel(const RunConfig& cfg);
AgeProfile build_initial_profile(const RunConfig& cfg, const BirthKernel& kernel);

// two-column CSV; a non-numeric first row is treated as a header
std::pair<std::vector<double>, std::vector<double>> read_two_column_csv(const std::string& path,
                                                                        const std::string& field);

}  // namespace gmlab
