#pragma once

#include "gmlab/config.hpp"

namespace gmlab {

// Subcommand drivers.  Each writes its outputs under cfg.out_dir and returns
// a process exit code: 0 on success, 4 when `verify` finds a failing check.
// Config and input problems surface as validation_error/parse_error (exit 2
// in main), math failures as domain_error/numerical_error (exit 3).
int run_simulate(const RunConfig& cfg);
int run_equilibrium(const RunConfig& cfg);
int run_spectrum(const RunConfig& cfg);
int run_hopf(const RunConfig& cfg);
int run_sweep(const RunConfig& cfg);
int run_verify(const RunConfig& cfg);

int dispatch(const RunConfig& cfg);

}  // namespace gmlab
