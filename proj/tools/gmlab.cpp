#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gmlab/app.hpp"
#include "gmlab/errors.hpp"

namespace {

struct Cli {
  std::string config_path;
  std::string out_dir;
  double dt = 0.0;
  double horizon = 0.0;
};

void add_common(CLI::App* sub, Cli& cli) {
  sub->add_option("--config", cli.config_path, "key=value config file")->required();
  sub->add_option("--out", cli.out_dir, "output directory (default .)");
  sub->add_option("--dt", cli.dt, "override sim.dt");
  sub->add_option("--T", cli.horizon, "override sim.horizon");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"age-structured renewal model laboratory"};
  app.require_subcommand(1);
  Cli cli;
  for (const char* name : {"simulate", "equilibrium", "spectrum", "hopf", "sweep", "verify"})
    add_common(app.add_subcommand(name), cli);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    gmlab::RunConfig cfg = gmlab::load_config_file(cli.config_path);
    cfg.subcommand = app.get_subcommands().front()->get_name();
    if (!cli.out_dir.empty()) cfg.out_dir = cli.out_dir;
    if (cli.dt > 0.0) cfg.sim.dt = cli.dt;
    if (cli.horizon > 0.0) cfg.sim.horizon = cli.horizon;
    gmlab::validate_config(cfg);
    return gmlab::dispatch(cfg);
  } catch (const gmlab::parse_error& e) {
    std::cerr << "config parse error: " << e.what() << '\n';
    return 2;
  } catch (const gmlab::validation_error& e) {
    std::cerr << "config validation error: " << e.what() << '\n';
    return 2;
  } catch (const gmlab::invalid_parameter& e) {
    std::cerr << "invalid parameter: " << e.what() << '\n';
    return 2;
  } catch (const gmlab::insufficient_history& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const gmlab::domain_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 3;
  } catch (const gmlab::numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
