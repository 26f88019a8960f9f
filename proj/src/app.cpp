#include "gmlab/app.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "gmlab/diagnostics.hpp"
#include "gmlab/errors.hpp"
#include "gmlab/spectral.hpp"

namespace gmlab {

namespace {

std::string num17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::ofstream open_out(const RunConfig& cfg, const std::string& name) {
  std::filesystem::path dir(cfg.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::ofstream out(dir / name);
  if (!out) throw validation_error("out", "cannot write '" + (dir / name).string() + "'");
  return out;
}

void write_trajectory(const RunConfig& cfg, const Trajectory& traj, bool with_lyapunov) {
  std::ofstream out = open_out(cfg, "trajectory.csv");
  out << (with_lyapunov ? "t,b,U,V\n" : "t,b,U\n");
  for (std::size_t i = 0; i < traj.b.size(); ++i) {
    out << num17(traj.time(i)) << ',' << num17(traj.b[i]) << ',' << num17(traj.U[i]);
    if (with_lyapunov) out << ',' << num17(traj.V[i]);
    out << '\n';
  }
}

double tail_amplitude(const Trajectory& traj) {
  auto i0 = static_cast<std::size_t>(std::ceil(0.8 * static_cast<double>(traj.steps())));
  double lo = traj.b[i0], hi = traj.b[i0];
  for (std::size_t i = i0; i < traj.b.size(); ++i) {
    lo = std::min(lo, traj.b[i]);
    hi = std::max(hi, traj.b[i]);
  }
  return hi - lo;
}

}  // namespace

int run_simulate(const RunConfig& cfg) {
  BirthKernel kernel = build_kernel(cfg);
  ModelParams params(cfg.alpha, cfg.mu, kernel);
  AgeProfile u0 = build_initial_profile(cfg, kernel);
  Trajectory traj = solve_renewal(params, u0, cfg.sim);
  write_trajectory(cfg, traj, false);
  return 0;
}

int run_equilibrium(const RunConfig& cfg) {
  double a_max = cfg.sim.a_max > 0.0 ? cfg.sim.a_max : 30.0 / cfg.mu;
  Equilibrium eq = positive_equilibrium(cfg.alpha, cfg.mu, cfg.sim.dt, a_max);
  std::ofstream out = open_out(cfg, "equilibrium.csv");
  out << "a,u_bar\n";
  for (std::size_t j = 0; j < eq.profile.values.size(); ++j)
    out << num17(eq.profile.da * static_cast<double>(j)) << ',' << num17(eq.profile.values[j])
        << '\n';
  return 0;
}

int run_spectrum(const RunConfig& cfg) {
  BirthKernel kernel = build_kernel(cfg);
  std::vector<double> ms = cfg.spectrum_multipliers;
  if (ms.empty()) {
    // default: the comparison-system pair alpha * delta_minus and alpha
    AgeProfile u0 = build_initial_profile(cfg, kernel);
    double cap = cfg.alpha / (std::exp(1.0) * cfg.mu);
    double scale = std::max(total_population(u0), cap);
    double delta = std::exp(-kernel.beta_sup() * scale);
    ms = {cfg.alpha * delta, cfg.alpha};
  }
  std::ofstream out = open_out(cfg, "spectrum.csv");
  out << "m,lambda\n";
  for (double m : ms) {
    CharRoot root = dominant_eigenvalue(m, kernel);
    out << num17(m) << ',' << num17(root.lambda) << '\n';
  }
  return 0;
}

int run_hopf(const RunConfig& cfg) {
  if (cfg.kernel.type != "shifted_gamma")
    throw validation_error("kernel.type", "hopf needs a shifted_gamma kernel");
  std::vector<HopfPoint> pts =
      hopf_locus(cfg.hopf_k_max, cfg.kernel.tau, cfg.kernel.kappa, cfg.kernel.n, cfg.mu);

  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const HopfPoint& p : pts)
    j.push_back({{"k", p.k},
                 {"omega", p.omega},
                 {"alpha", p.alpha},
                 {"transversality_re", p.transversality_re}});
  std::ofstream jout = open_out(cfg, "hopf.json");
  jout << j.dump(2) << '\n';

  std::ofstream cout_ = open_out(cfg, "hopf.csv");
  cout_ << "k,omega,alpha,transversality_re\n";
  for (const HopfPoint& p : pts)
    cout_ << p.k << ',' << num17(p.omega) << ',' << num17(p.alpha) << ','
          << num17(p.transversality_re) << '\n';
  return 0;
}

int run_sweep(const RunConfig& cfg) {
  BirthKernel kernel = build_kernel(cfg);
  std::ofstream out = open_out(cfg, "sweep.csv");
  out << "alpha,final_abs_dev,tail_amplitude,persistence_floor,status\n";
  const SweepSpec& sw = cfg.sweep;
  for (long i = 0; i < sw.steps; ++i) {
    double alpha = sw.steps == 1
                       ? sw.lo
                       : sw.lo + (sw.hi - sw.lo) * static_cast<double>(i) /
                                     static_cast<double>(sw.steps - 1);
    double dev = std::nan(""), amp = std::nan(""), floor = std::nan("");
    std::string status = "ok";
    try {
      RunConfig row = cfg;
      row.alpha = alpha;
      ModelParams params(alpha, cfg.mu, kernel);
      AgeProfile u0 = build_initial_profile(row, kernel);
      Trajectory traj = solve_renewal(params, u0, cfg.sim);
      dev = std::abs(traj.b.back() - std::log(alpha));
      amp = tail_amplitude(traj);
      floor = persistence_floor(traj, 0.2 * traj.horizon());
    } catch (const validation_error&) {
      status = "validation";
    } catch (const invalid_parameter&) {
      status = "validation";
    } catch (const domain_error&) {
      status = "domain";
    } catch (const numerical_error&) {
      status = "numerical";
    }
    out << num17(alpha) << ',' << num17(dev) << ',' << num17(amp) << ',' << num17(floor) << ','
        << status << '\n';
  }
  return 0;
}

int run_verify(const RunConfig& cfg) {
  BirthKernel kernel = build_kernel(cfg);
  ModelParams params(cfg.alpha, cfg.mu, kernel);
  AgeProfile u0 = build_initial_profile(cfg, kernel);
  BatteryReport rep = run_battery(params, u0, cfg.sim);

  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const CheckResult& c : rep.checks)
    j.push_back({{"check_name", c.name},
                 {"pass", c.pass},
                 {"measured", c.measured},
                 {"threshold", c.threshold}});
  std::ofstream jout = open_out(cfg, "verify.json");
  jout << j.dump(2) << '\n';

  write_trajectory(cfg, rep.trajectory,
                   !rep.trajectory.V.empty() && rep.trajectory.V.size() == rep.trajectory.b.size());
  return rep.all_pass() ? 0 : 4;
}

int dispatch(const RunConfig& cfg) {
  if (cfg.subcommand == "simulate") return run_simulate(cfg);
  if (cfg.subcommand == "equilibrium") return run_equilibrium(cfg);
  if (cfg.subcommand == "spectrum") return run_spectrum(cfg);
  if (cfg.subcommand == "hopf") return run_hopf(cfg);
  if (cfg.subcommand == "sweep") return run_sweep(cfg);
  if (cfg.subcommand == "verify") return run_verify(cfg);
  throw invalid_parameter("unknown subcommand '" + cfg.subcommand + "'");
}

}  // namespace gmlab
