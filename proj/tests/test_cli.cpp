#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const std::string kBin = std::string(GMLAB_BINARY_DIR) + "/gmlab";

fs::path suite_dir() {
  static fs::path d = [] {
    fs::path p = fs::temp_directory_path() / "gmlab_cli_test";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return d;
}

int run_cli(const std::string& args) {
  std::string cmd = kBin + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

fs::path write_file(const std::string& name, const std::string& text) {
  fs::path p = suite_dir() / name;
  std::ofstream out(p);
  out << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t line_count(const std::string& text) {
  std::size_t n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("usage errors exit with code 1") {
  CHECK(run_cli("") == 1);
  CHECK(run_cli("simulate") == 1);
  CHECK(run_cli("frobnicate --config x.cfg") == 1);
}

TEST_CASE("config problems exit with code 2") {
  fs::path bad = write_file("bad_key.cfg", "alpha = 2\nnot.a.key = 1\n");
  CHECK(run_cli("simulate --config " + bad.string()) == 2);

  fs::path neg = write_file("neg_alpha.cfg", "alpha = -1\n");
  CHECK(run_cli("simulate --config " + neg.string()) == 2);

  fs::path kcsv = write_file("kernel.csv", "0,0\n0.5,1\n1.0,0\n");
  fs::path tab = write_file("tab.cfg",
                            "kernel.type = tabulated\nkernel.file = " + kcsv.string() + "\n");
  CHECK(run_cli("hopf --config " + tab.string()) == 2);

  CHECK(run_cli("simulate --config " + (suite_dir() / "missing.cfg").string()) == 2);
}

TEST_CASE("numerical domain problems exit with code 3") {
  fs::path sub = write_file("subcritical.cfg", "alpha = 0.5\n");
  CHECK(run_cli("equilibrium --config " + sub.string() + " --out " +
                (suite_dir() / "eq_sub").string()) == 3);
}

TEST_CASE("simulate writes a trajectory table honoring overrides") {
  fs::path cfg = write_file("sim.cfg", "alpha = 2\n");
  fs::path out = suite_dir() / "sim_out";
  CHECK(run_cli("simulate --config " + cfg.string() + " --out " + out.string() +
                " --dt 0.02 --T 1") == 0);
  std::string csv = slurp(out / "trajectory.csv");
  CHECK(csv.rfind("t,b,U\n", 0) == 0);
  CHECK(line_count(csv) == 52);  // header plus 51 steps
  CHECK(csv.find("nan") == std::string::npos);
}

TEST_CASE("verify reports every check as json and exits zero on a sound run") {
  fs::path cfg = write_file("verify.cfg", "alpha = 2\n");
  fs::path out = suite_dir() / "verify_out";
  CHECK(run_cli("verify --config " + cfg.string() + " --out " + out.string() + " --T 30") == 0);
  nlohmann::json doc = nlohmann::json::parse(slurp(out / "verify.json"));
  REQUIRE(doc.is_array());
  CHECK(doc.size() >= 5);
  for (const auto& item : doc) {
    CHECK(item.contains("check_name"));
    CHECK(item.contains("pass"));
    CHECK(item.contains("measured"));
    CHECK(item.contains("threshold"));
    CHECK(item["pass"].get<bool>());
  }
  CHECK(fs::exists(out / "trajectory.csv"));
}

TEST_CASE("equilibrium and spectrum emit their tables") {
  fs::path cfg = write_file("spec.cfg", "alpha = 2\nspectrum.multipliers = 0.5, 1, 2\n");
  fs::path out = suite_dir() / "spec_out";
  CHECK(run_cli("equilibrium --config " + cfg.string() + " --out " + out.string()) == 0);
  std::string eq = slurp(out / "equilibrium.csv");
  CHECK(eq.rfind("a,u_bar\n", 0) == 0);
  CHECK(line_count(eq) > 2);

  CHECK(run_cli("spectrum --config " + cfg.string() + " --out " + out.string()) == 0);
  std::string sp = slurp(out / "spectrum.csv");
  CHECK(sp.rfind("m,lambda\n", 0) == 0);
  CHECK(line_count(sp) == 4);

  fs::path dflt = write_file("spec_default.cfg", "alpha = 2\n");
  fs::path out2 = suite_dir() / "spec_default_out";
  CHECK(run_cli("spectrum --config " + dflt.string() + " --out " + out2.string()) == 0);
  CHECK(line_count(slurp(out2 / "spectrum.csv")) == 3);
}

TEST_CASE("hopf writes a locus for every requested branch") {
  fs::path cfg = write_file("hopf.cfg", "hopf.k_max = 3\n");
  fs::path out = suite_dir() / "hopf_out";
  CHECK(run_cli("hopf --config " + cfg.string() + " --out " + out.string()) == 0);
  nlohmann::json doc = nlohmann::json::parse(slurp(out / "hopf.json"));
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 4);
  double prev = 0.0;
  for (const auto& item : doc) {
    CHECK(item.contains("k"));
    CHECK(item.contains("omega"));
    CHECK(item.contains("alpha"));
    CHECK(item.contains("transversality_re"));
    double a = item["alpha"].get<double>();
    CHECK(a > prev);
    prev = a;
  }
  CHECK(line_count(slurp(out / "hopf.csv")) == 5);
}

TEST_CASE("sweep output is deterministic and row status tracks failures") {
  fs::path cfg = write_file("sweep.cfg",
                            "sweep.steps = 3\nsweep.lo = 1.5\nsweep.hi = 5\n");
  fs::path out_a = suite_dir() / "sweep_a";
  fs::path out_b = suite_dir() / "sweep_b";
  CHECK(run_cli("sweep --config " + cfg.string() + " --out " + out_a.string() + " --T 20") == 0);
  CHECK(run_cli("sweep --config " + cfg.string() + " --out " + out_b.string() + " --T 20") == 0);
  std::string a = slurp(out_a / "sweep.csv");
  CHECK(a == slurp(out_b / "sweep.csv"));
  CHECK(a.rfind("alpha,final_abs_dev,tail_amplitude,persistence_floor,status\n", 0) == 0);
  CHECK(line_count(a) == 4);
  CHECK(a.find(",ok") != std::string::npos);

  fs::path empty = write_file("sweep_empty.cfg", "alpha = 2\n");
  fs::path out_e = suite_dir() / "sweep_empty_out";
  CHECK(run_cli("sweep --config " + empty.string() + " --out " + out_e.string()) == 0);
  CHECK(line_count(slurp(out_e / "sweep.csv")) == 1);

  fs::path sub = write_file("sweep_sub.cfg", "sweep.steps = 1\nsweep.lo = 0.5\nsweep.hi = 0.5\n");
  fs::path out_s = suite_dir() / "sweep_sub_out";
  CHECK(run_cli("sweep --config " + sub.string() + " --out " + out_s.string() + " --T 5") == 0);
  std::string s = slurp(out_s / "sweep.csv");
  CHECK(line_count(s) == 2);
  CHECK(s.find("domain") != std::string::npos);
}
