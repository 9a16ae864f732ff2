#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "horolift/cli.hpp"

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

json mobius_verify_config() {
  return json{{"command", "verify"},
              {"domain", {{"kind", "hemisphere"}, {"n", 2}}},
              {"factor", {{"builtin", "mobius_cap"}, {"s", std::asinh(1.0)}, {"t", std::log(2.0)}}},
              {"samples", 64},
              {"grid_res", 16}};
}

} // namespace

TEST_CASE("verify pipeline passes on the Mobius cap and reports its targets") {
  TempDir dir("horolift_cli_verify");
  horolift::cli::Options opt;
  opt.out_dir = dir.path.string();

  json report;
  const int code = horolift::cli::run_config(mobius_verify_config(), opt, &report);
  CHECK(code == 0);
  CHECK(report.at("schema") == 1);
  CHECK(report.at("pass").get<bool>());
  CHECK(report.at("result").at("boundary_c").get<double>() == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(report.at("result").at("angle_target").get<double>() ==
        doctest::Approx(0.5 / std::sqrt(1.25)).epsilon(1e-9));
  for (const auto& check : report.at("result").at("checks"))
    CHECK(check.at("pass").get<bool>());
  CHECK(fs::exists(dir.path / "report.json"));
}

TEST_CASE("reports are byte-identical for identical config and seed") {
  TempDir a("horolift_cli_det_a"), b("horolift_cli_det_b");
  horolift::cli::Options opt;
  opt.seed = 424242;

  opt.out_dir = a.path.string();
  REQUIRE(horolift::cli::run_config(mobius_verify_config(), opt, nullptr) == 0);
  opt.out_dir = b.path.string();
  REQUIRE(horolift::cli::run_config(mobius_verify_config(), opt, nullptr) == 0);

  const std::string ra = slurp(a.path / "report.json");
  CHECK(!ra.empty());
  CHECK(ra == slurp(b.path / "report.json"));
}

TEST_CASE("an impossible tolerance scale turns the gate into exit 1, not a crash") {
  TempDir dir("horolift_cli_gate");
  horolift::cli::Options opt;
  opt.out_dir = dir.path.string();
  opt.tol_scale = 1e-12;

  json report;
  CHECK(horolift::cli::run_config(mobius_verify_config(), opt, &report) == 1);
  CHECK(!report.at("pass").get<bool>());
}

TEST_CASE("config errors exit 2 with a diagnostic") {
  TempDir dir("horolift_cli_bad");
  horolift::cli::Options opt;
  opt.out_dir = dir.path.string();

  json report;
  CHECK(horolift::cli::run_config(json{{"command", "frobnicate"}}, opt, &report) == 2);
  CHECK(report.at("error").get<std::string>().find("command") != std::string::npos);

  CHECK(horolift::cli::run_config(json::array({1, 2, 3}), opt, &report) == 2);

  json no_factor = mobius_verify_config();
  no_factor.erase("factor");
  CHECK(horolift::cli::run_config(no_factor, opt, &report) == 2);

  opt.config_path = (dir.path / "missing.json").string();
  CHECK(horolift::cli::run(opt, &report) == 2);
}

TEST_CASE("a CSV factor with a non-finite sample exits 2 and names the row") {
  TempDir dir("horolift_cli_nan");
  const fs::path csv = dir.path / "bad_factor.csv";
  {
    std::ofstream out(csv);
    out << "chart,u1,u2,rho\n";
    for (int i = 0; i < 30; ++i) out << "0,0." << i << ",0.1,0.2\n";
    out << "0,0.5,nan,0.3\n";
  }
  json config = mobius_verify_config();
  config["command"] = "check_metric";
  config["factor"] = json{{"csv", csv.string()}};

  horolift::cli::Options opt;
  opt.out_dir = dir.path.string();
  json report;
  CHECK(horolift::cli::run_config(config, opt, &report) == 2);
  CHECK(report.at("error").get<std::string>().find("row") != std::string::npos);
}

TEST_CASE("solve_radial writes the profile CSV next to the report") {
  TempDir dir("horolift_cli_solve");
  const json config{{"command", "solve_radial"},
                    {"mode", "cap"},
                    {"n", 2},
                    {"data", {{"sigma_k", 1}}},
                    {"c", 1.0},
                    {"grid", 1024}};
  horolift::cli::Options opt;
  opt.out_dir = dir.path.string();
  json report;
  CHECK(horolift::cli::run_config(config, opt, &report) == 0);
  CHECK(fs::exists(dir.path / "cap_profile.csv"));
  CHECK(report.at("result").at("boundary_length").get<double>() ==
        doctest::Approx(2 * M_PI * std::sin(M_PI / 4)).epsilon(1e-4));
  CHECK(report.at("result").at("cap_area").get<double>() ==
        doctest::Approx(2 * M_PI * (1 - std::cos(M_PI / 4))).epsilon(1e-4));
}

TEST_CASE("ellipticity command") {
  TempDir dir("horolift_cli_ell");
  const json config{{"command", "ellipticity"}, {"n", 3}, {"data", {{"sigma_k", 2}}}, {"samples", 400}};
  horolift::cli::Options opt;
  opt.out_dir = dir.path.string();
  json report;
  CHECK(horolift::cli::run_config(config, opt, &report) == 0);
  CHECK(report.at("result").at("curvature_data").at("pass").get<bool>());
}

TEST_CASE("HOROLIFT_THREADS caps the worker count") {
  setenv("HOROLIFT_THREADS", "1", 1);
  CHECK(horolift::cli::worker_count() == 1);
  unsetenv("HOROLIFT_THREADS");
  CHECK(horolift::cli::worker_count() >= 1);
}

#ifdef HOROLIFT_BIN
TEST_CASE("binary exit codes through the real CLI") {
  TempDir dir("horolift_cli_bin");
  const fs::path cfg = dir.path / "cfg.json";
  std::ofstream(cfg) << mobius_verify_config().dump();

  const std::string base = std::string(HOROLIFT_BIN);
  auto exit_code = [](const std::string& cmd) {
    const int status = std::system((cmd + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
  };
  CHECK(exit_code(base + " --config " + cfg.string() + " --out " + (dir.path / "o1").string()) == 0);
  CHECK(exit_code(base) == 2);  // missing required --config
  CHECK(exit_code(base + " --config " + cfg.string() + " --tol-scale -1 --out " +
                  (dir.path / "o2").string()) == 2);
  CHECK(exit_code(base + " --config /nonexistent.json --out " + (dir.path / "o3").string()) == 2);
}
#endif
