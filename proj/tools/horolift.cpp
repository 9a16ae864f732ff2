#include <cstdint>

#include "CLI11.hpp"

#include "horolift/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"horolift: conformal sphere metrics and their hyperbolic lifts"};
  horolift::cli::Options opt;
  app.add_option("--config", opt.config_path, "JSON config file")->required();
  app.add_option("--out", opt.out_dir, "output directory for reports/CSV");
  app.add_option("--seed", opt.seed, "RNG seed");
  app.add_option("--tol-scale", opt.tol_scale, "multiplier on all tolerances");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  if (!(opt.tol_scale > 0.0)) return 2;
  return horolift::cli::run(opt);
}
