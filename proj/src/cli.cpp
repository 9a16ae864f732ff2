#include "horolift/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "horolift/boundary.hpp"
#include "horolift/elliptic.hpp"
#include "horolift/lift.hpp"
#include "horolift/metric.hpp"
#include "horolift/radial.hpp"

namespace horolift::cli {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// config parsing

double require_number(const json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_number())
    throw std::invalid_argument("config: missing numeric field '" + key + "'");
  return j[key].get<double>();
}

DomainSpec parse_domain(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: 'domain' must be an object");
  const std::string kind = j.value("kind", "hemisphere");
  const int n = j.value("n", 2);
  if (n < 2 || n > 8) throw std::invalid_argument("config: domain n must be in [2, 8]");
  if (kind == "hemisphere") return DomainSpec::hemisphere(n);
  if (kind == "cap") return DomainSpec::cap(n, require_number(j, "r"));
  if (kind == "annulus") return DomainSpec::annulus(n, require_number(j, "r"));
  if (kind == "full_sphere") return DomainSpec::full_sphere(n);
  throw std::invalid_argument("config: unknown domain kind '" + kind + "'");
}

FactorPtr parse_factor(int n, const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: 'factor' must be an object");
  if (j.contains("csv"))
    return std::make_shared<GridFactor>(GridFactor::from_csv(n, j["csv"].get<std::string>()));
  const std::string builtin = j.value("builtin", "");
  if (builtin == "constant") return std::make_shared<ConstantFactor>(n, require_number(j, "t"));
  if (builtin == "mobius_cap")
    return std::make_shared<MobiusCapFactor>(n, require_number(j, "s"), j.value("t", 0.0));
  throw std::invalid_argument("config: unknown factor '" + builtin + "'");
}

EllipticData parse_data(int n, const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: 'data' must be an object");
  if (j.contains("sigma_k")) return sigma_k_data(n, j["sigma_k"].get<int>());
  if (j.contains("expression")) return expression_data(n, j["expression"].get<std::string>());
  throw std::invalid_argument("config: data must name 'sigma_k' or 'expression'");
}

// ---------------------------------------------------------------------------
// worker pool (HOROLIFT_THREADS caps the count); used for per-sample maxima.

template <typename Fn>
double parallel_max(int count, Fn&& per_index) {
  const int workers = std::min(worker_count(), std::max(1, count / 16));
  if (workers <= 1) {
    double worst = 0.0;
    for (int i = 0; i < count; ++i) worst = std::max(worst, per_index(i));
    return worst;
  }
  std::vector<double> partial(workers, 0.0);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      double worst = 0.0;
      for (int i = w; i < count; i += workers) worst = std::max(worst, per_index(i));
      partial[w] = worst;
    });
  for (auto& t : pool) t.join();
  return *std::max_element(partial.begin(), partial.end());
}

json check_entry(const std::string& name, double worst, double tol, bool pass,
                 int samples, const std::string& note = "") {
  return json{{"name", name}, {"worst", worst}, {"tol", tol},
              {"pass", pass}, {"samples", samples}, {"note", note}};
}

// <d psi, d psi> vs e^{2 rho} g_0 by central differences of the lift,
// Richardson-extrapolated once.
double psi_metric_residual(const ConformalFactor& factor, const Vec& x, double h) {
  const int n = factor.dim();
  const Chart chart = preferred_chart(n, x);
  const Vec u = chart_coords(chart, x);
  auto central = [&](double step) {
    Mat d(n + 2, n);
    for (int j = 0; j < n; ++j) {
      Vec up = u, um = u;
      up(j) += step;
      um(j) -= step;
      Vec phi, eta, psi_p, psi_m;
      lift_point(factor, chart_point(chart, up), phi, eta, psi_p);
      lift_point(factor, chart_point(chart, um), phi, eta, psi_m);
      d.col(j) = (psi_p - psi_m) / (2.0 * step);
    }
    return d;
  };
  const Mat dpsi = (4.0 * central(0.5 * h) - central(h)) / 3.0;
  const double target = std::exp(2.0 * factor.rho(x)) * chart_sigma(u) * chart_sigma(u);
  double worst = 0.0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      worst = std::max(worst, std::abs(minkowski_inner(dpsi.col(j), dpsi.col(k)) -
                                       (j == k ? target : 0.0)));
  return worst;
}

// ---------------------------------------------------------------------------
// commands

json cmd_check_metric(const json& config, const Options& opt, bool& gates_pass) {
  const DomainSpec domain = parse_domain(config.at("domain"));
  const FactorPtr factor = parse_factor(domain.n, config.at("factor"));
  const int samples = config.value("samples", 200);
  const int grid_res = std::max(16, config.value("grid_res", 24));
  const unsigned seed = static_cast<unsigned>(opt.seed);

  double lam_min = std::numeric_limits<double>::infinity(), lam_max = -lam_min;
  for (const Vec& x : sample_interior(domain, samples, seed)) {
    const Vec lam = schouten_tensor(*factor, x).lambda;
    lam_min = std::min(lam_min, lam.minCoeff());
    lam_max = std::max(lam_max, lam.maxCoeff());
  }

  json boundary = json::array();
  if (domain.has_boundary()) {
    std::vector<std::pair<std::string, BoundaryComponent>> comps{
        {"outer", BoundaryComponent::Outer}};
    if (domain.has_inner_boundary()) comps.emplace_back("inner", BoundaryComponent::Inner);
    for (const auto& [name, comp] : comps) {
      double h_min = std::numeric_limits<double>::infinity(), h_max = -h_min, h_sum = 0.0;
      const auto pts = sample_boundary(domain, comp, samples, seed + 1);
      for (const Vec& x : pts) {
        const double h = boundary_mean_curvature(*factor, domain, comp, x);
        h_min = std::min(h_min, h);
        h_max = std::max(h_max, h);
        h_sum += h;
      }
      boundary.push_back(json{{"component", name},
                              {"h_min", h_min},
                              {"h_max", h_max},
                              {"h_mean", h_sum / pts.size()}});
    }
  }

  const NormalizationCertificate cert = normalize_for_lift(*factor, domain, grid_res);
  gates_pass = cert.ok;
  return json{{"lambda_min", lam_min},
              {"lambda_max", lam_max},
              {"boundary", boundary},
              {"normalization",
               json{{"t0", cert.t0},
                    {"p1_slack", cert.p1_slack},
                    {"p2_slack", std::isfinite(cert.p2_slack) ? json(cert.p2_slack) : json()},
                    {"grid_points", cert.grid_points},
                    {"boundary_points", cert.boundary_points}}},
              {"provider", factor->provider()}};
}

json cmd_verify(const json& config, const Options& opt, bool& gates_pass) {
  const DomainSpec domain = parse_domain(config.at("domain"));
  const FactorPtr base = parse_factor(domain.n, config.at("factor"));
  const int samples = config.value("samples", 200);
  const int grid_res = std::max(16, config.value("grid_res", 24));
  const unsigned seed = static_cast<unsigned>(opt.seed);
  const double ts = opt.tol_scale;
  const bool closed = base->closed_form();

  const NormalizationCertificate cert = normalize_for_lift(*base, domain, grid_res);
  const FactorPtr factor = dilate(base, cert.t0);

  // Equidistant-plane level: the boundary datum c is the negative of the
  // geometric-inward mean curvature reported by the metric module.
  double c = 0.0;
  {
    const auto pts = sample_boundary(domain, BoundaryComponent::Outer, 16, seed + 7);
    for (const Vec& x : pts)
      c -= boundary_mean_curvature(*factor, domain, BoundaryComponent::Outer, x);
    c /= pts.size();
  }

  const auto interior = sample_interior(domain, samples, seed);
  json checks = json::array();

  {
    const double tol = (closed ? 1e-10 : 1e-8) * ts;
    const double worst = parallel_max(samples, [&](int i) {
      Vec phi, eta, psi;
      lift_point(*factor, interior[i], phi, eta, psi);
      double w = std::abs(minkowski_inner(phi, phi) + 1.0);
      w = std::max(w, std::abs(minkowski_inner(eta, eta) - 1.0));
      w = std::max(w, std::abs(minkowski_inner(phi, eta)));
      w = std::max(w, std::abs(minkowski_inner(psi, psi)));
      return w;
    });
    checks.push_back(check_entry("quadric_invariants", worst, tol, worst <= tol, samples));
  }
  {
    const double tol = 1e-10 * ts;
    const double worst = parallel_max(samples, [&](int i) {
      const HypersurfaceSample s = lift_sample(*factor, interior[i]);
      return (gauss_map(s) - s.x).cwiseAbs().maxCoeff();
    });
    checks.push_back(check_entry("gauss_map", worst, tol, worst <= tol, samples));
  }
  {
    const double tol = (closed ? 1e-8 : 5e-4) * ts;
    const double worst =
        parallel_max(samples, [&](int i) { return verify_lambda_kappa(*factor, interior[i]); });
    checks.push_back(check_entry("lambda_kappa", worst, tol, worst <= tol, samples,
                                 closed ? "closed-form derivatives" : "finite differences"));
  }
  {
    const double h = 1e-3, tol = 5.0 * h * h * ts;
    const int count = std::min(samples, 50);
    const double worst =
        parallel_max(count, [&](int i) { return psi_metric_residual(*factor, interior[i], h); });
    checks.push_back(check_entry("psi_metric_recovery", worst, tol, worst <= tol, count,
                                 "finite differences at h = 1e-3"));
  }
  if (domain.has_boundary()) {
    const double tol = 1e-6 * ts;
    const PlaneSpec plane = PlaneSpec::equidistant(domain.n, c);
    checks.push_back(check_boundary_in_plane(*factor, domain, BoundaryComponent::Outer, plane,
                                             samples, seed + 1, tol)
                         .to_json());
    if (domain.has_inner_boundary())
      checks.push_back(check_boundary_in_plane(*factor, domain, BoundaryComponent::Inner,
                                               PlaneSpec::geodesic_polar(domain.n, domain.r),
                                               samples, seed + 2, tol)
                           .to_json());
    checks.push_back(check_halfspace(*factor, domain, c, samples, seed + 3).to_json());
    checks.push_back(check_angle(*factor, domain, c, samples, seed + 4, tol).to_json());
    checks.push_back(check_convexity_bound(*factor, domain, c, samples, seed + 5).to_json());
  }

  gates_pass = true;
  for (const auto& entry : checks) gates_pass = gates_pass && entry.at("pass").get<bool>();
  return json{{"normalization_t0", cert.t0},
              {"boundary_c", c},
              {"angle_target", c / std::sqrt(1.0 + c * c)},
              {"checks", checks},
              {"provider", factor->provider()}};
}

json cmd_solve_radial(const json& config, const Options& opt, bool& gates_pass) {
  const std::string mode = config.value("mode", "cap");
  const int n = config.value("n", 2);
  if (n < 2 || n > 8) throw std::invalid_argument("config: n must be in [2, 8]");
  const EllipticData data = parse_data(n, config.at("data"));
  const int grid = config.value("grid", 4096);
  if (grid < 16) throw std::invalid_argument("config: grid must be >= 16");
  const double ts = opt.tol_scale;

  RadialProfile prof;
  json extra;
  if (mode == "cap") {
    prof = shoot_cap(data, require_number(config, "c"), grid);
    const MobiusFit fit = fit_mobius(prof);
    extra["mobius_fit"] = json{{"s", fit.s}, {"t", fit.t}, {"sup_deviation", fit.sup_deviation}};
    if (n == 2) {
      extra["boundary_length"] = profile_boundary_measure(n, prof);
      extra["cap_area"] = profile_cap_area_2d(prof);
    }
  } else if (mode == "annulus") {
    prof = shoot_annulus(data, require_number(config, "r"), grid);
    extra["reflection_residual"] = reflection_extension_residual(data, prof);
  } else {
    throw std::invalid_argument("config: mode must be 'cap' or 'annulus'");
  }

  const std::string csv =
      (std::filesystem::path(opt.out_dir) / (mode + "_profile.csv")).string();
  export_profile_csv(prof, csv);

  const double gate = 1e-8 * ts;
  gates_pass = prof.max_interior_residual <= gate && prof.inner_residual <= gate &&
               prof.outer_residual <= gate;
  if (extra.contains("reflection_residual"))
    gates_pass = gates_pass && extra["reflection_residual"].get<double>() <= gate;

  json out{{"mode", mode},
           {"data", data.name},
           {"grid", grid},
           {"shoot_param", prof.shoot_param},
           {"branches", prof.branches},
           {"interior_residual", prof.max_interior_residual},
           {"inner_residual", prof.inner_residual},
           {"outer_residual", prof.outer_residual},
           {"in_cone", prof.in_cone_everywhere},
           {"residual_gate", gate},
           {"profile_csv", csv}};
  out.update(extra);
  return out;
}

json cmd_ellipticity(const json& config, const Options& opt, bool& gates_pass) {
  const int n = config.value("n", 3);
  if (n < 2 || n > 8) throw std::invalid_argument("config: n must be in [2, 8]");
  const EllipticData data = parse_data(n, config.at("data"));
  const int samples = config.value("samples", 1000);
  const unsigned seed = static_cast<unsigned>(opt.seed);

  const EllipticityReport rep = check_ellipticity(data, samples, seed);

  // Transferred checks for (W, Gamma*) and the transform identity
  // T(kappa) = 1/2 - 1/(1 + kappa). The base diagonal lambda_0 = 1/2 maps to
  // kappa = infinity, so the transfer is checked on the dilated data (whose
  // solutions are exactly the dilated solutions of the base problem).
  const EllipticData shrunk = dilated_data(data, std::log(2.0));
  const CurvatureData curv = make_curvature_data(shrunk);
  std::mt19937_64 rng(seed ^ 0xc0ffee);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double transform_err = 0.0, w_grad_min = std::numeric_limits<double>::infinity();
  int cone_hits = 0;
  for (int it = 0; it < samples; ++it) {
    Vec kappa(n);
    for (int i = 0; i < n; ++i) kappa(i) = std::exp(gauss(rng)) - 1.0 + 1e-6;
    const Vec lam = curvature_transform(kappa);
    for (int i = 0; i < n; ++i) {
      const double alt = 0.5 - 1.0 / (1.0 + kappa(i));
      transform_err = std::max(
          transform_err, std::abs(lam(i) - alt) / std::max(1.0, std::abs(alt)));
    }
    if (!curv.in_cone(kappa)) continue;
    ++cone_hits;
    if (cone_hits <= 100) {  // FD monotonicity of W on cone samples
      for (int i = 0; i < n; ++i) {
        Vec kp = kappa, km = kappa;
        kp(i) += 1e-6;
        km(i) -= 1e-6;
        w_grad_min = std::min(w_grad_min, (curv.W(kp) - curv.W(km)) / 2e-6);
      }
    }
  }
  const double kappa0 =
      (1.0 + 2.0 * shrunk.lambda0) / (1.0 - 2.0 * shrunk.lambda0);
  const double w_norm_err = std::abs(curv.W(Vec::Constant(n, kappa0)) - 1.0);

  const bool transferred_pass =
      transform_err <= 1e-14 && w_norm_err <= 1e-10 && cone_hits > 0 && w_grad_min > 0.0;
  gates_pass = rep.core_pass() && transferred_pass;

  json out = rep.to_json();
  out["curvature_data"] = json{{"name", curv.name},
                               {"transform_identity_err", transform_err},
                               {"normalization_err", w_norm_err},
                               {"grad_min", w_grad_min},
                               {"cone_hits", cone_hits},
                               {"pass", transferred_pass}};
  return out;
}

void write_atomic(const std::filesystem::path& path, const std::string& text) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::invalid_argument("cannot write " + tmp.string());
    out << text;
  }
  std::filesystem::rename(tmp, path);
}

} // namespace

int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  if (const char* env = std::getenv("HOROLIFT_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) hw = std::min(hw, cap);
  }
  return hw;
}

int run_config(const nlohmann::json& config, const Options& options, nlohmann::json* report) {
  json rep{{"schema", 1},
           {"seed", options.seed},
           {"tol_scale", options.tol_scale},
           {"threads", worker_count()}};
  int code = 0;
  std::filesystem::create_directories(options.out_dir);
  try {
    if (!config.is_object() || !config.contains("command") || !config["command"].is_string())
      throw std::invalid_argument("config: missing 'command'");
    const std::string command = config["command"].get<std::string>();
    rep["command"] = command;

    bool gates = false;
    json body;
    if (command == "check_metric") body = cmd_check_metric(config, options, gates);
    else if (command == "verify") body = cmd_verify(config, options, gates);
    else if (command == "solve_radial") body = cmd_solve_radial(config, options, gates);
    else if (command == "ellipticity") body = cmd_ellipticity(config, options, gates);
    else throw std::invalid_argument("config: unknown command '" + command + "'");

    rep["result"] = body;
    rep["pass"] = gates;
    code = gates ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    rep["error"] = e.what();
    rep["pass"] = false;
    code = 2;
  } catch (const nlohmann::json::exception& e) {
    rep["error"] = e.what();
    rep["pass"] = false;
    code = 2;
  } catch (const std::exception& e) {
    // mathematical failures (no solution found, degenerate lift, ...)
    rep["error"] = e.what();
    rep["pass"] = false;
    code = 1;
  }

  std::filesystem::create_directories(options.out_dir);
  write_atomic(std::filesystem::path(options.out_dir) / "report.json", rep.dump(2) + "\n");
  if (report) *report = rep;
  return code;
}

int run(const Options& options, nlohmann::json* report) {
  json config;
  try {
    std::ifstream in(options.config_path);
    if (!in) throw std::invalid_argument("cannot open config " + options.config_path);
    in >> config;
  } catch (const std::exception& e) {
    json rep{{"schema", 1}, {"error", e.what()}, {"pass", false}};
    std::filesystem::create_directories(options.out_dir);
    write_atomic(std::filesystem::path(options.out_dir) / "report.json", rep.dump(2) + "\n");
    if (report) *report = rep;
    return 2;
  }
  return run_config(config, options, report);
}

} // namespace horolift::cli
