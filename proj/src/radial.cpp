#include "horolift/radial.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace horolift {

namespace {

constexpr double kPi = 3.14159265358979323846;

Vec lambda_vector(int n, double lambda_rad, double lambda_tan) {
  Vec v = Vec::Constant(n, lambda_tan);
  v(0) = lambda_rad;
  return v;
}

double sphere_area(int m) {  // (m)-volume of the unit S^m
  return 2.0 * std::pow(kPi, 0.5 * (m + 1)) / std::tgamma(0.5 * (m + 1));
}

} // namespace

void radial_eigenvalues(double rho, double drho, double d2rho, double theta,
                        double& lambda_rad, double& lambda_tan) {
  const double e2 = std::exp(-2.0 * rho);
  const double cot_term = (theta < 1e-9) ? d2rho : drho / std::tan(theta);
  lambda_rad = e2 * (-d2rho + 0.5 * drho * drho + 0.5);
  lambda_tan = e2 * (-cot_term - 0.5 * drho * drho + 0.5);
}

double solve_for_rho2(const EllipticData& data, double rho, double drho, double theta,
                      double hint) {
  const int n = data.n;
  const double e2 = std::exp(-2.0 * rho);
  const bool at_pole = theta < 1e-9;

  auto g = [&](double p) {
    double lr, lt;
    radial_eigenvalues(rho, drho, p, theta, lr, lt);
    return data.f(lambda_vector(n, lr, lt)) - 1.0;
  };
  // g is strictly decreasing in p: d lambda_rad / dp = -e^{-2 rho} and
  // (at the pole) d lambda_tan / dp likewise, with df/d lambda_i > 0.
  auto dg = [&](double p) -> double {
    if (!data.grad) return 0.0;
    double lr, lt;
    radial_eigenvalues(rho, drho, p, theta, lr, lt);
    const Vec gr = data.grad(lambda_vector(n, lr, lt));
    double d = -e2 * gr(0);
    if (at_pole) d += -e2 * gr.tail(n - 1).sum();
    return d;
  };

  double lo = std::clamp(hint, -1e3, 1e3), hi = lo, step = 1.0;
  while (g(lo) < 0.0) {
    if (lo <= -1e3)
      throw std::runtime_error("cone exit: no rho'' bracket within |rho''| <= 1e3");
    lo = std::max(lo - step, -1e3);
    step *= 2.0;
  }
  step = 1.0;
  while (g(hi) > 0.0) {
    if (hi >= 1e3)
      throw std::runtime_error("cone exit: no rho'' bracket within |rho''| <= 1e3");
    hi = std::min(hi + step, 1e3);
    step *= 2.0;
  }
  if (!(std::isfinite(g(lo)) && std::isfinite(g(hi))))
    throw std::runtime_error("cone exit: non-finite state in rho'' solve");

  double p = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double gp = g(p);
    if (std::abs(gp) <= 1e-14) return p;
    (gp > 0.0 ? lo : hi) = p;
    double next = p;
    const double slope = dg(p);
    if (slope != 0.0) next = p - gp / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo <= 1e-14 * std::max(1.0, std::abs(p))) return 0.5 * (lo + hi);
    p = next;
  }
  return p;
}

namespace {

// RK4 on (rho, rho') with the implicit rho'' solve embedded per stage.
// theta_a = 0 starts with the regular series step using
// rho''(0) = 1/2 - lambda_0 e^{2 rho(0)} (lambda_rad = lambda_tan = lambda_0).
RadialProfile integrate(const EllipticData& data, double theta_a, double theta_b,
                        double rho_a, double drho_a, int J) {
  RadialProfile prof;
  prof.theta_a = theta_a;
  prof.theta_b = theta_b;
  prof.data_name = data.name;
  prof.theta.resize(J);
  prof.rho.resize(J);
  prof.drho.resize(J);
  prof.d2rho.resize(J);
  const double h = (theta_b - theta_a) / (J - 1);
  for (int j = 0; j < J; ++j) prof.theta(j) = theta_a + h * j;

  double hint = 0.0;
  auto accel = [&](double th, double r, double dr) {
    const double p = solve_for_rho2(data, r, dr, th, hint);
    hint = p;
    return p;
  };

  int j0 = 0;
  prof.rho(0) = rho_a;
  prof.drho(0) = drho_a;
  if (theta_a == 0.0) {
    const double p0 = 0.5 - data.lambda0 * std::exp(2.0 * rho_a);
    hint = p0;
    prof.rho(1) = rho_a + 0.5 * p0 * h * h;
    prof.drho(1) = p0 * h;
    j0 = 1;
  }
  for (int j = j0; j + 1 < J; ++j) {
    const double th = prof.theta(j);
    const double r = prof.rho(j), dr = prof.drho(j);
    const double k1r = dr, k1v = accel(th, r, dr);
    const double k2r = dr + 0.5 * h * k1v,
                 k2v = accel(th + 0.5 * h, r + 0.5 * h * k1r, dr + 0.5 * h * k1v);
    const double k3r = dr + 0.5 * h * k2v,
                 k3v = accel(th + 0.5 * h, r + 0.5 * h * k2r, dr + 0.5 * h * k2v);
    const double k4r = dr + h * k3v, k4v = accel(th + h, r + h * k3r, dr + h * k3v);
    prof.rho(j + 1) = r + (h / 6.0) * (k1r + 2.0 * k2r + 2.0 * k3r + k4r);
    prof.drho(j + 1) = dr + (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  }

  prof.lambda_rad.resize(J);
  prof.lambda_tan.resize(J);
  prof.residual.resize(J);
  hint = 0.0;
  for (int j = 0; j < J; ++j) {
    const double p = solve_for_rho2(data, prof.rho(j), prof.drho(j), prof.theta(j), hint);
    hint = p;
    prof.d2rho(j) = p;
    double lr, lt;
    radial_eigenvalues(prof.rho(j), prof.drho(j), p, prof.theta(j), lr, lt);
    prof.lambda_rad(j) = lr;
    prof.lambda_tan(j) = lt;
    const Vec lam = lambda_vector(data.n, lr, lt);
    prof.residual(j) = data.f(lam) - 1.0;
    if (!data.in_cone(lam)) prof.in_cone_everywhere = false;
  }
  prof.max_interior_residual = prof.residual.cwiseAbs().maxCoeff();
  return prof;
}

// All shooting roots of `residual` over the initial datum in [-10, 10]:
// coarse sign scan, then Illinois refinement per bracket. Scan points where
// the integration exits the cone are skipped.
std::vector<double> shooting_roots(const std::function<double(double)>& residual) {
  constexpr int kScan = 81;
  std::vector<std::pair<double, double>> vals;
  for (int i = 0; i < kScan; ++i) {
    const double p = -10.0 + 20.0 * i / (kScan - 1);
    try {
      const double v = residual(p);
      if (std::isfinite(v)) vals.emplace_back(p, v);
    } catch (const std::runtime_error&) {
      // cone exit at this initial datum; not a bracket endpoint
    }
  }
  std::vector<double> roots;
  for (size_t i = 0; i + 1 < vals.size(); ++i) {
    auto [a, fa] = vals[i];
    auto [b, fb] = vals[i + 1];
    if (fa == 0.0) {
      roots.push_back(a);
      continue;
    }
    if (fa * fb >= 0.0) continue;
    for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
      const double m = (a * fb - b * fa) / (fb - fa);
      double fm;
      try {
        fm = residual(m);
      } catch (const std::runtime_error&) {
        break;
      }
      if (!std::isfinite(fm)) break;
      if (std::abs(fm) <= 1e-12) {
        a = b = m;
        fa = fb = fm;
        break;
      }
      if (fa * fm < 0.0) {
        b = m;
        fb = fm;
        fa *= 0.5;  // Illinois
      } else {
        a = m;
        fa = fm;
        fb *= 0.5;
      }
    }
    const double root = 0.5 * (a + b);
    if (roots.empty() || std::abs(root - roots.back()) > 1e-6) roots.push_back(root);
  }
  return roots;
}

} // namespace

RadialProfile shoot_cap(const EllipticData& data, double c, int grid) {
  if (grid < 16) throw std::invalid_argument("shoot_cap: grid too small");
  auto boundary_residual = [&](const RadialProfile& p) {
    const int J = p.size();
    return std::exp(-p.rho(J - 1)) * p.drho(J - 1) - c;
  };
  auto residual = [&](double rho0) {
    return boundary_residual(integrate(data, 0.0, kPi / 2.0, rho0, 0.0, grid));
  };
  const std::vector<double> roots = shooting_roots(residual);
  if (roots.empty())
    throw std::runtime_error("no solution found: shooting bracket rho(0) in [-10, 10] has no root");

  RadialProfile prof = integrate(data, 0.0, kPi / 2.0, roots.front(), 0.0, grid);
  prof.boundary_target = c;
  prof.shoot_param = roots.front();
  prof.branches = roots;
  prof.inner_residual = std::abs(prof.drho(0));
  prof.outer_residual = std::abs(boundary_residual(prof));
  return prof;
}

RadialProfile shoot_annulus(const EllipticData& data, double r, int grid) {
  if (grid < 16) throw std::invalid_argument("shoot_annulus: grid too small");
  if (!(r > 0.0 && r < kPi / 2.0)) throw std::invalid_argument("shoot_annulus: need 0 < r < pi/2");
  if (kPi / 2.0 - r < 1e-3)
    throw std::invalid_argument("shoot_annulus: degenerate interval (width < 1e-3)");

  // Inner condition at theta = r. For n >= 3 the inner circle is minimal:
  // e^{-rho}(-cot r - rho'(r)) = 0. In two dimensions the boundary datum is
  // the Neumann one, d rho / d nu = h e^{rho}, so h = 0 means rho'(r) = 0
  // (a genuinely minimal inner circle is ruled out by Gauss-Bonnet).
  const double drho_a = (data.n == 2) ? 0.0 : -1.0 / std::tan(r);
  auto residual = [&](double rho_r) {
    const RadialProfile p = integrate(data, r, kPi / 2.0, rho_r, drho_a, grid);
    return p.drho(p.size() - 1);
  };
  const std::vector<double> roots = shooting_roots(residual);
  if (roots.empty())
    throw std::runtime_error("no solution found: shooting bracket rho(r) in [-10, 10] has no root");

  RadialProfile prof = integrate(data, r, kPi / 2.0, roots.front(), drho_a, grid);
  prof.boundary_target = 0.0;
  prof.shoot_param = roots.front();
  prof.branches = roots;
  const int J = prof.size();
  prof.inner_residual = std::abs(std::exp(-prof.rho(0)) * (prof.drho(0) - drho_a));
  prof.outer_residual = std::abs(std::exp(-prof.rho(J - 1)) * prof.drho(J - 1));
  return prof;
}

FactorPtr mobius_cap_factor(int n, double s, double t) {
  return std::make_shared<MobiusCapFactor>(n, s, t);
}

CapGeometry cap_geometry(int n, double r) {
  if (!(r > 0.0 && r < kPi)) throw std::invalid_argument("cap_geometry: need 0 < r < pi");
  CapGeometry g;
  const double omega = sphere_area(n - 1);
  g.boundary_measure = omega * std::pow(std::sin(r), n - 1);
  if (n == 2) {
    g.cap_measure = 2.0 * kPi * (1.0 - std::cos(r));
  } else {
    const int m = 4096;
    double sum = 0.0;
    const double h = r / m;
    for (int i = 0; i < m; ++i) {  // composite Simpson on [ih, (i+1)h]
      const double a = i * h, b = a + h;
      sum += (h / 6.0) * (std::pow(std::sin(a), n - 1) +
                          4.0 * std::pow(std::sin(0.5 * (a + b)), n - 1) +
                          std::pow(std::sin(b), n - 1));
    }
    g.cap_measure = omega * sum;
  }
  g.h = 1.0 / std::tan(r);
  return g;
}

MobiusFit fit_mobius(const RadialProfile& profile) {
  if (std::abs(profile.theta_a) > 1e-12 || std::abs(profile.theta_b - kPi / 2.0) > 1e-12)
    throw std::invalid_argument("fit_mobius: expects a hemisphere profile on [0, pi/2]");
  const int J = profile.size();
  MobiusFit fit;
  // Equator data determines the family: rho'(pi/2) = -tanh s,
  // e^{rho(pi/2)} = e^t / cosh s.
  fit.s = -std::atanh(profile.drho(J - 1));
  fit.t = profile.rho(J - 1) + std::log(std::cosh(fit.s));
  double worst = 0.0;
  for (int j = 0; j < J; ++j) {
    const double model =
        fit.t - std::log(std::cosh(fit.s) - std::sinh(fit.s) * std::cos(profile.theta(j)));
    worst = std::max(worst, std::abs(profile.rho(j) - model));
  }
  fit.sup_deviation = worst;
  return fit;
}

namespace {

class ProfileFactor final : public AxialFactor {
 public:
  ProfileFactor(int n, RadialProfile profile)
      : AxialFactor(n, Vec::Unit(n + 1, n)), p_(std::move(profile)) {}

  std::string provider() const override { return "radial-profile"; }

  void profile(double c, double& F, double& dF, double& d2F) const override {
    const double theta =
        std::clamp(std::acos(std::clamp(c, -1.0, 1.0)), p_.theta_a, p_.theta_b);
    const double h = p_.spacing();
    const int j = std::min<int>(static_cast<int>((theta - p_.theta_a) / h), p_.size() - 2);
    const double s = (theta - p_.theta(j)) / h;

    // Cubic Hermite in theta on [theta_j, theta_{j+1}].
    const double r0 = p_.rho(j), r1 = p_.rho(j + 1);
    const double m0 = p_.drho(j) * h, m1 = p_.drho(j + 1) * h;
    const double H = (2 * s * s * s - 3 * s * s + 1) * r0 + (s * s * s - 2 * s * s + s) * m0 +
                     (-2 * s * s * s + 3 * s * s) * r1 + (s * s * s - s * s) * m1;
    const double dH = ((6 * s * s - 6 * s) * r0 + (3 * s * s - 4 * s + 1) * m0 +
                       (-6 * s * s + 6 * s) * r1 + (3 * s * s - 2 * s) * m1) /
                      h;
    const double d2H = ((12 * s - 6) * r0 + (6 * s - 4) * m0 + (-12 * s + 6) * r1 +
                        (6 * s - 2) * m1) /
                       (h * h);

    const double sn = std::sin(theta);
    if (sn < 1e-8) {  // regular pole: rho ~ rho_0 + rho''_0 (1 - c)
      F = H;
      dF = -p_.d2rho(0);
      d2F = 0.0;
      return;
    }
    const double dtheta_dc = -1.0 / sn;
    const double d2theta_dc2 = -std::cos(theta) / (sn * sn * sn);
    F = H;
    dF = dH * dtheta_dc;
    d2F = d2H * dtheta_dc * dtheta_dc + dH * d2theta_dc2;
  }

 private:
  RadialProfile p_;
};

} // namespace

FactorPtr profile_factor(int n, const RadialProfile& profile) {
  return std::make_shared<ProfileFactor>(n, profile);
}

double profile_boundary_measure(int n, const RadialProfile& profile) {
  const int J = profile.size();
  const double factor = std::exp(profile.rho(J - 1)) * std::sin(profile.theta_b);
  return sphere_area(n - 1) * std::pow(factor, n - 1);
}

double profile_cap_area_2d(const RadialProfile& profile) {
  const int J = profile.size();
  double sum = 0.0;
  for (int j = 0; j + 1 < J; ++j) {
    const double fa = std::exp(2.0 * profile.rho(j)) * std::sin(profile.theta(j));
    const double fb = std::exp(2.0 * profile.rho(j + 1)) * std::sin(profile.theta(j + 1));
    sum += 0.5 * (fa + fb) * profile.spacing();
  }
  return 2.0 * kPi * sum;
}

double reflection_extension_residual(const EllipticData& data, const RadialProfile& profile) {
  double worst = 0.0;
  for (int j = 0; j < profile.size(); ++j) {
    const double theta = kPi - profile.theta(j);
    double lr, lt;
    radial_eigenvalues(profile.rho(j), -profile.drho(j), profile.d2rho(j), theta, lr, lt);
    worst = std::max(worst, std::abs(data.f(lambda_vector(data.n, lr, lt)) - 1.0));
  }
  return worst;
}

void export_profile_csv(const RadialProfile& profile, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("export_profile_csv: cannot open " + path);
  out << "theta,rho,drho,d2rho,lambda_rad,lambda_tan,residual\n";
  out.precision(17);
  for (int j = 0; j < profile.size(); ++j)
    out << profile.theta(j) << ',' << profile.rho(j) << ',' << profile.drho(j) << ','
        << profile.d2rho(j) << ',' << profile.lambda_rad(j) << ',' << profile.lambda_tan(j)
        << ',' << profile.residual(j) << '\n';
}

} // namespace horolift
