#include "horolift/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace horolift {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kMargin = 1e-6;

Vec default_pole(int n) { return Vec::Unit(n + 1, n); }
} // namespace

DomainSpec DomainSpec::cap(int n, double r) {
  if (!(r > 0.0 && r <= kPi / 2.0)) throw std::invalid_argument("Cap: need 0 < r <= pi/2");
  return DomainSpec{Kind::Cap, r, n, default_pole(n)};
}

DomainSpec DomainSpec::hemisphere(int n) {
  return DomainSpec{Kind::Hemisphere, kPi / 2.0, n, default_pole(n)};
}

DomainSpec DomainSpec::annulus(int n, double r) {
  if (!(r > 0.0 && r < kPi / 2.0)) throw std::invalid_argument("Annulus: need 0 < r < pi/2");
  return DomainSpec{Kind::Annulus, r, n, default_pole(n)};
}

DomainSpec DomainSpec::full_sphere(int n) {
  return DomainSpec{Kind::FullSphere, 0.0, n, default_pole(n)};
}

double DomainSpec::theta_min() const {
  return kind == Kind::Annulus ? r : 0.0;
}

double DomainSpec::theta_max() const {
  switch (kind) {
    case Kind::Cap: return r;
    case Kind::Hemisphere:
    case Kind::Annulus: return kPi / 2.0;
    case Kind::FullSphere: return kPi;
  }
  return kPi;
}

bool DomainSpec::contains(const Vec& x, double tol) const {
  if (kind == Kind::FullSphere) return true;
  const double theta = std::acos(std::clamp(x.dot(pole), -1.0, 1.0));
  return theta >= theta_min() - tol && theta <= theta_max() + tol;
}

double boundary_theta(const DomainSpec& domain, BoundaryComponent comp) {
  if (!domain.has_boundary())
    throw std::invalid_argument("boundary_theta: domain has no boundary");
  if (comp == BoundaryComponent::Inner) {
    if (!domain.has_inner_boundary())
      throw std::invalid_argument("boundary_theta: domain has no inner component");
    return domain.r;
  }
  return domain.theta_max();
}

SchoutenEval schouten_tensor(const ConformalFactor& factor, const Chart& chart, const Vec& u) {
  const int n = factor.dim();
  const Jet2 jet = factor.jet(chart, u);

  const double sigma = chart_sigma(u);
  const Vec dls = chart_dlog_sigma(u);
  const double pdl = jet.du.dot(dls);

  // Covariant Hessian in chart coordinates, conformal Christoffels of sigma^2 delta.
  Mat hess = jet.d2u;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      hess(j, k) -= jet.du(j) * dls(k) + jet.du(k) * dls(j) - (j == k ? pdl : 0.0);

  const Mat hess_frame = hess / (sigma * sigma);
  const Vec grad_frame = jet.du / sigma;

  Mat S = -hess_frame + grad_frame * grad_frame.transpose() -
          0.5 * (-1.0 + grad_frame.squaredNorm()) * Mat::Identity(n, n);
  S = 0.5 * (S + S.transpose());

  Eigen::SelfAdjointEigenSolver<Mat> eig(S);
  SchoutenEval out;
  out.x = chart_point(chart, u);
  out.frame_matrix = S;
  out.lambda = std::exp(-2.0 * jet.rho) * eig.eigenvalues();
  return out;
}

SchoutenEval schouten_tensor(const ConformalFactor& factor, const Vec& x) {
  const Chart chart = preferred_chart(factor.dim(), x);
  return schouten_tensor(factor, chart, chart_coords(chart, x));
}

double boundary_mean_curvature(const ConformalFactor& factor, const DomainSpec& domain,
                               BoundaryComponent comp, const Vec& x) {
  const double theta_b = boundary_theta(domain, comp);
  const double theta = std::acos(std::clamp(x.dot(domain.pole), -1.0, 1.0));
  if (std::abs(theta - theta_b) > 1e-8)
    throw std::invalid_argument("boundary_mean_curvature: point not on the named component");

  const Chart chart = preferred_chart(factor.dim(), x);
  const Vec u = chart_coords(chart, x);
  const Jet2 jet = factor.jet(chart, u);

  Vec xc;
  Mat dx;
  std::vector<Mat> d2x;
  chart_jet(chart, u, xc, dx, d2x);
  const double sigma = chart_sigma(u);
  const Vec grad_ambient = dx * jet.du / (sigma * sigma);

  const Vec theta_hat = polar_tangent(domain.pole, x);
  double h0, directional;
  if (comp == BoundaryComponent::Inner) {
    // inner circle of the annulus: outward normal points toward the pole
    h0 = -1.0 / std::tan(theta_b);
    directional = -grad_ambient.dot(theta_hat);
  } else {
    h0 = (domain.kind == DomainSpec::Kind::Cap) ? 1.0 / std::tan(theta_b) : 0.0;
    directional = grad_ambient.dot(theta_hat);
  }
  return std::exp(-jet.rho) * (h0 + directional);
}

double gauss_curvature_2d(const ConformalFactor& factor, const Vec& x) {
  if (factor.dim() != 2) throw std::invalid_argument("gauss_curvature_2d: n must be 2");
  const int n = 2;
  const Chart chart = preferred_chart(n, x);
  const Vec u = chart_coords(chart, x);
  const Jet2 jet = factor.jet(chart, u);
  const double sigma = chart_sigma(u);
  const Vec dls = chart_dlog_sigma(u);
  double lap = 0.0;
  for (int j = 0; j < n; ++j)
    lap += jet.d2u(j, j) - (2.0 * jet.du(j) * dls(j) - jet.du.dot(dls));
  lap /= sigma * sigma;
  return std::exp(-2.0 * jet.rho) * (1.0 - lap);
}

std::vector<Vec> sample_interior(const DomainSpec& domain, int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::vector<Vec> out;
  out.reserve(count);
  if (domain.kind == DomainSpec::Kind::FullSphere) {
    for (int i = 0; i < count; ++i) out.push_back(random_sphere_point(domain.n, rng));
    return out;
  }
  std::uniform_real_distribution<double> unif(domain.theta_min() + 1e-9,
                                              domain.theta_max() - 1e-9);
  for (int i = 0; i < count; ++i) {
    const double theta = unif(rng);
    const Vec omega = random_unit_perp(domain.pole, rng);
    out.push_back(sphere_point(domain.pole, theta, omega));
  }
  return out;
}

std::vector<Vec> sample_boundary(const DomainSpec& domain, BoundaryComponent comp,
                                 int count, unsigned seed) {
  const double theta = boundary_theta(domain, comp);
  std::mt19937_64 rng(seed);
  std::vector<Vec> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const Vec omega = random_unit_perp(domain.pole, rng);
    out.push_back(sphere_point(domain.pole, theta, omega));
  }
  return out;
}

NormalizationCertificate normalize_for_lift(const ConformalFactor& factor,
                                            const DomainSpec& domain, int grid_res) {
  if (grid_res < 2) throw std::invalid_argument("normalize_for_lift: grid_res >= 2");
  const int n = factor.dim();

  // Deterministic verification grid: polar levels x directions.
  std::mt19937_64 rng(0x5eed5eedULL);
  std::vector<Vec> grid;
  const double t_lo_theta = domain.theta_min();
  const double t_hi_theta = domain.theta_max();
  for (int i = 0; i < grid_res; ++i) {
    const double theta = t_lo_theta + (t_hi_theta - t_lo_theta) * i / (grid_res - 1.0);
    const int dirs = (theta < 1e-9 || theta > kPi - 1e-9) ? 1 : grid_res;
    for (int j = 0; j < dirs; ++j) {
      Vec omega;
      if (n == 2) {
        const double phi = 2.0 * kPi * j / dirs;
        omega = Vec::Zero(3);
        omega(0) = std::cos(phi);
        omega(1) = std::sin(phi);
      } else {
        omega = random_unit_perp(domain.pole, rng);
      }
      grid.push_back(sphere_point(domain.pole, theta, omega));
    }
  }

  std::vector<Vec> lambdas;
  lambdas.reserve(grid.size());
  for (const Vec& x : grid) lambdas.push_back(schouten_tensor(factor, x).lambda);

  struct BoundarySample { Vec lambda; double h; };
  std::vector<BoundarySample> bnd;
  if (domain.has_boundary()) {
    std::vector<BoundaryComponent> comps{BoundaryComponent::Outer};
    if (domain.has_inner_boundary()) comps.push_back(BoundaryComponent::Inner);
    for (BoundaryComponent comp : comps) {
      auto pts = sample_boundary(domain, comp, grid_res, 0xb0a7ed);
      for (const Vec& x : pts)
        bnd.push_back({schouten_tensor(factor, x).lambda,
                       boundary_mean_curvature(factor, domain, comp, x)});
    }
  }

  auto p1_slack = [&](double t) {
    double slack = std::numeric_limits<double>::infinity();
    for (const Vec& lam : lambdas)
      for (int i = 0; i < lam.size(); ++i)
        slack = std::min(slack, 0.5 - kMargin - std::abs(std::exp(-t) * lam(i)));
    return slack;
  };
  auto p2_slack = [&](double t) {
    double slack = std::numeric_limits<double>::infinity();
    for (const auto& s : bnd) {
      const double rhs = std::abs(std::tanh(std::asinh(std::exp(-t) * s.h)));
      for (int i = 0; i < s.lambda.size(); ++i) {
        const double lt = std::exp(-t) * s.lambda(i);
        if (std::abs(lt) >= 0.5) return -std::numeric_limits<double>::infinity();
        slack = std::min(slack, (1.0 + 2.0 * lt) / (1.0 - 2.0 * lt) - rhs - kMargin);
      }
    }
    return slack;
  };
  auto passes = [&](double t) { return p1_slack(t) > 0.0 && p2_slack(t) > 0.0; };

  const double step = std::log(2.0);
  double t_pass = 0.0;
  if (!passes(0.0)) {
    double t_fail = 0.0;
    bool found = false;
    for (double t = step; t <= 50.0 + 1e-12; t += step) {
      if (passes(t)) {
        t_pass = t;
        found = true;
        break;
      }
      t_fail = t;
    }
    if (!found)
      throw std::runtime_error(
          "normalize_for_lift: schedule exhausted (t > 50); factor not smooth/bounded on grid");
    while (t_pass - t_fail > 1e-3) {
      const double mid = 0.5 * (t_fail + t_pass);
      (passes(mid) ? t_pass : t_fail) = mid;
    }
  }

  NormalizationCertificate cert;
  cert.t0 = t_pass;
  cert.p1_slack = p1_slack(t_pass) + kMargin;
  cert.p2_slack = bnd.empty() ? std::numeric_limits<double>::infinity()
                              : p2_slack(t_pass) + kMargin;
  cert.grid_points = static_cast<int>(grid.size());
  cert.boundary_points = static_cast<int>(bnd.size());
  cert.ok = true;
  return cert;
}

} // namespace horolift
