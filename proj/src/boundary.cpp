#include "horolift/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace horolift {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

PlaneSpec PlaneSpec::equidistant(int n, double c) {
  PlaneSpec p;
  p.v = Vec::Unit(n + 2, n + 1);
  p.level = c;
  return p;
}

PlaneSpec PlaneSpec::geodesic_polar(int n, double r) {
  if (!(r > 0.0 && r < kPi)) throw std::invalid_argument("geodesic_polar: need 0 < r < pi");
  Vec v = Vec::Zero(n + 2);
  v(0) = std::cos(r) / std::sin(r);
  v(n + 1) = 1.0 / std::sin(r);
  PlaneSpec p;
  p.v = v;
  p.level = 0.0;
  return p;
}

Vec PlaneSpec::normal_at(const Vec& x) const {
  return ((v + level * x) / std::sqrt(1.0 + level * level)).eval();
}

nlohmann::json DiagnosticReport::to_json() const {
  return nlohmann::json{{"name", name}, {"worst", worst},     {"tol", tol},
                        {"pass", pass}, {"samples", samples}, {"note", note}};
}

DiagnosticReport check_boundary_in_plane(const ConformalFactor& factor, const DomainSpec& domain,
                                         BoundaryComponent comp, const PlaneSpec& plane,
                                         int samples, unsigned seed, double tol) {
  DiagnosticReport rep;
  rep.name = "boundary_in_plane";
  rep.tol = tol;
  rep.samples = samples;
  double worst = 0.0;
  for (const Vec& x : sample_boundary(domain, comp, samples, seed)) {
    Vec phi, eta, psi;
    lift_point(factor, x, phi, eta, psi);
    worst = std::max(worst, std::abs(plane.eval(phi)));
  }
  rep.worst = worst;
  rep.pass = worst <= tol;
  return rep;
}

DiagnosticReport check_angle(const ConformalFactor& factor, const DomainSpec& domain, double c,
                             int samples, unsigned seed, double tol) {
  DiagnosticReport rep;
  rep.name = "constant_angle";
  rep.tol = tol;
  rep.samples = samples;

  const PlaneSpec plane = PlaneSpec::equidistant(factor.dim(), c);
  const DiagnosticReport containment = check_boundary_in_plane(
      factor, domain, BoundaryComponent::Outer, plane, samples, seed, tol);
  if (!containment.pass) {
    rep.pass = false;
    rep.worst = containment.worst;
    rep.note = "skipped: boundary not contained in E(c) at the angle tolerance";
    return rep;
  }

  const double target = c / std::sqrt(1.0 + c * c);
  double worst = 0.0;
  for (const Vec& x : sample_boundary(domain, BoundaryComponent::Outer, samples, seed)) {
    Vec phi, eta, psi;
    lift_point(factor, x, phi, eta, psi);
    worst = std::max(worst, std::abs(minkowski_inner(eta, plane.normal_at(phi)) - target));
  }
  rep.worst = worst;
  rep.pass = worst <= tol;
  rep.note = "target cos(angle) = " + std::to_string(target);
  return rep;
}

DiagnosticReport check_halfspace(const ConformalFactor& factor, const DomainSpec& domain, double c,
                                 int samples, unsigned seed) {
  DiagnosticReport rep;
  rep.name = "halfspace";
  rep.tol = 1e-10;
  rep.samples = samples;

  std::vector<PlaneSpec> planes;
  std::vector<double> signs;
  planes.push_back(PlaneSpec::equidistant(factor.dim(), c));
  if (domain.has_inner_boundary()) {
    planes.push_back(PlaneSpec::geodesic_polar(factor.dim(), domain.r));
    // Interior side of each slab face fixed by the lift of the polar mid-circle.
    const double theta_mid = 0.5 * (domain.theta_min() + domain.theta_max());
    std::mt19937_64 rng(seed);
    const Vec omega = random_unit_perp(domain.pole, rng);
    Vec phi, eta, psi;
    lift_point(factor, sphere_point(domain.pole, theta_mid, omega), phi, eta, psi);
    for (const PlaneSpec& p : planes) signs.push_back(p.eval(phi) >= 0.0 ? 1.0 : -1.0);
  } else {
    signs.push_back(1.0);
  }

  double margin = std::numeric_limits<double>::infinity();
  for (const Vec& x : sample_interior(domain, samples, seed)) {
    Vec phi, eta, psi;
    lift_point(factor, x, phi, eta, psi);
    for (size_t i = 0; i < planes.size(); ++i)
      margin = std::min(margin, signs[i] * planes[i].eval(phi));
  }
  rep.worst = margin;
  rep.pass = margin >= -1e-10;
  rep.note = domain.has_inner_boundary() ? "slab between E(r) and E(c)" : "half-space E(c)^+";
  return rep;
}

DiagnosticReport check_convexity_bound(const ConformalFactor& factor, const DomainSpec& domain,
                                       double c, int samples, unsigned seed) {
  DiagnosticReport rep;
  rep.name = "convexity_bound";
  rep.tol = 0.0;
  rep.samples = samples;
  const double bound = std::abs(std::tanh(std::asinh(c)));
  double margin = std::numeric_limits<double>::infinity();
  for (const Vec& x : sample_interior(domain, samples, seed)) {
    const HypersurfaceSample s = lift_sample(factor, x);
    margin = std::min(margin, s.kappa.minCoeff() - bound);
  }
  rep.worst = margin;
  rep.pass = margin > 0.0;
  rep.note = "kappa_min margin over |tanh(asinh c)| = " + std::to_string(bound);
  return rep;
}

double symmetry_defect(const std::vector<HypersurfaceSample>& samples, const LorentzIsometry& L) {
  if (samples.empty()) throw std::invalid_argument("symmetry_defect: empty sample set");
  double defect = 0.0;
  for (const auto& p : samples) {
    const Vec moved = L.apply(p.phi);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : samples) best = std::min(best, hyperbolic_distance(moved, q.phi));
    defect = std::max(defect, best);
  }
  return defect;
}

int self_proximity_scan(const std::vector<HypersurfaceSample>& samples, double extrinsic_tol,
                        double base_gap) {
  int flagged = 0;
  for (size_t i = 0; i < samples.size(); ++i)
    for (size_t j = i + 1; j < samples.size(); ++j) {
      const double d_ext = hyperbolic_distance(samples[i].phi, samples[j].phi);
      const double d_base = (samples[i].x - samples[j].x).norm();
      if (d_ext < extrinsic_tol && d_base > base_gap) ++flagged;
    }
  return flagged;
}

} // namespace horolift
