#pragma once

#include <string>
#include <vector>

#include "horolift/elliptic.hpp"
#include "horolift/factor.hpp"
#include "horolift/types.hpp"

namespace horolift {

/// Rotationally symmetric profile rho(theta) on [theta_a, theta_b] with a
/// uniform grid, derivative arrays, per-node Schouten eigenvalues and
/// equation residuals, and the shooting metadata.
struct RadialProfile {
  double theta_a = 0.0, theta_b = 0.0;
  Vec theta, rho, drho, d2rho;
  Vec lambda_rad, lambda_tan;
  Vec residual;  // f(lambda(theta_j)) - 1

  std::string data_name;
  double boundary_target = 0.0;     // c (cap) or the equator target 0 (annulus)
  double shoot_param = 0.0;         // solved rho(theta_a)
  double inner_residual = 0.0;      // |h(inner) - target| (cap: unused, 0)
  double outer_residual = 0.0;      // |h(outer) - target|
  double max_interior_residual = 0.0;
  bool in_cone_everywhere = true;
  std::vector<double> branches;     // all shooting roots found in the bracket

  int size() const { return static_cast<int>(theta.size()); }
  double spacing() const { return theta(1) - theta(0); }
};

/// Geodesic polar reduction of the Schouten eigenvalues:
///   lambda_rad = e^{-2 rho} (-rho'' + rho'^2 / 2 + 1/2)
///   lambda_tan = e^{-2 rho} (-cot(theta) rho' - rho'^2 / 2 + 1/2),  mult n-1.
/// At theta < 1e-9 the cot term is replaced by its regular limit rho''.
void radial_eigenvalues(double rho, double drho, double d2rho, double theta,
                        double& lambda_rad, double& lambda_tan);

/// The unique rho'' with f(lambda_rad(rho''), lambda_tan, ...) = 1; lambda_rad
/// is strictly decreasing in rho'' and f strictly increasing in lambda_rad, so
/// the root is found by safeguarded Newton/bisection from `hint`.
/// Throws std::runtime_error("cone exit...") if no bracket within |rho''| <= 1e3.
double solve_for_rho2(const EllipticData& data, double rho, double drho, double theta,
                      double hint = 0.0);

/// Shooting solve of f(lambda) = 1 on [0, pi/2] with rho'(0) = 0 and the
/// boundary condition h(g) = e^{-rho} rho'(pi/2) = c, over rho(0) in [-10, 10].
/// Throws std::runtime_error("no solution found...") if no bracket exists.
RadialProfile shoot_cap(const EllipticData& data, double c, int grid = 4096);

/// Annulus solve on [r, pi/2]: h = 0 on both components, i.e. rho'(r) = -cot r
/// (minimal inner circle, n >= 3) or rho'(r) = 0 (the 2-D Neumann datum) and
/// rho'(pi/2) = 0 (outer), shooting over rho(r).
/// Throws std::invalid_argument below interval width 1e-3.
RadialProfile shoot_annulus(const EllipticData& data, double r, int grid = 4096);

FactorPtr mobius_cap_factor(int n, double s, double t);

struct CapGeometry {
  double boundary_measure = 0.0;  // (n-1)-volume of the boundary sphere
  double cap_measure = 0.0;       // n-volume of the cap
  double h = 0.0;                 // boundary mean curvature, geometric-inward
};

/// Round cap of radius r in (S^n, g_0): boundary (n-1)-measure
/// omega_{n-1} sin^{n-1} r, cap n-measure by quadrature (closed forms at
/// n = 2: 2 pi sin r, 2 pi (1 - cos r)), h = cot r.
CapGeometry cap_geometry(int n, double r);

struct MobiusFit {
  double s = 0.0, t = 0.0;
  double sup_deviation = 0.0;  // max_j |rho_j - rho_fit(theta_j)|
};

/// Matches a hemisphere profile against e^{rho} = e^t / (cosh s - sinh s cos theta)
/// using the equator data: s = -atanh(rho'(pi/2)), t = rho(pi/2) + log cosh s.
MobiusFit fit_mobius(const RadialProfile& profile);

/// Axial conformal factor backed by a profile (cubic Hermite in theta);
/// usable with the lift away from the profile's endpoints.
FactorPtr profile_factor(int n, const RadialProfile& profile);

/// Boundary measure and (n = 2) cap area of g = e^{2 rho} g_0 from the profile.
double profile_boundary_measure(int n, const RadialProfile& profile);
double profile_cap_area_2d(const RadialProfile& profile);

/// Max |f(lambda) - 1| on the reflected extension theta -> pi - theta.
double reflection_extension_residual(const EllipticData& data, const RadialProfile& profile);

/// CSV columns: theta, rho, rho', rho'', lambda_rad, lambda_tan, residual.
void export_profile_csv(const RadialProfile& profile, const std::string& path);

} // namespace horolift
