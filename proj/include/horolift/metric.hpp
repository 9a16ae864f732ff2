#pragma once

#include <optional>
#include <random>
#include <vector>

#include "horolift/factor.hpp"
#include "horolift/types.hpp"

namespace horolift {

struct DomainSpec {
  enum class Kind { Cap, Hemisphere, Annulus, FullSphere };

  Kind kind = Kind::Hemisphere;
  double r = 0.0;  // Cap / Annulus radius parameter
  int n = 2;
  Vec pole;  // unit vector, default e_{n+1}

  static DomainSpec cap(int n, double r);
  static DomainSpec hemisphere(int n);
  static DomainSpec annulus(int n, double r);
  static DomainSpec full_sphere(int n);

  bool has_boundary() const { return kind != Kind::FullSphere; }
  bool has_inner_boundary() const { return kind == Kind::Annulus; }
  /// Polar-angle interval [theta_min, theta_max] of the domain about `pole`.
  double theta_min() const;
  double theta_max() const;
  bool contains(const Vec& x, double tol = 1e-12) const;
};

enum class BoundaryComponent { Outer, Inner };

/// Polar angle of the named boundary component.
double boundary_theta(const DomainSpec& domain, BoundaryComponent comp);

struct SchoutenEval {
  Vec x;
  Mat frame_matrix;  // in a g_0-orthonormal tangent frame
  Vec lambda;        // eigenvalues of g^{-1} Sch_g, ascending
};

/// Sch_g = -Hess_0 rho + drho (x) drho - 1/2 (-1 + |grad_0 rho|^2) g_0,
/// evaluated in a g_0-orthonormal chart frame; eigenvalues scaled by e^{-2 rho}.
SchoutenEval schouten_tensor(const ConformalFactor& factor, const Vec& x);
SchoutenEval schouten_tensor(const ConformalFactor& factor, const Chart& chart, const Vec& u);

/// Boundary mean curvature of g = e^{2 rho} g_0 at a boundary point, with the
/// geometric sign convention for the normal pointing into the domain: a round
/// cap of radius r reports h = cot r, the inner circle of an annulus reports
/// h = -cot r for the round metric. Equivalently
///   h(g) = e^{-rho} (h_0 + d rho / d nu_out),
/// with nu_out the outward unit normal of the domain.
double boundary_mean_curvature(const ConformalFactor& factor, const DomainSpec& domain,
                               BoundaryComponent comp, const Vec& x);

/// K(g) = e^{-2 rho} (1 - Lap_0 rho); n = 2 only.
double gauss_curvature_2d(const ConformalFactor& factor, const Vec& x);

struct NormalizationCertificate {
  double t0 = 0.0;
  double p1_slack = 0.0;       // min over grid of (1/2 - margin - |lambda_i^t|)
  double p2_slack = 0.0;       // min boundary slack of the kappa inequality
  int grid_points = 0;
  int boundary_points = 0;
  bool ok = false;
};

/// Dilation search: smallest t in a geometric schedule (step
/// ln 2, bisected to 1e-3) such that (P1) and (P2) hold on the verification
/// grid with margin 1e-6. Throws std::runtime_error once t exceeds 50.
NormalizationCertificate normalize_for_lift(const ConformalFactor& factor,
                                            const DomainSpec& domain, int grid_res);

/// Deterministic sampling helpers shared by the diagnostic battery.
std::vector<Vec> sample_interior(const DomainSpec& domain, int count, unsigned seed);
std::vector<Vec> sample_boundary(const DomainSpec& domain, BoundaryComponent comp,
                                 int count, unsigned seed);

} // namespace horolift
