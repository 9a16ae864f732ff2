#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "horolift/lift.hpp"
#include "horolift/lorentz.hpp"
#include "horolift/metric.hpp"
#include "horolift/types.hpp"

namespace horolift {

/// A hyperplane-type set {x in H^{n+1} : <x, v> = level}, <v, v> = 1.
struct PlaneSpec {
  Vec v;
  double level = 0.0;

  /// E(c) = {x_{n+1} = c}: the equidistant hypersurface at distance asinh(c)
  /// from the totally geodesic E(0). v = e_{n+1}, level = c.
  static PlaneSpec equidistant(int n, double c);

  /// E(r): the totally geodesic hyperplane through the polar circle at angle r,
  /// orthogonal to the pole axis plane. v = (cos r, 0, ..., 0, 1)/sin r, level 0.
  static PlaneSpec geodesic_polar(int n, double r);

  double eval(const Vec& a) const { return minkowski_inner(a, v) - level; }

  /// Unit normal field along the plane: (v + level x) / sqrt(1 + level^2).
  Vec normal_at(const Vec& x) const;
};

struct DiagnosticReport {
  std::string name;
  double worst = 0.0;  // worst-case deviation/margin, nonnegative for deviations
  double tol = 0.0;
  bool pass = false;
  int samples = 0;
  std::string note;
  nlohmann::json to_json() const;
};

/// Boundary planarity: max over boundary samples of |<phi(x), v> - level| for the plane
/// determined by c (equidistant, outer/equator component) or by the domain's
/// inner radius (geodesic E(r), inner component).
DiagnosticReport check_boundary_in_plane(const ConformalFactor& factor, const DomainSpec& domain,
                                         BoundaryComponent comp, const PlaneSpec& plane,
                                         int samples, unsigned seed, double tol);

/// Constant contact angle: containment in E(c) first, then max deviation of <eta, n(phi)>
/// from c / sqrt(1 + c^2) over boundary samples.
DiagnosticReport check_angle(const ConformalFactor& factor, const DomainSpec& domain, double c,
                             int samples, unsigned seed, double tol);

/// Half-space containment: min over interior samples of (<phi, e_{n+1}> - c); pass iff
/// >= -1e-10. For annuli, checks the slab between E(r) and E(0) with the
/// interior side signs calibrated at the polar mid-circle.
DiagnosticReport check_halfspace(const ConformalFactor& factor, const DomainSpec& domain, double c,
                                 int samples, unsigned seed);

/// (P2') margin: min over interior samples of kappa_min - |tanh(asinh c)|.
DiagnosticReport check_convexity_bound(const ConformalFactor& factor, const DomainSpec& domain,
                                       double c, int samples, unsigned seed);

/// One-sided discrete Hausdorff defect: max_p min_q d_H(L phi_p, phi_q).
double symmetry_defect(const std::vector<HypersurfaceSample>& samples, const LorentzIsometry& L);

/// Optional embeddedness surrogate: flags sample pairs with small extrinsic
/// distance but base-point separation above `base_gap`. Returns the count.
int self_proximity_scan(const std::vector<HypersurfaceSample>& samples, double extrinsic_tol,
                        double base_gap);

} // namespace horolift
