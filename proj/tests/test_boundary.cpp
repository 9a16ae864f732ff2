#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <memory>
#include <random>

#include "horolift/boundary.hpp"
#include "horolift/metric.hpp"
#include "horolift/sphere.hpp"

using namespace horolift;

TEST_CASE("plane specs: unit normals orthogonal to the plane") {
  const int n = 3;
  for (double c : {0.0, 0.5, -1.2}) {
    const PlaneSpec plane = PlaneSpec::equidistant(n, c);
    CHECK(minkowski_inner(plane.v, plane.v) == doctest::Approx(1.0).epsilon(1e-14));

    // A hyperboloid point on the plane: x_{n+1} = c.
    Vec p = Vec::Zero(n + 2);
    p(n + 1) = c;
    p(1) = 0.4;
    p(0) = std::sqrt(1.0 + c * c + 0.16);
    CHECK(std::fabs(minkowski_inner(p, p) + 1.0) < 1e-14);
    CHECK(std::fabs(plane.eval(p)) < 1e-14);

    const Vec nu = plane.normal_at(p);
    CHECK(minkowski_inner(nu, nu) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(minkowski_inner(nu, p)) < 1e-12);
  }

  const double r = M_PI / 3;
  const PlaneSpec geo = PlaneSpec::geodesic_polar(n, r);
  CHECK(minkowski_inner(geo.v, geo.v) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(geo.level == 0.0);
}

TEST_CASE("Mobius cap boundary battery (plane, half-space, angle, convexity)") {
  const int n = 2;
  const double s = std::asinh(1.0), t = std::log(2.0);
  const double c = std::exp(-t) * std::sinh(s);  // = 1/2
  MobiusCapFactor factor(n, s, t);
  const DomainSpec hemi = DomainSpec::hemisphere(n);

  const PlaneSpec plane = PlaneSpec::equidistant(n, c);
  const DiagnosticReport in_plane =
      check_boundary_in_plane(factor, hemi, BoundaryComponent::Outer, plane, 64, 5, 1e-6);
  CHECK(in_plane.pass);
  CHECK(in_plane.worst < 1e-10);

  const DiagnosticReport half = check_halfspace(factor, hemi, c, 200, 5);
  CHECK(half.pass);

  const DiagnosticReport angle = check_angle(factor, hemi, c, 64, 5, 1e-6);
  CHECK(angle.pass);
  CHECK(angle.worst < 1e-10);

  const DiagnosticReport conv = check_convexity_bound(factor, hemi, c, 200, 5);
  CHECK(conv.pass);
  CHECK(conv.worst > 0.0);

  const auto j = angle.to_json();
  CHECK(j.at("pass").get<bool>());
  CHECK(j.at("samples").get<int>() == 64);
}

TEST_CASE("plane check fails at the wrong level (negative control)") {
  const int n = 2;
  MobiusCapFactor factor(n, std::asinh(1.0), std::log(2.0));
  const DomainSpec hemi = DomainSpec::hemisphere(n);
  const PlaneSpec wrong = PlaneSpec::equidistant(n, 0.75);
  const DiagnosticReport rep =
      check_boundary_in_plane(factor, hemi, BoundaryComponent::Outer, wrong, 32, 5, 1e-6);
  CHECK(!rep.pass);
  CHECK(rep.worst > 0.1);
}

TEST_CASE("half-space check fails for the geodesic sphere above a positive level") {
  // rho = 1 lifts the hemisphere into a geodesic sphere cap whose points reach
  // x_{n+1} = 0 at the equator; the level 0.3 half-space cannot contain it.
  ConstantFactor factor(2, 1.0);
  const DomainSpec hemi = DomainSpec::hemisphere(2);
  const DiagnosticReport rep = check_halfspace(factor, hemi, 0.3, 200, 9);
  CHECK(!rep.pass);
}

TEST_CASE("symmetry defect: identity is exact, axial rotations are symmetries") {
  const int n = 2;
  MobiusCapFactor factor(n, 0.6, 0.8);
  Vec pole = Vec::Zero(n + 1);
  pole(n) = 1.0;

  std::vector<HypersurfaceSample> samples;
  for (int k = 0; k < 10; ++k) {
    const double theta = 0.15 + 0.13 * k;
    for (int m = 0; m < 48; ++m) {
      const double a = 2 * M_PI * m / 48;
      Vec omega(3);
      omega << std::cos(a), std::sin(a), 0.0;
      samples.push_back(lift_sample(factor, sphere_point(pole, theta, omega)));
    }
  }

  LorentzIsometry id;
  id.m = Mat::Identity(n + 2, n + 2);
  // acosh near 1 leaves ~1e-8 of roundoff noise in zero distances
  CHECK(symmetry_defect(samples, id) < 1e-6);

  // Rotation by exactly one azimuthal step maps the sample set to itself.
  const LorentzIsometry step = spatial_rotation(n, 1, 2, 2 * M_PI / 48);
  CHECK(symmetry_defect(samples, step) < 1e-6);

  // A boost along the axis is not a symmetry of this hypersurface.
  Vec axis = Vec::Zero(n + 1);
  axis(n) = 1.0;
  const LorentzIsometry boost = hyperbolic_translation(axis, 0.5);
  CHECK(symmetry_defect(samples, boost) > 0.05);

  CHECK(self_proximity_scan(samples, 1e-8, 0.05) == 0);
}
