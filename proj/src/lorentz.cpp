#include "horolift/lorentz.hpp"

#include <cmath>
#include <stdexcept>

namespace horolift {

namespace {

void check_lorentz_dim(const Vec& a) {
  if (a.size() < 4) throw std::invalid_argument("Lorentz vector needs n >= 2 (size >= 4)");
  if (!a.allFinite()) throw std::invalid_argument("Lorentz vector has non-finite components");
}

// J = diag(-1, 1, ..., 1)
Vec apply_form(const Vec& a) {
  Vec r = a;
  r(0) = -r(0);
  return r;
}

void validate_isometry(const LorentzIsometry& L) {
  const int d = static_cast<int>(L.m.rows());
  Mat J = Mat::Identity(d, d);
  J(0, 0) = -1.0;
  const double defect = (L.m.transpose() * J * L.m - J).cwiseAbs().maxCoeff();
  if (defect > 1e-12)
    throw std::runtime_error("constructed matrix does not preserve the Lorentz form");
  Vec origin = Vec::Zero(d);
  origin(0) = 1.0;
  if ((L.m * origin)(0) <= 0.0)
    throw std::runtime_error("constructed matrix does not preserve the upper sheet");
}

} // namespace

double minkowski_inner(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("minkowski_inner: dimension mismatch");
  check_lorentz_dim(a);
  return -a(0) * b(0) + a.tail(a.size() - 1).dot(b.tail(b.size() - 1));
}

Quadric classify_quadric(const Vec& a, double tol) {
  check_lorentz_dim(a);
  const double q = minkowski_inner(a, a);
  if (std::abs(q + 1.0) <= tol && a(0) > 0.0) return Quadric::Hyperbolic;
  if (std::abs(q - 1.0) <= tol) return Quadric::DeSitter;
  if (std::abs(q) <= tol && a(0) > 0.0) return Quadric::LightCone;
  return Quadric::Other;
}

double hyperbolic_distance(const Vec& a, const Vec& b) {
  const double c = -minkowski_inner(a, b);
  return std::acosh(std::max(1.0, c));
}

LorentzIsometry LorentzIsometry::compose(const LorentzIsometry& other) const {
  return LorentzIsometry{m * other.m, Kind::Composite};
}

LorentzIsometry hyperbolic_translation(const Vec& axis_direction, double s) {
  const int np1 = static_cast<int>(axis_direction.size());
  if (np1 < 3) throw std::invalid_argument("axis must live in R^{n+1}, n >= 2");
  if (std::abs(axis_direction.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("hyperbolic_translation: axis must be a unit vector");

  const int d = np1 + 1;
  Mat m = Mat::Identity(d, d);
  m(0, 0) = std::cosh(s);
  for (int i = 0; i < np1; ++i) {
    m(0, i + 1) = std::sinh(s) * axis_direction(i);
    m(i + 1, 0) = std::sinh(s) * axis_direction(i);
    for (int j = 0; j < np1; ++j)
      m(i + 1, j + 1) += (std::cosh(s) - 1.0) * axis_direction(i) * axis_direction(j);
  }
  LorentzIsometry L{m, LorentzIsometry::Kind::Translation};
  validate_isometry(L);
  return L;
}

LorentzIsometry reflection_across_plane(const Vec& plane_normal, double offset) {
  check_lorentz_dim(plane_normal);
  const int d = static_cast<int>(plane_normal.size());
  Vec w;
  if (offset != 0.0) {
    if (std::abs(plane_normal(0)) > 1e-12)
      throw std::invalid_argument(
          "reflection_across_plane: offset requires a purely spatial normal");
    Vec spatial = plane_normal.tail(d - 1);
    const double nn = spatial.norm();
    if (nn == 0.0) throw std::invalid_argument("reflection_across_plane: zero normal");
    spatial /= nn;
    w = Vec::Zero(d);
    w(0) = std::sinh(offset);
    w.tail(d - 1) = std::cosh(offset) * spatial;
  } else {
    const double q = minkowski_inner(plane_normal, plane_normal);
    if (q <= 0.0)
      throw std::invalid_argument("reflection_across_plane: normal must be spacelike");
    w = plane_normal / std::sqrt(q);
  }
  // R(x) = x - 2 <x,w> w
  Mat m = Mat::Identity(d, d) - 2.0 * w * apply_form(w).transpose();
  LorentzIsometry L{m, LorentzIsometry::Kind::Reflection};
  validate_isometry(L);
  return L;
}

LorentzIsometry spatial_rotation(int n, int i, int j, double angle) {
  if (n < 2) throw std::invalid_argument("spatial_rotation: n >= 2");
  if (i < 1 || j < 1 || i > n + 1 || j > n + 1 || i == j)
    throw std::invalid_argument("spatial_rotation: indices must satisfy 1 <= i < j <= n+1");
  const int d = n + 2;
  Mat m = Mat::Identity(d, d);
  m(i, i) = std::cos(angle);
  m(j, j) = std::cos(angle);
  m(i, j) = -std::sin(angle);
  m(j, i) = std::sin(angle);
  LorentzIsometry L{m, LorentzIsometry::Kind::Rotation};
  validate_isometry(L);
  return L;
}

Vec ideal_projection(const Vec& a, double tol) {
  if (classify_quadric(a, std::max(tol, 1e-8 * a.squaredNorm())) != Quadric::LightCone)
    throw std::invalid_argument("ideal_projection: argument is not on the light cone");
  if (a(0) <= tol) throw std::invalid_argument("ideal_projection: a_0 <= tol");
  return a.tail(a.size() - 1) / a(0);
}

} // namespace horolift
