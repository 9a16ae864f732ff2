#pragma once

#include <random>

#include "horolift/types.hpp"

namespace horolift {

/// Minkowski inner product with signature (-,+,...,+) on R^{n+2}.
/// Throws std::invalid_argument on dimension mismatch.
double minkowski_inner(const Vec& a, const Vec& b);

enum class Quadric { Hyperbolic, DeSitter, LightCone, Other };

/// Classifies a vector against the three quadrics of the hyperboloid model.
/// Hyperbolic and LightCone additionally require the upper-sheet condition
/// x_0 > 0; vectors on the lower sheet classify as Other.
Quadric classify_quadric(const Vec& a, double tol = 1e-10);

/// Hyperbolic distance between two hyperboloid points.
double hyperbolic_distance(const Vec& a, const Vec& b);

struct LorentzIsometry {
  enum class Kind { Translation, Reflection, Rotation, Composite };

  Mat m;
  Kind kind = Kind::Composite;

  Vec apply(const Vec& a) const { return m * a; }
  LorentzIsometry compose(const LorentzIsometry& other) const;
};

/// Boost of rapidity s in the (x_0, axis) plane. axis_direction is a unit
/// vector in R^{n+1}; the two ideal fixed points are the rays through
/// (1, +-axis).
LorentzIsometry hyperbolic_translation(const Vec& axis_direction, double s);

/// Involutive isometry fixing {x : <x, w> = 0} pointwise, where w is the
/// unit spacelike normal. If offset is nonzero, plane_normal must be purely
/// spatial (time component zero) and the plane is translated hyperbolic
/// distance `offset` along its own axis before reflecting.
LorentzIsometry reflection_across_plane(const Vec& plane_normal,
                                        double offset = 0.0);

/// Rotation by `angle` in the spatial coordinate plane (x_i, x_j),
/// 1 <= i < j <= n+1. Rotations with i, j <= n fix the pole axis e_{n+1}.
LorentzIsometry spatial_rotation(int n, int i, int j, double angle);

/// Projects a light-cone point to its ideal boundary direction:
/// (a_1,...,a_{n+1}) / a_0. Invariant under positive rescaling.
Vec ideal_projection(const Vec& a, double tol = 1e-10);

} // namespace horolift
