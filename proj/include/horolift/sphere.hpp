#pragma once

#include <random>
#include <vector>

#include "horolift/types.hpp"

namespace horolift {

/// Stereographic chart on S^n. id 0 projects from the south pole -e_{n+1}
/// (covers everything but the south pole, u = 0 at the north pole); id 1
/// projects from the north pole. Both are conformal: g_0 = sigma(u)^2 delta
/// with sigma = 2 / (1 + |u|^2).
struct Chart {
  int id = 0;
  int n = 2;
};

Vec chart_point(const Chart& chart, const Vec& u);
Vec chart_coords(const Chart& chart, const Vec& x);
Chart preferred_chart(int n, const Vec& x);
double chart_sigma(const Vec& u);
Vec chart_dlog_sigma(const Vec& u);

/// Value, Jacobian (n+1 x n) and per-component Hessians of u -> x(u).
void chart_jet(const Chart& chart, const Vec& u, Vec& x, Mat& dx,
               std::vector<Mat>& d2x);

/// x(theta, omega) = sin(theta) omega + cos(theta) pole, omega unit, omega ⟂ pole.
Vec sphere_point(const Vec& pole, double theta, const Vec& omega);

/// Unit tangent in the direction of increasing polar angle about `pole`.
Vec polar_tangent(const Vec& pole, const Vec& x);

Vec random_sphere_point(int n, std::mt19937_64& rng);
Vec random_unit_perp(const Vec& pole, std::mt19937_64& rng);

} // namespace horolift
