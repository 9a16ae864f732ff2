#include "horolift/sphere.hpp"

#include <cmath>
#include <stdexcept>

namespace horolift {

namespace {
double pole_sign(const Chart& chart) { return chart.id == 0 ? 1.0 : -1.0; }
} // namespace

Vec chart_point(const Chart& chart, const Vec& u) {
  const int n = chart.n;
  if (u.size() != n) throw std::invalid_argument("chart_point: bad chart coords");
  const double w = 1.0 + u.squaredNorm();
  Vec x(n + 1);
  x.head(n) = 2.0 * u / w;
  x(n) = pole_sign(chart) * (2.0 / w - 1.0);
  return x;
}

Vec chart_coords(const Chart& chart, const Vec& x) {
  const int n = chart.n;
  if (x.size() != n + 1) throw std::invalid_argument("chart_coords: bad ambient point");
  const double denom = 1.0 + pole_sign(chart) * x(n);
  if (denom <= 1e-14) throw std::invalid_argument("chart_coords: point at projection pole");
  return x.head(n) / denom;
}

Chart preferred_chart(int n, const Vec& x) {
  return Chart{x(n) >= 0.0 ? 0 : 1, n};
}

double chart_sigma(const Vec& u) { return 2.0 / (1.0 + u.squaredNorm()); }

Vec chart_dlog_sigma(const Vec& u) {
  return -2.0 * u / (1.0 + u.squaredNorm());
}

void chart_jet(const Chart& chart, const Vec& u, Vec& x, Mat& dx,
               std::vector<Mat>& d2x) {
  const int n = chart.n;
  const double sg = pole_sign(chart);
  const double w = 1.0 + u.squaredNorm();
  const double A = 2.0 / w;
  const double A2 = A * A;
  const double A3 = A2 * A;

  x.resize(n + 1);
  x.head(n) = A * u;
  x(n) = sg * (A - 1.0);

  dx.resize(n + 1, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i)
      dx(i, j) = (i == j ? A : 0.0) - A2 * u(i) * u(j);
    dx(n, j) = -sg * A2 * u(j);
  }

  d2x.assign(n + 1, Mat(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        d2x[i](j, k) = -A2 * u(k) * (i == j ? 1.0 : 0.0) +
                       2.0 * A3 * u(i) * u(j) * u(k) -
                       A2 * ((i == k ? 1.0 : 0.0) * u(j) + u(i) * (j == k ? 1.0 : 0.0));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      d2x[n](j, k) = sg * (2.0 * A3 * u(j) * u(k) - A2 * (j == k ? 1.0 : 0.0));
}

Vec sphere_point(const Vec& pole, double theta, const Vec& omega) {
  return std::sin(theta) * omega + std::cos(theta) * pole;
}

Vec polar_tangent(const Vec& pole, const Vec& x) {
  const double c = x.dot(pole);
  const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
  if (s < 1e-14) throw std::invalid_argument("polar_tangent: point at a pole");
  return (c * x - pole) / s;
}

Vec random_sphere_point(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec x(n + 1);
  do {
    for (int i = 0; i <= n; ++i) x(i) = gauss(rng);
  } while (x.norm() < 1e-8);
  return x / x.norm();
}

Vec random_unit_perp(const Vec& pole, std::mt19937_64& rng) {
  const int n = static_cast<int>(pole.size()) - 1;
  Vec v;
  double nn = 0.0;
  do {
    v = random_sphere_point(n, rng);
    v -= v.dot(pole) * pole;
    nn = v.norm();
  } while (nn < 1e-8);
  return v / nn;
}

} // namespace horolift
