#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "horolift/lorentz.hpp"

using namespace horolift;

namespace {

Vec hyperboloid_point(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Vec y(n + 1);
  for (int i = 0; i < n + 1; ++i) y(i) = nd(rng);
  Vec p(n + 2);
  p(0) = std::sqrt(1.0 + y.squaredNorm());
  p.tail(n + 1) = y;
  return p;
}

} // namespace

TEST_CASE("minkowski inner product") {
  Vec a(4), b(4);
  a << 1, 2, 3, 4;
  b << 2, 1, 0, -1;
  CHECK(minkowski_inner(a, b) == doctest::Approx(-2 + 2 + 0 - 4));

  Vec c(3);
  c << 1, 0, 0;
  CHECK_THROWS_AS(minkowski_inner(a, c), std::invalid_argument);
}

TEST_CASE("quadric classification") {
  const int n = 3;
  std::mt19937_64 rng(11);

  Vec h = hyperboloid_point(n, rng);
  CHECK(classify_quadric(h) == Quadric::Hyperbolic);
  CHECK(classify_quadric(-h) == Quadric::Other);  // lower sheet

  Vec ds = Vec::Zero(n + 2);
  ds(1) = std::cosh(0.7);
  ds(0) = std::sinh(0.7);
  CHECK(classify_quadric(ds) == Quadric::DeSitter);

  Vec lc = Vec::Zero(n + 2);
  lc(0) = 2.0;
  lc(2) = 2.0;
  CHECK(classify_quadric(lc) == Quadric::LightCone);

  Vec other = Vec::Ones(n + 2);
  other(0) = 5.0;
  CHECK(classify_quadric(other) == Quadric::Other);
}

TEST_CASE("hyperbolic translation moves the basepoint by its rapidity") {
  const int n = 4;
  Vec axis = Vec::Zero(n + 1);
  axis(2) = 1.0;
  Vec origin = Vec::Zero(n + 2);
  origin(0) = 1.0;

  for (double s : {0.25, 1.0, -2.3}) {
    const LorentzIsometry L = hyperbolic_translation(axis, s);
    CHECK(hyperbolic_distance(origin, L.apply(origin)) == doctest::Approx(std::fabs(s)).epsilon(1e-12));
  }
}

TEST_CASE("isometries preserve the inner product and fix what they should") {
  const int n = 3;
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;

  Vec axis = Vec::Zero(n + 1);
  axis(0) = 1.0;
  const LorentzIsometry boost = hyperbolic_translation(axis, 1.3);
  const LorentzIsometry rot = spatial_rotation(n, 1, 2, 0.9);

  Vec w = Vec::Zero(n + 2);
  w(1) = 1.0;
  const LorentzIsometry refl = reflection_across_plane(w);

  for (int trial = 0; trial < 50; ++trial) {
    Vec a(n + 2), b(n + 2);
    for (int i = 0; i < n + 2; ++i) { a(i) = nd(rng); b(i) = nd(rng); }
    for (const auto* L : {&boost, &rot, &refl}) {
      CHECK(minkowski_inner(L->apply(a), L->apply(b)) ==
            doctest::Approx(minkowski_inner(a, b)).epsilon(1e-12));
    }
  }

  // Boost fixes its two ideal rays.
  Vec up(n + 2), down(n + 2);
  up(0) = 1.0; up.tail(n + 1) = axis;
  down(0) = 1.0; down.tail(n + 1) = -axis;
  CHECK((ideal_projection(boost.apply(up)) - ideal_projection(up)).norm() < 1e-12);
  CHECK((ideal_projection(boost.apply(down)) - ideal_projection(down)).norm() < 1e-12);

  // Reflection is an involution fixing the plane.
  const LorentzIsometry twice = refl.compose(refl);
  CHECK((twice.m - Mat::Identity(n + 2, n + 2)).norm() < 1e-12);
  Vec p = hyperboloid_point(n, rng);
  p(1) = 0.0;  // put it on the plane <x, e_1> = 0
  p(0) = std::sqrt(1.0 + p.tail(n + 1).squaredNorm());
  CHECK((refl.apply(p) - p).norm() < 1e-12);

  // Rotations with i, j <= n fix the pole axis and the time axis.
  Vec pole = Vec::Zero(n + 2);
  pole(n + 1) = 1.0;
  CHECK((rot.apply(pole) - pole).norm() == 0.0);
  CHECK(rot.m(0, 0) == 1.0);
}

TEST_CASE("composition bookkeeping") {
  const int n = 2;
  const LorentzIsometry a = spatial_rotation(n, 1, 2, 0.4);
  const LorentzIsometry b = spatial_rotation(n, 1, 2, -0.4);
  const LorentzIsometry c = a.compose(b);
  CHECK(c.kind == LorentzIsometry::Kind::Composite);
  CHECK((c.m - Mat::Identity(n + 2, n + 2)).norm() < 1e-14);
}

TEST_CASE("ideal projection is scale invariant") {
  Vec lc(4);
  lc << 2.0, 1.2, -1.6, 0.0;  // null: 4 = 1.44 + 2.56
  const Vec dir = ideal_projection(lc);
  CHECK((ideal_projection(Vec(3.7 * lc)) - dir).norm() < 1e-14);
  CHECK(dir.size() == 3);
  CHECK(dir.norm() == doctest::Approx(1.0).epsilon(1e-12));
}
