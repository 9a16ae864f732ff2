#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <random>

#include "horolift/metric.hpp"
#include "horolift/radial.hpp"
#include "horolift/sphere.hpp"

using namespace horolift;

TEST_CASE("radial eigenvalues of the constant factor") {
  for (double t : {0.0, 0.7, -1.0}) {
    for (double theta : {1e-12, 0.3, 1.0, M_PI / 2}) {
      double lr, lt;
      radial_eigenvalues(t, 0.0, 0.0, theta, lr, lt);
      CHECK(lr == doctest::Approx(0.5 * std::exp(-2 * t)).epsilon(1e-14));
      CHECK(lt == doctest::Approx(0.5 * std::exp(-2 * t)).epsilon(1e-14));
    }
  }
}

TEST_CASE("radial reduction agrees with the general Schouten tensor") {
  const int n = 3;
  Vec pole = Vec::Zero(n + 1);
  pole(n) = 1.0;
  auto factor = std::make_shared<MobiusCapFactor>(n, 0.9, 0.4);
  const auto* axial = dynamic_cast<const AxialFactor*>(factor.get());
  REQUIRE(axial != nullptr);
  FiniteDifferenceFactor fd(factor);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ud(0.1, M_PI - 0.1);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double theta = ud(rng);
    const Vec omega = random_unit_perp(pole, rng);
    const Vec x = sphere_point(pole, theta, omega);

    double F, dF, d2F;
    axial->profile(std::cos(theta), F, dF, d2F);
    const double drho = -std::sin(theta) * dF;
    const double d2rho = std::sin(theta) * std::sin(theta) * d2F - std::cos(theta) * dF;
    double lr, lt;
    radial_eigenvalues(F, drho, d2rho, theta, lr, lt);

    Vec expected(n);
    expected << lr, lt, lt;
    std::sort(expected.data(), expected.data() + n);
    const Vec got = schouten_tensor(fd, x).lambda;  // ascending
    worst = std::max(worst, (expected - got).lpNorm<Eigen::Infinity>());
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("the implicit rho'' solve satisfies the equation it claims to") {
  const EllipticData data = sigma_k_data(3, 2);
  const double rho = -0.2, drho = 0.35, theta = 0.9;
  const double d2rho = solve_for_rho2(data, rho, drho, theta, 0.0);
  double lr, lt;
  radial_eigenvalues(rho, drho, d2rho, theta, lr, lt);
  Vec lam(3);
  lam << lr, lt, lt;
  CHECK(data.f(lam) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cap shoot at c = 0 recovers the round hemisphere") {
  const RadialProfile prof = shoot_cap(sigma_k_data(3, 1), 0.0, 1024);
  CHECK(prof.rho.lpNorm<Eigen::Infinity>() < 1e-9);
  CHECK(prof.max_interior_residual <= 1e-8);
  CHECK(prof.outer_residual <= 1e-8);
  CHECK(prof.in_cone_everywhere);
  CHECK(!prof.branches.empty());

  const MobiusFit fit = fit_mobius(prof);
  CHECK(std::fabs(fit.s) < 1e-9);
  CHECK(std::fabs(fit.t) < 1e-9);
  CHECK(fit.sup_deviation < 1e-9);
}

TEST_CASE("2-D constant-curvature cap with h = 1 matches the r = pi/4 round cap") {
  const RadialProfile prof = shoot_cap(sigma_k_data(2, 1), 1.0, 2048);
  CHECK(prof.max_interior_residual <= 1e-8);
  CHECK(prof.outer_residual <= 1e-8);
  CHECK(profile_boundary_measure(2, prof) ==
        doctest::Approx(2 * M_PI * std::sin(M_PI / 4)).epsilon(1e-5));
  CHECK(profile_cap_area_2d(prof) ==
        doctest::Approx(2 * M_PI * (1 - std::cos(M_PI / 4))).epsilon(1e-5));
}

TEST_CASE("cap geometry closed forms") {
  const CapGeometry g2 = cap_geometry(2, M_PI / 4);
  CHECK(g2.boundary_measure == doctest::Approx(2 * M_PI * std::sin(M_PI / 4)).epsilon(1e-12));
  CHECK(g2.cap_measure == doctest::Approx(2 * M_PI * (1 - std::cos(M_PI / 4))).epsilon(1e-12));
  CHECK(g2.h == doctest::Approx(1.0).epsilon(1e-12));

  // n = 3: boundary is a round 2-sphere of radius sin r; volume by quadrature
  // should match 2 pi (r - sin r cos r) for the solid cap.
  const double r = 1.1;
  const CapGeometry g3 = cap_geometry(3, r);
  CHECK(g3.boundary_measure == doctest::Approx(4 * M_PI * std::pow(std::sin(r), 2)).epsilon(1e-10));
  CHECK(g3.cap_measure == doctest::Approx(2 * M_PI * (r - std::sin(r) * std::cos(r))).epsilon(1e-8));
}

TEST_CASE("annulus solves") {
  SUBCASE("sigma_1, n = 3, r = pi/3") {
    const RadialProfile prof = shoot_annulus(sigma_k_data(3, 1), M_PI / 3, 2048);
    CHECK(prof.max_interior_residual <= 1e-8);
    CHECK(prof.inner_residual <= 1e-8);
    CHECK(prof.outer_residual <= 1e-8);
    CHECK(prof.shoot_param == doctest::Approx(std::log(2.0 / 3.0)).epsilon(1e-7));
    CHECK(reflection_extension_residual(sigma_k_data(3, 1), prof) <= 1e-8);
    // this solution has constant split spectrum (-3/2, 3/2, 3/2)
    CHECK(prof.lambda_rad.lpNorm<Eigen::Infinity>() == doctest::Approx(1.5).epsilon(1e-6));
    CHECK(prof.lambda_tan.lpNorm<Eigen::Infinity>() == doctest::Approx(1.5).epsilon(1e-6));
  }
  SUBCASE("constant curvature, n = 2, r = pi/3 is the round annulus") {
    const RadialProfile prof = shoot_annulus(sigma_k_data(2, 1), M_PI / 3, 2048);
    CHECK(prof.rho.lpNorm<Eigen::Infinity>() < 1e-9);
    CHECK(prof.max_interior_residual <= 1e-8);
    CHECK(prof.inner_residual <= 1e-8);
    CHECK(prof.outer_residual <= 1e-8);
    CHECK(reflection_extension_residual(sigma_k_data(2, 1), prof) <= 1e-8);
  }
  SUBCASE("degenerate interval is rejected") {
    CHECK_THROWS_AS(shoot_annulus(sigma_k_data(3, 1), M_PI / 2 - 1e-5, 64), std::invalid_argument);
  }
}

TEST_CASE("dilation equivariance of radial solutions by substitution") {
  // If rho solves f(lambda) = 1 with boundary datum c, then rho + t has
  // eigenvalues e^{-2t} lambda and datum e^{-t} c, i.e. it solves the
  // wrapped problem f(e^{2t} lambda) = 1.
  const EllipticData data = sigma_k_data(3, 1);
  const RadialProfile prof = shoot_cap(data, 0.5, 1024);
  const double t = std::log(2.0);
  const EllipticData wrapped = dilated_data(data, 2.0 * t);

  double worst = 0.0;
  for (int j = 0; j < prof.size(); ++j) {
    double lr, lt;
    radial_eigenvalues(prof.rho(j) + t, prof.drho(j), prof.d2rho(j), prof.theta(j), lr, lt);
    Vec lam(3);
    lam << lr, lt, lt;
    worst = std::max(worst, std::fabs(wrapped.f(lam) - 1.0));
  }
  CHECK(worst <= 1e-10);

  const int last = prof.size() - 1;
  const double h_shifted = std::exp(-(prof.rho(last) + t)) * prof.drho(last);
  CHECK(h_shifted == doctest::Approx(std::exp(-t) * 0.5).epsilon(1e-8));
}

TEST_CASE("Mobius fit of a hemisphere solve and its profile-backed factor") {
  const RadialProfile prof = shoot_cap(sigma_k_data(3, 1), 0.5, 2048);
  const MobiusFit fit = fit_mobius(prof);
  CHECK(fit.sup_deviation < 1e-6);

  const FactorPtr mob = mobius_cap_factor(3, fit.s, fit.t);
  const FactorPtr backed = profile_factor(3, prof);
  Vec pole = Vec::Zero(4);
  pole(3) = 1.0;
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const double theta = 0.05 + (M_PI / 2 - 0.1) * trial / 29.0;
    const Vec x = sphere_point(pole, theta, random_unit_perp(pole, rng));
    CHECK(backed->rho(x) == doctest::Approx(mob->rho(x)).epsilon(1e-6));
  }
}

TEST_CASE("profile CSV export") {
  const RadialProfile prof = shoot_cap(sigma_k_data(2, 1), 0.0, 128);
  const std::string path = "radial_profile_test.csv";
  export_profile_csv(prof, path);
  std::ifstream in(path);
  REQUIRE(in.good());
  int lines = 0;
  std::string line;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == prof.size() + 1);
  std::remove(path.c_str());
}
