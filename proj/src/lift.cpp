#include "horolift/lift.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "horolift/metric.hpp"

namespace horolift {

namespace {

// Lorentz vectors assembled as (x_0, spatial) in R^{n+2}.
Vec lorentz(double x0, const Vec& spatial) {
  Vec v(spatial.size() + 1);
  v(0) = x0;
  v.tail(spatial.size()) = spatial;
  return v;
}

struct LiftJet {
  Vec phi, eta, psi;
  Mat dphi, deta;  // (n+2) x n, chart coordinate derivatives
};

// Everything below needs only the second-order jet of rho: the ambient
// gradient V = dx (du rho / sigma^2) and its first chart derivatives.
LiftJet lift_jet(const ConformalFactor& factor, const Chart& chart, const Vec& u) {
  const int n = factor.dim();
  const Jet2 jet = factor.jet(chart, u);

  Vec x;
  Mat dx;
  std::vector<Mat> d2x;
  chart_jet(chart, u, x, dx, d2x);
  const double sigma = chart_sigma(u);
  const Vec dls = chart_dlog_sigma(u);

  const Vec p = jet.du / (sigma * sigma);
  const Vec V = dx * p;

  Mat dV(n + 1, n);
  for (int j = 0; j < n; ++j) {
    Vec col = Vec::Zero(n + 1);
    for (int a = 0; a <= n; ++a) col(a) = d2x[a].row(j).dot(p);
    const Vec dp = (jet.d2u.col(j) - 2.0 * dls(j) * jet.du) / (sigma * sigma);
    dV.col(j) = col + dx * dp;
  }

  const double er = std::exp(jet.rho), emr = std::exp(-jet.rho);
  const double q = V.squaredNorm();
  const double A = 0.5 * (er + emr * (1.0 + q));

  LiftJet out;
  out.phi = lorentz(A, A * x - emr * x + emr * V);
  out.psi = lorentz(er, er * x);
  out.eta = out.phi - out.psi;

  out.dphi.resize(n + 2, n);
  Mat dpsi(n + 2, n);
  for (int j = 0; j < n; ++j) {
    const double rj = jet.du(j);
    const double dq = 2.0 * V.dot(dV.col(j));
    const double dA = 0.5 * (rj * er - rj * emr * (1.0 + q) + emr * dq);
    const Vec dxj = dx.col(j);
    out.dphi.col(j) =
        lorentz(dA, dA * x + A * dxj +
                        emr * (-rj * (-x + V) - dxj + dV.col(j)));
    dpsi.col(j) = lorentz(rj * er, er * (rj * x + dxj));
  }
  out.deta = out.dphi - dpsi;
  return out;
}

void forms_from_jet(const LiftJet& lj, double sigma, Mat& I, Mat& II) {
  const int n = static_cast<int>(lj.dphi.cols());
  I.resize(n, n);
  II.resize(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      I(j, k) = minkowski_inner(lj.dphi.col(j), lj.dphi.col(k));
      II(j, k) = -minkowski_inner(lj.deta.col(j), lj.dphi.col(k));
    }
  II = (0.5 * (II + II.transpose())).eval();
  const double s2 = sigma * sigma;
  I /= s2;
  II /= s2;
}

void check_conditioning(const Mat& I) {
  Eigen::SelfAdjointEigenSolver<Mat> eig(I);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > 1e8)
    throw std::runtime_error(
        "lift degeneracy: first fundamental form ill-conditioned (some lambda_i near 1/2)");
}

} // namespace

void lift_point(const ConformalFactor& factor, const Vec& x, Vec& phi, Vec& eta, Vec& psi) {
  const Chart chart = preferred_chart(factor.dim(), x);
  const LiftJet lj = lift_jet(factor, chart, chart_coords(chart, x));
  phi = lj.phi;
  eta = lj.eta;
  psi = lj.psi;
}

Vec gauss_map(const HypersurfaceSample& sample) { return ideal_projection(sample.psi); }

void fundamental_forms(const ConformalFactor& factor, const Vec& x, Mat& I, Mat& II) {
  const Chart chart = preferred_chart(factor.dim(), x);
  const Vec u = chart_coords(chart, x);
  const LiftJet lj = lift_jet(factor, chart, u);
  forms_from_jet(lj, chart_sigma(u), I, II);
  check_conditioning(I);
}

Vec principal_curvatures(const Mat& I, const Mat& II) {
  Eigen::SelfAdjointEigenSolver<Mat> test(I);
  if (!(test.eigenvalues().minCoeff() > 0.0))
    throw std::invalid_argument("principal_curvatures: first form not positive definite");
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> eig(II, I);
  return eig.eigenvalues();
}

HypersurfaceSample lift_sample(const ConformalFactor& factor, const Vec& x) {
  const Chart chart = preferred_chart(factor.dim(), x);
  const Vec u = chart_coords(chart, x);
  const LiftJet lj = lift_jet(factor, chart, u);
  const double sigma = chart_sigma(u);

  HypersurfaceSample s;
  s.x = x;
  s.phi = lj.phi;
  s.eta = lj.eta;
  s.psi = lj.psi;
  forms_from_jet(lj, sigma, s.I, s.II);
  check_conditioning(s.I);
  s.frame.reserve(factor.dim());
  for (int j = 0; j < factor.dim(); ++j) s.frame.push_back(lj.dphi.col(j) / sigma);
  s.kappa = principal_curvatures(s.I, s.II);
  s.concave = s.kappa.minCoeff() > -1.0;
  return s;
}

double verify_lambda_kappa(const ConformalFactor& factor, const Vec& x) {
  const HypersurfaceSample s = lift_sample(factor, x);
  const Vec lambda = schouten_tensor(factor, x).lambda;  // ascending
  double worst = 0.0;
  for (int i = 0; i < lambda.size(); ++i) {
    const double k = s.kappa(i);
    if (std::abs(1.0 + k) < 1e-14)
      throw std::invalid_argument("verify_lambda_kappa: principal curvature -1");
    worst = std::max(worst, std::abs(lambda(i) - (0.5 - 1.0 / (1.0 + k))));
  }
  return worst;
}

void export_samples_csv(const std::vector<HypersurfaceSample>& samples, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("export_samples_csv: cannot open " + path);
  if (samples.empty()) return;
  const int n = static_cast<int>(samples.front().kappa.size());
  out << "# x[" << n + 1 << "], phi[" << n + 2 << "], eta[" << n + 2 << "], psi[" << n + 2
      << "], kappa[" << n << "]\n";
  out.precision(17);
  for (const auto& s : samples) {
    for (int i = 0; i <= n; ++i) out << s.x(i) << ',';
    for (int i = 0; i <= n + 1; ++i) out << s.phi(i) << ',';
    for (int i = 0; i <= n + 1; ++i) out << s.eta(i) << ',';
    for (int i = 0; i <= n + 1; ++i) out << s.psi(i) << ',';
    for (int i = 0; i < n; ++i) out << s.kappa(i) << (i + 1 < n ? ',' : '\n');
  }
}

} // namespace horolift
