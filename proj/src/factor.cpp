#include "horolift/factor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace horolift {

Jet2 ConformalFactor::jet(const Chart& chart, const Vec& u) const {
  const int n = dim();
  const double h = fd_step_;
  auto f = [&](const Vec& uu) { return rho(chart_point(chart, uu)); };

  Jet2 out;
  out.rho = f(u);
  out.du.resize(n);
  out.d2u.resize(n, n);

  for (int i = 0; i < n; ++i) {
    Vec up = u, um = u;
    up(i) += h;
    um(i) -= h;
    const double fp = f(up), fm = f(um);
    out.du(i) = (fp - fm) / (2.0 * h);
    out.d2u(i, i) = (fp - 2.0 * out.rho + fm) / (h * h);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec upp = u, upm = u, ump = u, umm = u;
      upp(i) += h; upp(j) += h;
      upm(i) += h; upm(j) -= h;
      ump(i) -= h; ump(j) += h;
      umm(i) -= h; umm(j) -= h;
      const double v = (f(upp) - f(upm) - f(ump) + f(umm)) / (4.0 * h * h);
      out.d2u(i, j) = v;
      out.d2u(j, i) = v;
    }
  return out;
}

AxialFactor::AxialFactor(int n, Vec pole) : ConformalFactor(n), pole_(std::move(pole)) {
  if (pole_.size() != n + 1) throw std::invalid_argument("AxialFactor: pole must be in R^{n+1}");
  if (std::abs(pole_.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("AxialFactor: pole must be a unit vector");
}

double AxialFactor::rho(const Vec& x) const {
  double F, dF, d2F;
  profile(std::clamp(x.dot(pole_), -1.0, 1.0), F, dF, d2F);
  return F;
}

Jet2 AxialFactor::jet(const Chart& chart, const Vec& u) const {
  const int n = dim();
  Vec x;
  Mat dx;
  std::vector<Mat> d2x;
  chart_jet(chart, u, x, dx, d2x);

  const double c = std::clamp(x.dot(pole_), -1.0, 1.0);
  double F, dF, d2F;
  profile(c, F, dF, d2F);

  Vec dc = dx.transpose() * pole_;           // n
  Mat d2c = Mat::Zero(n, n);
  for (int a = 0; a <= n; ++a) d2c += pole_(a) * d2x[a];

  Jet2 out;
  out.rho = F;
  out.du = dF * dc;
  out.d2u = d2F * (dc * dc.transpose()) + dF * d2c;
  return out;
}

ConstantFactor::ConstantFactor(int n, double t)
    : AxialFactor(n, Vec::Unit(n + 1, n)), t_(t) {}

void ConstantFactor::profile(double, double& F, double& dF, double& d2F) const {
  F = t_;
  dF = 0.0;
  d2F = 0.0;
}

MobiusCapFactor::MobiusCapFactor(int n, double s, double t, Vec pole)
    : AxialFactor(n, std::move(pole)), s_(s), t_(t) {}

MobiusCapFactor::MobiusCapFactor(int n, double s, double t)
    : MobiusCapFactor(n, s, t, Vec::Unit(n + 1, n)) {}

void MobiusCapFactor::profile(double c, double& F, double& dF, double& d2F) const {
  const double D = std::cosh(s_) - std::sinh(s_) * c;
  F = t_ - std::log(D);
  dF = std::sinh(s_) / D;
  d2F = std::sinh(s_) * std::sinh(s_) / (D * D);
}

DilatedFactor::DilatedFactor(FactorPtr base, double t)
    : ConformalFactor(base->dim()), base_(std::move(base)), t_(t) {}

double DilatedFactor::rho(const Vec& x) const { return base_->rho(x) + t_; }

bool DilatedFactor::closed_form() const { return base_->closed_form(); }

Jet2 DilatedFactor::jet(const Chart& chart, const Vec& u) const {
  Jet2 j = base_->jet(chart, u);
  j.rho += t_;
  return j;
}

FactorPtr dilate(FactorPtr base, double t) {
  if (t == 0.0) return base;
  return std::make_shared<DilatedFactor>(std::move(base), t);
}

FiniteDifferenceFactor::FiniteDifferenceFactor(FactorPtr base, double step)
    : ConformalFactor(base->dim()), base_(std::move(base)) {
  set_fd_step(step);
}

double FiniteDifferenceFactor::rho(const Vec& x) const { return base_->rho(x); }

FunctionFactor::FunctionFactor(int n, std::function<double(const Vec&)> fn, std::string name)
    : ConformalFactor(n), fn_(std::move(fn)), name_(std::move(name)) {}

double FunctionFactor::rho(const Vec& x) const { return fn_(x); }

GridFactor::GridFactor(int n, std::vector<int> chart_ids, std::vector<Vec> coords,
                       std::vector<double> values)
    : ConformalFactor(n),
      chart_ids_(std::move(chart_ids)),
      coords_(std::move(coords)),
      values_(std::move(values)) {
  if (coords_.size() != values_.size() || coords_.size() != chart_ids_.size())
    throw std::invalid_argument("GridFactor: ragged sample arrays");
  const size_t monomials = 1 + n + n * (n + 1) / 2;
  size_t per_chart[2] = {0, 0};
  for (int id : chart_ids_) {
    if (id != 0 && id != 1) throw std::invalid_argument("GridFactor: chart id must be 0 or 1");
    ++per_chart[id];
  }
  if (per_chart[0] < monomials && per_chart[1] < monomials)
    throw std::invalid_argument("GridFactor: not enough samples for a quadratic fit");
  for (size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || !coords_[i].allFinite()) {
      std::ostringstream msg;
      msg << "GridFactor: non-finite sample at row " << i;
      throw std::invalid_argument(msg.str());
    }
  }
}

GridFactor GridFactor::from_csv(int n, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("GridFactor: cannot open " + path);
  std::vector<int> ids;
  std::vector<Vec> coords;
  std::vector<double> values;
  std::string line;
  size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string tok;
    std::vector<std::string> cells;
    while (std::getline(ss, tok, ',')) cells.push_back(tok);
    if (row == 1 && !cells.empty() && cells[0] == "chart") continue;  // header
    if (static_cast<int>(cells.size()) != n + 2) {
      std::ostringstream msg;
      msg << "GridFactor: row " << row << " has " << cells.size()
          << " columns, expected " << n + 2;
      throw std::invalid_argument(msg.str());
    }
    try {
      ids.push_back(std::stoi(cells[0]));
      Vec u(n);
      for (int i = 0; i < n; ++i) u(i) = std::stod(cells[1 + i]);
      coords.push_back(u);
      values.push_back(std::stod(cells[n + 1]));
    } catch (const std::exception&) {
      std::ostringstream msg;
      msg << "GridFactor: unparsable value at row " << row;
      throw std::invalid_argument(msg.str());
    }
  }
  return GridFactor(n, std::move(ids), std::move(coords), std::move(values));
}

Jet2 GridFactor::local_fit(int chart_id, const Vec& u) const {
  const int n = dim();
  const int monomials = 1 + n + n * (n + 1) / 2;
  const int want = std::max(3 * monomials, 12);

  std::vector<std::pair<double, size_t>> dist;
  for (size_t i = 0; i < coords_.size(); ++i)
    if (chart_ids_[i] == chart_id) dist.emplace_back((coords_[i] - u).squaredNorm(), i);
  if (static_cast<int>(dist.size()) < monomials)
    throw std::invalid_argument("GridFactor: not enough samples near requested point");
  const int k = std::min<int>(want, static_cast<int>(dist.size()));
  std::partial_sort(dist.begin(), dist.begin() + k, dist.end());

  const double scale = std::sqrt(dist[k - 1].first) + 1e-12;
  Mat A(k, monomials);
  Vec b(k);
  for (int r = 0; r < k; ++r) {
    const Vec d = coords_[dist[r].second] - u;
    const double wgt = std::exp(-d.squaredNorm() / (scale * scale));
    int col = 0;
    A(r, col++) = wgt;
    for (int i = 0; i < n; ++i) A(r, col++) = wgt * d(i);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) A(r, col++) = wgt * d(i) * d(j);
    b(r) = wgt * values_[dist[r].second];
  }
  Vec coef = A.colPivHouseholderQr().solve(b);

  Jet2 out;
  out.rho = coef(0);
  out.du = coef.segment(1, n);
  out.d2u = Mat::Zero(n, n);
  int col = 1 + n;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double c = coef(col++);
      if (i == j) {
        out.d2u(i, i) = 2.0 * c;
      } else {
        out.d2u(i, j) = c;
        out.d2u(j, i) = c;
      }
    }
  return out;
}

double GridFactor::rho(const Vec& x) const {
  const Chart chart = preferred_chart(dim(), x);
  return local_fit(chart.id, chart_coords(chart, x)).rho;
}

Jet2 GridFactor::jet(const Chart& chart, const Vec& u) const {
  return local_fit(chart.id, u);
}

} // namespace horolift
