#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "horolift/sphere.hpp"
#include "horolift/types.hpp"

namespace horolift {

/// Second-order jet of the conformal factor in chart coordinates.
struct Jet2 {
  double rho = 0.0;
  Vec du;   // n
  Mat d2u;  // n x n, symmetric
};

/// A smooth scalar field rho on (a subdomain of) S^n defining g = e^{2 rho} g_0.
/// Derivative access goes through chart jets; the default path is second-order
/// central finite differences of rho(x(u)), closed-form families override it.
class ConformalFactor {
 public:
  explicit ConformalFactor(int n) : n_(n) {}
  virtual ~ConformalFactor() = default;

  int dim() const { return n_; }

  /// rho at an ambient unit vector x in R^{n+1}.
  virtual double rho(const Vec& x) const = 0;

  virtual bool closed_form() const { return false; }
  virtual std::string provider() const { return closed_form() ? "closed-form" : "finite-difference"; }

  virtual Jet2 jet(const Chart& chart, const Vec& u) const;

  double fd_step() const { return fd_step_; }
  void set_fd_step(double h) { fd_step_ = h; }

 private:
  int n_;
  double fd_step_ = 1e-3;
};

using FactorPtr = std::shared_ptr<const ConformalFactor>;

/// Rotationally symmetric factor rho(x) = F(x . pole), with closed-form
/// profile derivatives with respect to c = x . pole.
class AxialFactor : public ConformalFactor {
 public:
  AxialFactor(int n, Vec pole);

  const Vec& pole() const { return pole_; }

  /// F(c), F'(c), F''(c) for c = cos(theta) in [-1, 1].
  virtual void profile(double c, double& F, double& dF, double& d2F) const = 0;

  double rho(const Vec& x) const override;
  bool closed_form() const override { return true; }
  Jet2 jet(const Chart& chart, const Vec& u) const override;

 private:
  Vec pole_;
};

class ConstantFactor : public AxialFactor {
 public:
  ConstantFactor(int n, double t);
  void profile(double c, double& F, double& dF, double& d2F) const override;

 private:
  double t_;
};

/// The Mobius cap family e^{rho(theta)} = e^t / (cosh s - sinh s cos theta),
/// the pullback of g_0 under the conformal diffeomorphism induced by the
/// hyperbolic translation of rapidity s along the pole axis, dilated by t.
class MobiusCapFactor : public AxialFactor {
 public:
  MobiusCapFactor(int n, double s, double t, Vec pole);
  MobiusCapFactor(int n, double s, double t);

  void profile(double c, double& F, double& dF, double& d2F) const override;

  double translation() const { return s_; }
  double dilation() const { return t_; }

 private:
  double s_, t_;
};

/// rho + t; preserves the provider class of the base factor.
class DilatedFactor : public ConformalFactor {
 public:
  DilatedFactor(FactorPtr base, double t);
  double rho(const Vec& x) const override;
  bool closed_form() const override;
  Jet2 jet(const Chart& chart, const Vec& u) const override;
  const FactorPtr& base() const { return base_; }
  double shift() const { return t_; }

 private:
  FactorPtr base_;
  double t_;
};

FactorPtr dilate(FactorPtr base, double t);

/// Forces the finite-difference jet path on any factor (oracle provider).
class FiniteDifferenceFactor : public ConformalFactor {
 public:
  FiniteDifferenceFactor(FactorPtr base, double step = 1e-3);
  double rho(const Vec& x) const override;
  bool closed_form() const override { return false; }

 private:
  FactorPtr base_;
};

/// Arbitrary rho(x) given as a callable; finite-difference jets.
class FunctionFactor : public ConformalFactor {
 public:
  FunctionFactor(int n, std::function<double(const Vec&)> fn, std::string name = "function");
  double rho(const Vec& x) const override;
  std::string provider() const override { return name_; }

 private:
  std::function<double(const Vec&)> fn_;
  std::string name_;
};

/// Factor ingested from CSV samples (chart id, u_1..u_n, rho). Evaluation
/// fits a local quadratic by moving least squares over the nearest samples,
/// so jets come straight from the fitted polynomial.
class GridFactor : public ConformalFactor {
 public:
  GridFactor(int n, std::vector<int> chart_ids, std::vector<Vec> coords,
             std::vector<double> values);

  static GridFactor from_csv(int n, const std::string& path);

  double rho(const Vec& x) const override;
  Jet2 jet(const Chart& chart, const Vec& u) const override;
  std::string provider() const override { return "grid-mls"; }

 private:
  Jet2 local_fit(int chart_id, const Vec& u) const;
  std::vector<int> chart_ids_;
  std::vector<Vec> coords_;
  std::vector<double> values_;
};

} // namespace horolift
