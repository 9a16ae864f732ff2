#pragma once

#include <functional>
#include <string>

#include "json.hpp"

#include "horolift/types.hpp"

namespace horolift {

/// k-th elementary symmetric polynomial of the entries of x.
double elementary_symmetric(const Vec& x, int k);
/// Gradient: d sigma_k / d x_i = sigma_{k-1}(x with x_i removed).
Vec elementary_symmetric_gradient(const Vec& x, int k);
/// Garding cone membership: sigma_j(x) > 0 for all j = 1..k.
bool in_garding_cone(const Vec& x, int k);

/// Elliptic data (f, Gamma): symmetric curvature function, cone membership
/// and the diagonal normalization f(lambda_0, ..., lambda_0) = 1.
struct EllipticData {
  std::string name;
  int n = 0;
  double lambda0 = 0.5;
  std::function<double(const Vec&)> f;
  std::function<Vec(const Vec&)> grad;  // may be finite-difference backed
  std::function<bool(const Vec&)> in_cone;
};

/// f = sigma_k / sigma_k(1/2, ..., 1/2) on the Garding cone Gamma_k.
EllipticData sigma_k_data(int n, int k);

/// Dilation wrapper: f_t(y) = f(e^t y) with cone e^{-t} Gamma, so that
/// lambda -> e^{-t} lambda maps solutions of f = 1 to solutions of f_t = 1.
EllipticData dilated_data(const EllipticData& base, double t);

/// Parses a symmetric-function expression over sigma1..sigmaN, numbers and
/// + - * / ^ ( ). Example: "(4/3)*sigma2" or "sigma1^2 - sigma2".
EllipticData expression_data(int n, const std::string& expr);

struct ConditionResult {
  bool pass = false;
  double worst = 0.0;
  std::string note;
};

struct EllipticityReport {
  ConditionResult cone_nesting;     // (i)
  ConditionResult path_proxy;       // (ii), sampled segment proxy
  ConditionResult monotonicity;     // (iii)
  ConditionResult normalization;    // (iv)
  double lambda0_found = 0.0;
  int samples = 0;
  unsigned seed = 0;
  bool core_pass() const {  // (i), (iii), (iv)
    return cone_nesting.pass && monotonicity.pass && normalization.pass;
  }
  nlohmann::json to_json() const;
};

EllipticityReport check_ellipticity(const EllipticData& data, int sample_count, unsigned seed);

/// Componentwise T(x) = (x - 1) / (2 (x + 1)); maps principal curvatures to
/// Schouten eigenvalues. Throws on any component equal to -1.
Vec curvature_transform(const Vec& x);

/// Curvature data (W, Gamma*) with W = f o T and Gamma* = T^{-1}(Gamma).
struct CurvatureData {
  std::string name;
  int n = 0;
  std::function<double(const Vec&)> W;
  std::function<bool(const Vec&)> in_cone;
};

CurvatureData make_curvature_data(const EllipticData& data);

struct P2Result {
  bool ok = false;
  double slack = 0.0;
};

/// (P2): (1 + 2 lambda_i) / (1 - 2 lambda_i) > |tanh(asinh(h))| for all i.
/// Requires |lambda_i| < 1/2.
P2Result check_P2(const Vec& lambda, double h);

} // namespace horolift
