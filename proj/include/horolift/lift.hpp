#pragma once

#include <string>
#include <vector>

#include "horolift/factor.hpp"
#include "horolift/lorentz.hpp"
#include "horolift/types.hpp"

namespace horolift {

/// One lifted point of the hypersurface phi: base point on S^n, the three
/// Lorentz vectors, a tangent frame of phi, fundamental forms in the
/// g_0-orthonormal chart frame, and sorted principal curvatures.
struct HypersurfaceSample {
  Vec x;                     // unit vector in R^{n+1}
  Vec phi;                   // H^{n+1}
  Vec eta;                   // de Sitter unit normal
  Vec psi;                   // light cone, psi = phi - eta
  std::vector<Vec> frame;    // d phi applied to the orthonormal chart frame
  Mat I;                     // first fundamental form
  Mat II;                    // second fundamental form
  Vec kappa;                 // principal curvatures, ascending
  bool concave = false;      // kappa_min > -1
};

/// phi(x) = (e^rho / 2)(1 + e^{-2 rho}(1 + |grad_0 rho|^2))(1, x)
///        + e^{-rho}(0, -x + grad_0 rho);  psi = e^rho (1, x);  eta = phi - psi.
void lift_point(const ConformalFactor& factor, const Vec& x, Vec& phi, Vec& eta, Vec& psi);

/// Ideal endpoint of the normal geodesic: ideal_projection(psi) = x.
Vec gauss_map(const HypersurfaceSample& sample);

/// I(u,v) = <d phi(u), d phi(v)>, II = -sym <d eta(u), d phi(v)>, expressed in
/// the g_0-orthonormal chart frame. Sign pinned by rho = t giving kappa = coth t.
/// Throws std::runtime_error("lift degeneracy...") when cond(I) > 1e8.
void fundamental_forms(const ConformalFactor& factor, const Vec& x, Mat& I, Mat& II);

/// Eigenvalues of I^{-1} II via the symmetric generalized eigenproblem,
/// ascending. Throws std::invalid_argument if I is not positive definite.
Vec principal_curvatures(const Mat& I, const Mat& II);

/// Full sample at x: lift, forms, frame, curvatures, concavity flag.
HypersurfaceSample lift_sample(const ConformalFactor& factor, const Vec& x);

/// max_i |lambda_i - (1/2 - 1/(1 + kappa_i))| with both lists ascending.
/// Throws std::invalid_argument if some kappa_i = -1.
double verify_lambda_kappa(const ConformalFactor& factor, const Vec& x);

/// CSV rows: x, phi, eta, psi components and the kappa list.
void export_samples_csv(const std::vector<HypersurfaceSample>& samples, const std::string& path);

} // namespace horolift
