#include "horolift/elliptic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace horolift {

double elementary_symmetric(const Vec& x, int k) {
  const int n = static_cast<int>(x.size());
  if (k < 0 || k > n) throw std::invalid_argument("elementary_symmetric: k out of range");
  // e[j] after processing x_0..x_{i}: standard Newton-style recurrence.
  std::vector<double> e(k + 1, 0.0);
  e[0] = 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::min(k, i + 1); j >= 1; --j) e[j] += x(i) * e[j - 1];
  return e[k];
}

Vec elementary_symmetric_gradient(const Vec& x, int k) {
  const int n = static_cast<int>(x.size());
  if (k < 1 || k > n) throw std::invalid_argument("elementary_symmetric_gradient: k out of range");
  Vec g(n);
  for (int i = 0; i < n; ++i) {
    Vec rest(n - 1);
    int p = 0;
    for (int j = 0; j < n; ++j)
      if (j != i) rest(p++) = x(j);
    g(i) = elementary_symmetric(rest, k - 1);
  }
  return g;
}

bool in_garding_cone(const Vec& x, int k) {
  for (int j = 1; j <= k; ++j)
    if (!(elementary_symmetric(x, j) > 0.0)) return false;
  return true;
}

namespace {

std::function<Vec(const Vec&)> fd_gradient(std::function<double(const Vec&)> f, double h = 1e-6) {
  return [f = std::move(f), h](const Vec& x) {
    Vec g(x.size());
    for (int i = 0; i < x.size(); ++i) {
      Vec xp = x, xm = x;
      xp(i) += h;
      xm(i) -= h;
      g(i) = (f(xp) - f(xm)) / (2.0 * h);
    }
    return g;
  };
}

} // namespace

EllipticData sigma_k_data(int n, int k) {
  if (n < 2 || k < 1 || k > n) throw std::invalid_argument("sigma_k_data: need n >= 2, 1 <= k <= n");
  const double norm = elementary_symmetric(Vec::Constant(n, 0.5), k);
  EllipticData d;
  d.name = "sigma" + std::to_string(k);
  d.n = n;
  d.lambda0 = 0.5;
  d.f = [k, norm](const Vec& x) { return elementary_symmetric(x, k) / norm; };
  d.grad = [k, norm](const Vec& x) { return (elementary_symmetric_gradient(x, k) / norm).eval(); };
  d.in_cone = [k](const Vec& x) { return in_garding_cone(x, k); };
  return d;
}

EllipticData dilated_data(const EllipticData& base, double t) {
  EllipticData d;
  d.name = base.name + "@t=" + std::to_string(t);
  d.n = base.n;
  d.lambda0 = std::exp(-t) * base.lambda0;
  const double et = std::exp(t);
  d.f = [f = base.f, et](const Vec& x) { return f((et * x).eval()); };
  d.grad = [g = base.grad, et](const Vec& x) { return (et * g((et * x).eval())).eval(); };
  d.in_cone = [c = base.in_cone, et](const Vec& x) { return c((et * x).eval()); };
  return d;
}

// ---------------------------------------------------------------------------
// Expression mini-grammar: numbers, sigma1..sigmaN, + - * / ^ ( ), unary minus.

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;
  int n;

  using Fn = std::function<double(const Vec&)>;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("expression_data: " + what + " at position " + std::to_string(pos));
  }

  Fn expr() {
    Fn lhs = term();
    for (;;) {
      skip();
      if (eat('+')) {
        Fn rhs = term();
        lhs = [lhs, rhs](const Vec& x) { return lhs(x) + rhs(x); };
      } else if (eat('-')) {
        Fn rhs = term();
        lhs = [lhs, rhs](const Vec& x) { return lhs(x) - rhs(x); };
      } else {
        return lhs;
      }
    }
  }

  Fn term() {
    Fn lhs = power();
    for (;;) {
      skip();
      if (eat('*')) {
        Fn rhs = power();
        lhs = [lhs, rhs](const Vec& x) { return lhs(x) * rhs(x); };
      } else if (eat('/')) {
        Fn rhs = power();
        lhs = [lhs, rhs](const Vec& x) { return lhs(x) / rhs(x); };
      } else {
        return lhs;
      }
    }
  }

  Fn power() {
    Fn base = atom();
    skip();
    if (eat('^')) {
      Fn e = power();  // right-associative
      return [base, e](const Vec& x) { return std::pow(base(x), e(x)); };
    }
    return base;
  }

  Fn atom() {
    skip();
    if (pos >= s.size()) fail("unexpected end of input");
    if (eat('(')) {
      Fn inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (eat('-')) {
      Fn inner = atom();
      return [inner](const Vec& x) { return -inner(x); };
    }
    const char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t end = pos;
      while (end < s.size() &&
             (std::isdigit(static_cast<unsigned char>(s[end])) || s[end] == '.' ||
              s[end] == 'e' || s[end] == 'E' ||
              ((s[end] == '+' || s[end] == '-') && (s[end - 1] == 'e' || s[end - 1] == 'E'))))
        ++end;
      const double v = std::stod(s.substr(pos, end - pos));
      pos = end;
      return [v](const Vec&) { return v; };
    }
    if (s.compare(pos, 5, "sigma") == 0) {
      pos += 5;
      size_t end = pos;
      while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
      if (end == pos) fail("expected index after 'sigma'");
      const int k = std::stoi(s.substr(pos, end - pos));
      if (k < 1 || k > n) fail("sigma index out of range 1..n");
      pos = end;
      return [k](const Vec& x) { return elementary_symmetric(x, k); };
    }
    fail("unexpected character");
  }
};

} // namespace

EllipticData expression_data(int n, const std::string& expr) {
  if (n < 2) throw std::invalid_argument("expression_data: need n >= 2");
  Parser p{expr, 0, n};
  auto fn = p.expr();
  p.skip();
  if (p.pos != expr.size()) p.fail("trailing input");

  // Normalize so that f(lambda0 * 1) = 1 on the diagonal, finding lambda0 > 0
  // with raw(lambda0 * 1) > 0 by scanning the diagonal ray.
  auto raw = fn;
  double lambda0 = 0.5;
  double diag = raw(Vec::Constant(n, lambda0));
  if (!(diag > 0.0)) {
    bool found = false;
    for (double c : {1.0, 0.25, 2.0, 0.1, 4.0, 0.05, 8.0}) {
      diag = raw(Vec::Constant(n, c));
      if (diag > 0.0) {
        lambda0 = c;
        found = true;
        break;
      }
    }
    if (!found)
      throw std::invalid_argument("expression_data: no positive diagonal value found for '" +
                                  expr + "'");
  }
  const double norm = diag;

  EllipticData d;
  d.name = "expr(" + expr + ")";
  d.n = n;
  d.lambda0 = lambda0;
  d.f = [raw, norm](const Vec& x) { return raw(x) / norm; };
  d.grad = fd_gradient(d.f);
  // Cone heuristic for expressions: full Garding cone of the highest sigma
  // appearing would be expensive to infer; use positivity of f and of all its
  // gradient components as the working cone.
  auto f = d.f;
  auto g = d.grad;
  d.in_cone = [f, g](const Vec& x) {
    if (!(f(x) > 0.0)) return false;
    const Vec gr = g(x);
    for (int i = 0; i < gr.size(); ++i)
      if (!(gr(i) > 0.0)) return false;
    return true;
  };
  return d;
}

nlohmann::json EllipticityReport::to_json() const {
  auto cond = [](const ConditionResult& c) {
    return nlohmann::json{{"pass", c.pass}, {"worst", c.worst}, {"note", c.note}};
  };
  return nlohmann::json{
      {"cone_nesting", cond(cone_nesting)},   {"path_proxy", cond(path_proxy)},
      {"monotonicity", cond(monotonicity)},   {"normalization", cond(normalization)},
      {"lambda0", lambda0_found},             {"samples", samples},
      {"seed", seed},                         {"pass", core_pass()},
  };
}

EllipticityReport check_ellipticity(const EllipticData& data, int sample_count, unsigned seed) {
  if (data.n < 2) throw std::invalid_argument("check_ellipticity: need n >= 2");
  if (sample_count < 1) throw std::invalid_argument("check_ellipticity: need sample_count >= 1");
  const int n = data.n;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  // Rejection-sample cone points near the diagonal ray and push outward.
  auto sample_cone_point = [&]() -> Vec {
    for (int tries = 0; tries < 4096; ++tries) {
      Vec x = Vec::Constant(n, data.lambda0);
      const double spread = unif(rng) * 2.0;
      for (int i = 0; i < n; ++i) x(i) += spread * gauss(rng);
      const double scale = std::exp(2.0 * (unif(rng) - 0.5));
      x *= scale;
      if (data.in_cone(x)) return x;
    }
    throw std::runtime_error("check_ellipticity: cone sampler starved");
  };

  EllipticityReport rep;
  rep.samples = sample_count;
  rep.seed = seed;
  rep.lambda0_found = data.lambda0;

  // (i) cone is an open convex symmetric set containing the positive diagonal
  // and contained in { sigma_1 > 0 }. Proxy: random pair midpoints stay in,
  // coordinate permutations stay in, sigma_1 > 0 on samples.
  {
    double worst = std::numeric_limits<double>::infinity();
    bool ok = true;
    std::string note;
    if (!data.in_cone(Vec::Constant(n, data.lambda0))) {
      ok = false;
      note = "diagonal point not in cone";
    }
    for (int it = 0; ok && it < sample_count; ++it) {
      const Vec a = sample_cone_point();
      const Vec b = sample_cone_point();
      const Vec mid = 0.5 * (a + b);
      if (!data.in_cone(mid)) {
        ok = false;
        note = "midpoint left the cone (not convex)";
        break;
      }
      Vec perm = a;
      std::shuffle(perm.data(), perm.data() + n, rng);
      if (!data.in_cone(perm)) {
        ok = false;
        note = "permutation left the cone (not symmetric)";
        break;
      }
      const double s1 = elementary_symmetric(a, 1);
      worst = std::min(worst, s1);
      if (!(s1 > 0.0)) {
        ok = false;
        note = "cone point with sigma_1 <= 0";
        break;
      }
    }
    rep.cone_nesting = {ok, worst, note.empty() ? "convexity/symmetry/sigma1 proxies" : note};
  }

  // (ii) connectedness of { f = 1 } within the cone: segment proxy. Between
  // random pairs on the level set, the straight segment should stay in the
  // cone and f should stay positive along it.
  {
    double worst = std::numeric_limits<double>::infinity();
    bool ok = true;
    std::string note;
    auto level_point = [&]() -> Vec {
      for (int tries = 0; tries < 4096; ++tries) {
        Vec x = sample_cone_point();
        const double v = data.f(x);
        if (!(v > 0.0)) continue;
        // f(c x) is continuous in c along the ray; bisect f(c x) = 1.
        double lo = 1e-6, hi = 1e6;
        auto fr = [&](double c) { return data.f((c * x).eval()) - 1.0; };
        if (fr(lo) > 0.0 || fr(hi) < 0.0) continue;
        for (int i = 0; i < 200; ++i) {
          const double mid = std::sqrt(lo * hi);
          (fr(mid) < 0.0 ? lo : hi) = mid;
        }
        return (std::sqrt(lo * hi) * x).eval();
      }
      throw std::runtime_error("check_ellipticity: level-set sampler starved");
    };
    for (int it = 0; ok && it < sample_count; ++it) {
      const Vec a = level_point();
      const Vec b = level_point();
      for (int j = 1; j < 32; ++j) {
        const Vec p = a + (b - a) * (j / 32.0);
        if (!data.in_cone(p)) {
          ok = false;
          note = "segment between level points left the cone";
          break;
        }
        worst = std::min(worst, data.f(p));
      }
    }
    rep.path_proxy = {ok, worst, note.empty() ? "segment stayed in cone; min f on segments" : note};
  }

  // (iii) df/dx_i > 0 on sampled cone points.
  {
    double worst = std::numeric_limits<double>::infinity();
    bool ok = true;
    for (int it = 0; it < sample_count; ++it) {
      const Vec g = data.grad(sample_cone_point());
      worst = std::min(worst, g.minCoeff());
    }
    ok = worst > 0.0;
    rep.monotonicity = {ok, worst, "min partial derivative over samples"};
  }

  // (iv) f(lambda_0, ..., lambda_0) = 1.
  {
    const double v = data.f(Vec::Constant(n, data.lambda0));
    const double err = std::abs(v - 1.0);
    rep.normalization = {err <= 1e-10, err, "|f(lambda0 * 1) - 1|"};
  }

  return rep;
}

Vec curvature_transform(const Vec& x) {
  Vec y(x.size());
  for (int i = 0; i < x.size(); ++i) {
    if (std::abs(x(i) + 1.0) < 1e-14)
      throw std::invalid_argument("curvature_transform: component at -1");
    y(i) = (x(i) - 1.0) / (2.0 * (x(i) + 1.0));
  }
  return y;
}

CurvatureData make_curvature_data(const EllipticData& data) {
  CurvatureData c;
  c.name = data.name + "*";
  c.n = data.n;
  c.W = [f = data.f](const Vec& kappa) { return f(curvature_transform(kappa)); };
  // Gamma* = T^{-1}(Gamma): kappa belongs iff every component exceeds -1 and
  // the transformed eigenvalues lie in the base cone.
  c.in_cone = [cone = data.in_cone](const Vec& kappa) {
    for (int i = 0; i < kappa.size(); ++i)
      if (kappa(i) <= -1.0 + 1e-14) return false;
    return cone(curvature_transform(kappa));
  };
  return c;
}

P2Result check_P2(const Vec& lambda, double h) {
  const double rhs = std::abs(std::tanh(std::asinh(h)));
  P2Result r;
  r.slack = std::numeric_limits<double>::infinity();
  for (int i = 0; i < lambda.size(); ++i) {
    if (std::abs(lambda(i)) >= 0.5) {
      r.ok = false;
      r.slack = -std::numeric_limits<double>::infinity();
      return r;
    }
    r.slack = std::min(r.slack, (1.0 + 2.0 * lambda(i)) / (1.0 - 2.0 * lambda(i)) - rhs);
  }
  r.ok = r.slack > 0.0;
  return r;
}

} // namespace horolift
