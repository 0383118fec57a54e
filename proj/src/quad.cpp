#include "entkit/quad.hpp"

#include <cmath>
#include <limits>

namespace entkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

// Legendre P_n and its derivative at x by upward recurrence.
void legendre_pair(int n, double x, double* pn, double* dpn) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    *pn = p0;
    *dpn = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  *pn = p1;
  *dpn = n * (x * p1 - p0) / (x * x - 1.0);
}

void check_bounded(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw argument_error("quadrature domain must be a bounded interval a < b");
  }
}

}  // namespace

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw argument_error("gauss_legendre needs n >= 1");
  check_bounded(a, b);
  QuadratureRule rule;
  rule.scheme = QuadScheme::gauss_legendre;
  rule.a = a;
  rule.b = b;
  rule.nodes.resize(n);
  rule.weights.resize(n);

  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-angle initial guess for the i-th root from the top.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pn = 0.0, dpn = 1.0;
    int iter = 0;
    for (; iter < 100; ++iter) {
      legendre_pair(n, x, &pn, &dpn);
      double dx = pn / dpn;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    if (iter >= 100) {
      throw numerical_error("gauss_legendre Newton iteration failed to converge");
    }
    legendre_pair(n, x, &pn, &dpn);
    const double w = 2.0 / ((1.0 - x * x) * dpn * dpn);
    // x is the (i+1)-th root counted from +1 downward.
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = half * w;
    rule.weights[n - 1 - i] = half * w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = mid;  // symmetry pin for the center node
  return rule;
}

QuadratureRule tanh_sinh_rule(int levels, double a, double b) {
  if (levels < 3) throw argument_error("tanh_sinh_rule needs levels >= 3");
  check_bounded(a, b);
  QuadratureRule rule;
  rule.scheme = QuadScheme::tanh_sinh;
  rule.a = a;
  rule.b = b;

  const double h = std::ldexp(1.0, -levels);
  // u runs until the node's endpoint distance underflows; stopping earlier
  // leaves a truncated stub of any integrable endpoint singularity.
  const int jmax = static_cast<int>(6.11 / h);
  const double len = b - a;
  for (int j = -jmax; j <= jmax; ++j) {
    const double u = j * h;
    const double s = 0.5 * kPi * std::sinh(std::abs(u));
    // distance to the nearer endpoint, free of the 1 + tanh cancellation
    const double e = std::exp(-2.0 * s);
    const double tnear = e / (1.0 + e);
    const double c = std::cosh(s);
    const double w = 0.5 * h * (0.5 * kPi) * std::cosh(u) / (c * c);
    if (!(tnear > 0.0) || !(w > 0.0)) continue;
    const double x = j <= 0 ? a + len * tnear : b - len * tnear;
    if (!(x > a && x < b)) continue;
    rule.nodes.push_back(x);
    rule.weights.push_back(len * w);
  }
  return rule;
}

double integrate(const QuadratureRule& rule,
                 const std::function<double(double)>& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    s += rule.weights[i] * f(rule.nodes[i]);
  }
  return s;
}

NestedResult integrate_nested(const QuadratureRule& rule,
                              const std::function<double(double)>& f) {
  NestedResult out;
  out.value = integrate(rule, f);
  double coarse = 0.0;
  if (rule.scheme == QuadScheme::tanh_sinh) {
    // Every other node with doubled weight reproduces the rule one level up.
    for (std::size_t i = 0; i < rule.size(); i += 2) {
      coarse += 2.0 * rule.weights[i] * f(rule.nodes[i]);
    }
  } else {
    const int n = static_cast<int>(rule.size());
    QuadratureRule half = gauss_legendre(std::max(1, n / 2), rule.a, rule.b);
    coarse = integrate(half, f);
  }
  out.error_estimate = std::abs(out.value - coarse);
  return out;
}

namespace {

// Base-rule point u in (0,1) mapped to lambda in (1/2, inf) plus d lambda/du.
// The exponential map overflows past u/(1-u) ~ 690; such nodes carry
// contributions below double range and are dropped by the caller.
bool map_point(SemiInfiniteMap map, double u, double* lambda, double* jac) {
  if (map == SemiInfiniteMap::rational) {
    *lambda = 0.5 + u / (1.0 - u);
    *jac = 1.0 / ((1.0 - u) * (1.0 - u));
    return std::isfinite(*lambda) && std::isfinite(*jac);
  }
  const double e = u / (1.0 - u);
  if (e > 690.0) return false;
  const double ex = std::exp(e);
  *lambda = 0.5 + (ex - 1.0);
  *jac = ex / ((1.0 - u) * (1.0 - u));
  return std::isfinite(*lambda) && std::isfinite(*jac);
}

}  // namespace

QuadratureRule semi_infinite_rule(SemiInfiniteMap map, int n) {
  if (n < 2) throw argument_error("semi_infinite_rule needs n >= 2");
  QuadratureRule base = gauss_legendre(n, 0.0, 1.0);
  QuadratureRule rule;
  rule.scheme = QuadScheme::gauss_legendre;
  rule.a = 0.5;
  rule.b = kInf;
  for (std::size_t i = 0; i < base.size(); ++i) {
    double lam, jac;
    if (!map_point(map, base.nodes[i], &lam, &jac)) continue;
    rule.nodes.push_back(lam);
    rule.weights.push_back(base.weights[i] * jac);
  }
  return rule;
}

SemiInfiniteResult semi_infinite_integrate(
    const std::function<double(double)>& f, SemiInfiniteMap map, int n) {
  if (n < 4) throw argument_error("semi_infinite_integrate needs n >= 4");
  SemiInfiniteResult out;
  QuadratureRule fine = semi_infinite_rule(map, n);
  QuadratureRule coarse = semi_infinite_rule(map, n / 2);
  const double vf = integrate(fine, f);
  const double vc = integrate(coarse, f);
  out.value = vf;
  out.tail_estimate = std::abs(vf - vc);
  // Integrands without decay (e.g. constants) never stabilize under
  // refinement; surface that instead of returning a mesh artifact.
  out.converged = std::isfinite(vf) &&
                  out.tail_estimate <= 1e-8 * std::max(1.0, std::abs(vf));
  return out;
}

QuadratureRule pv_rule(const Interval& iv, int n) {
  if (n < 8) throw argument_error("pv_rule needs n >= 8");
  if (iv.unbounded()) {
    throw geometry_error(geometry_error::kind::unbounded,
                         "pv_rule requires a bounded interval");
  }
  QuadratureRule rule = gauss_legendre(n, iv.a, iv.b);
  rule.scheme = QuadScheme::pv_corrected;
  return rule;
}

double pv_apply(const QuadratureRule& rule,
                const std::function<double(double)>& f,
                const std::function<double(double)>& df, double x) {
  if (rule.scheme != QuadScheme::pv_corrected) {
    throw argument_error("pv_apply requires a pv_corrected rule");
  }
  if (!(x > rule.a && x < rule.b)) {
    throw argument_error("principal-value point must lie inside the interval");
  }
  const double len = rule.b - rule.a;
  const double fx = f(x);
  double s = 0.0;
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const double d = x - rule.nodes[j];
    if (std::abs(d) < 1e-12 * len) {
      // Removable point of the difference quotient: limit is -f'(x).
      double deriv;
      if (df) {
        deriv = df(x);
      } else {
        const double h = 1e-6 * len;
        deriv = (f(x + h) - f(x - h)) / (2.0 * h);
      }
      s += rule.weights[j] * (-deriv);
    } else {
      s += rule.weights[j] * (f(rule.nodes[j]) - fx) / d;
    }
  }
  return s + fx * std::log((x - rule.a) / (rule.b - x));
}

int oscillatory_node_count(double k, double length) {
  if (!(k >= 0.0) || !(length > 0.0) || !std::isfinite(length)) {
    throw argument_error("oscillatory_node_count needs k >= 0 and finite length > 0");
  }
  return static_cast<int>(std::ceil(k * length / kPi * 2.0)) + 16;
}

}  // namespace entkit
