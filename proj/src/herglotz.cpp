#include "entkit/herglotz.hpp"

#include <cmath>

#include "entkit/quad.hpp"

namespace entkit {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kBasePoints = 400;

void check_alpha_open(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw argument_error("order must lie in (0,1)");
  }
}

// Counterterm making the half-line integral converge; the grouped form
// 1/(w + 1/w) stays finite through w -> 0 and w -> inf, where the naive
// w/(w^2+1) ratio overflows or cancels to a signed zero.
double counterterm(double lambda) {
  const double w = lambda - 0.5;
  const double v = lambda + 0.5;
  const double cw = (w == 0.0) ? 0.0 : 1.0 / (w + 1.0 / w);
  return -(cw + 1.0 / (v + 1.0 / v));
}

// R_z(lambda) - R_z(-lambda) = 2 lambda / (lambda^2 - d^2), d = z - 1/2,
// computed without forming lambda^2.
double resolvent_difference(double z, double lambda) {
  const double d = z - 0.5;
  return 2.0 / (lambda - (d / lambda) * d);
}

double herglotz_integral(double alpha, double t, SemiInfiniteMap map) {
  auto integrand = [alpha, t](double lam) {
    return f_alpha(alpha, lam) * (resolvent_difference(t, lam) + counterterm(lam));
  };
  QuadratureRule rule = semi_infinite_rule(map, kBasePoints);
  return integrate(rule, integrand);
}

double vn_integral(double t, SemiInfiniteMap map) {
  const double d = t - 0.5;
  const double num = d * d - 0.25;
  // (lambda - 1/2)(R_t(lambda) - R_t(-lambda)) - 2 lambda/(lambda + 1/2)
  // collapses to 2 lambda (d^2 - 1/4)/((lambda^2 - d^2)(lambda + 1/2));
  // the factored form below survives lambda near the exp-map overflow edge.
  auto integrand = [d, num](double lam) {
    const double r = 2.0 / (lam - (d / lam) * d);  // ~ 2/lam at infinity
    return num * r / (lam + 0.5);
  };
  QuadratureRule rule = semi_infinite_rule(map, kBasePoints);
  return integrate(rule, integrand);
}

}  // namespace

double f_alpha(double alpha, double lambda) {
  check_alpha_open(alpha);
  if (!(lambda >= 0.5)) {
    throw argument_error("f_alpha requires lambda >= 1/2");
  }
  const double r = (2.0 * lambda - 1.0) / (2.0 * lambda + 1.0);
  // sin/cos of alpha*pi via the complement keeps accuracy near alpha = 1.
  const double sa = std::sin(kPi * (1.0 - alpha));
  const double ca = -std::cos(kPi * (1.0 - alpha));
  const double ra = std::pow(r, alpha);
  return std::atan2(ra * sa, 1.0 + ra * ca) / kPi;
}

double b_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw argument_error("b_alpha requires order in (0,1]");
  }
  const double arg = 1.0 + std::pow(2.0, alpha) +
                     std::pow(2.0, 0.5 * alpha + 1.0) * std::cos(0.75 * alpha * kPi);
  if (!(arg > 0.0)) {
    throw numerical_error("b_alpha log argument is nonpositive");
  }
  return 0.5 * std::log(arg);
}

std::pair<double, double> resolvent_pair(double z, double lambda) {
  if (!(z > 0.0 && z < 1.0)) throw argument_error("resolvent point must lie in (0,1)");
  if (!(lambda >= 0.5)) throw argument_error("resolvent_pair requires lambda >= 1/2");
  const double dp = z - 0.5 + lambda;
  const double dm = z - 0.5 - lambda;
  if (std::abs(dp) < 1e-300 || std::abs(dm) < 1e-300) {
    throw argument_error("resolvent evaluated at a pole");
  }
  return {1.0 / dp, 1.0 / dm};
}

double herglotz_eval(double alpha, double t) {
  check_alpha_open(alpha);
  if (alpha < 0.05) {
    throw argument_error("herglotz_eval supports orders >= 0.05");
  }
  if (!(t > 0.0 && t < 1.0)) {
    throw argument_error("herglotz_eval requires t in (0,1)");
  }
  const double ir = herglotz_integral(alpha, t, SemiInfiniteMap::rational);
  const double ie = herglotz_integral(alpha, t, SemiInfiniteMap::exponential);
  if (!(std::abs(ir - ie) <= 1e-8)) {
    throw numerical_error("herglotz substitutions disagree beyond 1e-8");
  }
  return (b_alpha(alpha) - ir) / (1.0 - alpha);
}

double von_neumann_eval(double t) {
  if (!(t > 0.0 && t < 1.0)) {
    throw argument_error("von_neumann_eval requires t in (0,1)");
  }
  const double ir = vn_integral(t, SemiInfiniteMap::rational);
  const double ie = vn_integral(t, SemiInfiniteMap::exponential);
  if (!(std::abs(ir - ie) <= 1e-8)) {
    throw numerical_error("von Neumann substitutions disagree beyond 1e-8");
  }
  return -ir;
}

}  // namespace entkit
