#include "entkit/testfns.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "entkit/quad.hpp"

namespace entkit {

namespace {

constexpr double kPi = 3.14159265358979323846;

double renyi_value(double alpha, double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  // Reflect into t <= 1/2; 1-t is exact there by Sterbenz.
  const double s = std::min(t, 1.0 - t);
  // ln(s^a + (1-s)^a) = log1p(s^a + expm1(a log1p(-s))) avoids the
  // cancellation of the direct sum near the endpoints.
  const double u = std::pow(s, alpha);
  return std::log1p(u + std::expm1(alpha * std::log1p(-s))) / (1.0 - alpha);
}

double renyi_d1(double alpha, double t) {
  const double g = std::pow(t, alpha) + std::pow(1.0 - t, alpha);
  const double gp = alpha * (std::pow(t, alpha - 1.0) - std::pow(1.0 - t, alpha - 1.0));
  return gp / ((1.0 - alpha) * g);
}

double renyi_d2(double alpha, double t) {
  const double g = std::pow(t, alpha) + std::pow(1.0 - t, alpha);
  const double gp = alpha * (std::pow(t, alpha - 1.0) - std::pow(1.0 - t, alpha - 1.0));
  const double gpp = alpha * (alpha - 1.0) *
                     (std::pow(t, alpha - 2.0) + std::pow(1.0 - t, alpha - 2.0));
  return (gpp * g - gp * gp) / ((1.0 - alpha) * g * g);
}

double vn_value(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double s = std::min(t, 1.0 - t);
  return -s * std::log(s) - (1.0 - s) * std::log1p(-s);
}

bool is_positive_integer(double a) {
  return a >= 1.0 && a == std::floor(a);
}

}  // namespace

TestFunction make_renyi(double alpha) {
  if (!(alpha > 0.0)) throw argument_error("renyi order must be positive");
  TestFunction f;
  f.alpha = alpha;
  if (std::abs(alpha - 1.0) < 1e-9) {
    f.kind = TestFnKind::von_neumann;
    f.alpha = 1.0;
    f.eval = [](double t) { return vn_value(t); };
    f.d1 = [](double t) { return std::log((1.0 - t) / t); };
    f.d2 = [](double t) { return -1.0 / (t * (1.0 - t)); };
    f.singular_points = {0.0, 1.0};
    f.label = "halpha:1";
    return f;
  }
  f.kind = TestFnKind::renyi;
  f.eval = [alpha](double t) { return renyi_value(alpha, t); };
  f.d1 = [alpha](double t) { return renyi_d1(alpha, t); };
  f.d2 = [alpha](double t) { return renyi_d2(alpha, t); };
  // Integer orders >= 2 are real-analytic on [0,1]; fractional orders have
  // endpoint derivative singularities.
  if (!is_positive_integer(alpha)) f.singular_points = {0.0, 1.0};
  {
    std::ostringstream os;
    os.precision(17);
    os << "halpha:" << alpha;
    f.label = os.str();
  }
  return f;
}

TestFunction make_monomial(int m) {
  if (m < 1) throw argument_error("monomial power must be >= 1");
  TestFunction f;
  f.kind = TestFnKind::monomial;
  f.degree = m;
  f.eval = [m](double t) { return std::pow(t, m); };
  f.d1 = [m](double t) { return m * std::pow(t, m - 1); };
  f.d2 = [m](double t) {
    return m > 1 ? double(m) * (m - 1) * std::pow(t, m - 2) : 0.0;
  };
  f.label = "monomial:" + std::to_string(m);
  return f;
}

TestFunction make_polynomial(std::vector<double> c) {
  if (c.empty()) throw argument_error("polynomial needs at least one coefficient");
  TestFunction f;
  f.kind = TestFnKind::polynomial;
  f.coeffs = c;
  // f(t) = t * (c0 + c1 t + ...): constant term is structurally zero.
  f.eval = [c](double t) {
    double h = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) h = h * t + c[k];
    return t * h;
  };
  f.d1 = [c](double t) {
    double s = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) s = s * t + (k + 1.0) * c[k];
    return s;
  };
  f.d2 = [c](double t) {
    double s = 0.0;
    for (std::size_t k = c.size(); k-- > 1;) s = s * t + (k + 1.0) * k * c[k];
    return s;
  };
  {
    std::ostringstream os;
    os.precision(17);
    os << "poly:";
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) os << ",";
      os << c[i];
    }
    f.label = os.str();
  }
  return f;
}

TestFunction parse_test_function(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw argument_error("test function spec must be name:args, got '" + spec + "'");
  }
  const std::string name = spec.substr(0, colon);
  const std::string args = spec.substr(colon + 1);
  try {
    if (name == "halpha") return make_renyi(std::stod(args));
    if (name == "monomial") return make_monomial(std::stoi(args));
    if (name == "poly") {
      std::vector<double> c;
      std::stringstream ss(args);
      std::string tok;
      while (std::getline(ss, tok, ',')) c.push_back(std::stod(tok));
      return make_polynomial(std::move(c));
    }
  } catch (const argument_error&) {
    throw;
  } catch (const std::exception&) {
    throw argument_error("malformed test function arguments in '" + spec + "'");
  }
  throw argument_error("unknown test function '" + name + "'");
}

UCoefficient u_coefficient(const TestFunction& f, double sigma1, double sigma2,
                           int levels) {
  if (!f.eval) throw argument_error("test function has no evaluator");
  UCoefficient out;
  out.sigma1 = sigma1;
  out.sigma2 = sigma2;
  if (sigma1 == sigma2) return out;  // integrand vanishes identically

  const double f1 = f.eval(sigma1);
  const double f2 = f.eval(sigma2);
  auto integrand = [&](double t) {
    const double arg = (1.0 - t) * sigma1 + t * sigma2;
    return (f.eval(arg) - (1.0 - t) * f1 - t * f2) / (t * (1.0 - t));
  };
  QuadratureRule rule = tanh_sinh_rule(levels, 0.0, 1.0);
  NestedResult r = integrate_nested(rule, integrand);
  out.value = r.value;
  out.quadrature_error = r.error_estimate;
  return out;
}

double u_renyi_closed(double alpha) {
  if (!(alpha > 0.0)) throw argument_error("renyi order must be positive");
  return kPi * kPi * (1.0 + alpha) / (6.0 * alpha);
}

double hoelder_norm(const TestFunction& f, double y, double gamma,
                    const std::vector<double>& grid) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw argument_error("hoelder exponent must lie in [0,1]");
  }
  if (grid.empty()) throw argument_error("hoelder_norm needs a nonempty grid");
  double best = 0.0;
  for (double x : grid) {
    const double d = std::abs(x - y);
    if (d == 0.0) continue;
    const double v0 = std::abs(f.eval(x)) * std::pow(d, -gamma);
    const double v1 = std::abs(f.d1(x)) * std::pow(d, 1.0 - gamma);
    const double v2 = std::abs(f.d2(x)) * std::pow(d, 2.0 - gamma);
    best = std::max({best, v0, v1, v2});
  }
  return best;
}

namespace {

// Multiply f by a window w (with derivatives) into a new TestFunction.
TestFunction windowed(const TestFunction& f, std::function<double(double)> w,
                      std::function<double(double)> w1,
                      std::function<double(double)> w2,
                      std::vector<double> singular, const std::string& tag) {
  TestFunction g;
  g.kind = TestFnKind::custom;
  g.support_hint = f.support_hint;
  g.zero_at_zero = f.zero_at_zero;
  g.singular_points = std::move(singular);
  auto fe = f.eval, f1 = f.d1, f2 = f.d2;
  g.eval = [fe, w](double t) { return fe(t) * w(t); };
  g.d1 = [fe, f1, w, w1](double t) {
    return f1(t) * w(t) + fe(t) * w1(t);
  };
  g.d2 = [fe, f1, f2, w, w1, w2](double t) {
    return f2(t) * w(t) + 2.0 * f1(t) * w1(t) + fe(t) * w2(t);
  };
  g.label = f.label + "*" + tag;
  return g;
}

}  // namespace

std::vector<TestFunction> assumption_split(const TestFunction& f,
                                           double zeta_width) {
  if (!(zeta_width > 0.0 && zeta_width < 1.0)) {
    throw argument_error("zeta width must lie in (0,1)");
  }
  std::vector<TestFunction> out;
  if (f.singular_points.size() < 2) {
    out.push_back(f);
    TestFunction zero;
    zero.kind = TestFnKind::custom;
    zero.eval = [](double) { return 0.0; };
    zero.d1 = [](double) { return 0.0; };
    zero.d2 = [](double) { return 0.0; };
    zero.label = "zero";
    out.push_back(std::move(zero));
    return out;
  }
  const double lo = f.singular_points.front();
  const double hi = f.singular_points.back();
  const double c = 0.5 * (lo + hi);
  const double w = zeta_width;
  const double o = c - 0.5 * w;  // transition spans (o, o + w)
  auto zeta = [o, w](double t) { return smooth_step((t - o) / w); };
  auto zeta1 = [o, w](double t) { return smooth_step_d1((t - o) / w) / w; };
  auto zeta2 = [o, w](double t) { return smooth_step_d2((t - o) / w) / (w * w); };
  auto one_minus = [zeta](double t) { return 1.0 - zeta(t); };
  auto neg1 = [zeta1](double t) { return -zeta1(t); };
  auto neg2 = [zeta2](double t) { return -zeta2(t); };
  out.push_back(windowed(f, one_minus, neg1, neg2, {lo}, "lower"));
  out.push_back(windowed(f, zeta, zeta1, zeta2, {hi}, "upper"));
  return out;
}

double smooth_step(double u) {
  if (u <= 1e-8) return 0.0;  // true value below 1e-300 already
  if (u >= 1.0 - 1e-8) return 1.0;
  const double phi = 1.0 / u - 1.0 / (1.0 - u);
  if (phi >= 0.0) {
    const double e = std::exp(-phi);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(phi));
}

namespace {

// psi(1-psi) computed through exp(-|phi|); underflows harmlessly at the ends.
double step_pq(double u) {
  const double phi = 1.0 / u - 1.0 / (1.0 - u);
  const double e = std::exp(-std::abs(phi));
  return e / ((1.0 + e) * (1.0 + e));
}

}  // namespace

double smooth_step_d1(double u) {
  if (u <= 1e-8 || u >= 1.0 - 1e-8) return 0.0;
  const double A = 1.0 / (u * u) + 1.0 / ((1.0 - u) * (1.0 - u));
  return step_pq(u) * A;
}

double smooth_step_d2(double u) {
  if (u <= 1e-8 || u >= 1.0 - 1e-8) return 0.0;
  const double u2 = u * u, v = 1.0 - u, v2 = v * v;
  const double A = 1.0 / u2 + 1.0 / v2;
  const double Ap = -2.0 / (u2 * u) + 2.0 / (v2 * v);
  const double psi = smooth_step(u);
  return step_pq(u) * ((1.0 - 2.0 * psi) * A * A + Ap);
}

}  // namespace entkit
