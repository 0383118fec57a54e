#include "entkit/closedform.hpp"

#include <cmath>
#include <sstream>

namespace entkit {

namespace {

constexpr double kPi = 3.14159265358979323846;

double harmonic(int n) {
  double h = 0.0;
  for (int k = 1; k <= n; ++k) h += 1.0 / k;
  return h;
}

std::string echo(const Interval& i1, const Interval& i2,
                 const TestFunction& f) {
  std::ostringstream os;
  os << "i1=" << format_interval(i1) << " i2=" << format_interval(i2)
     << " f=" << f.label;
  return os.str();
}

bool polynomial_kind(const TestFunction& f) {
  return f.kind == TestFnKind::monomial || f.kind == TestFnKind::polynomial;
}

}  // namespace

const char* formula_id_name(FormulaId id) {
  switch (id) {
    case FormulaId::two_interval: return "two_interval";
    case FormulaId::n_interval: return "n_interval";
    case FormulaId::renyi_corollary: return "renyi_corollary";
    case FormulaId::intersecting: return "intersecting";
    case FormulaId::asymptotic_bounded: return "asymptotic_bounded";
    case FormulaId::asymptotic_unbounded: return "asymptotic_unbounded";
  }
  return "unknown";
}

double u_value(const TestFunction& f) {
  switch (f.kind) {
    case TestFnKind::renyi:
      return u_renyi_closed(f.alpha);
    case TestFnKind::von_neumann:
      return kPi * kPi / 3.0;
    case TestFnKind::monomial:
      return -harmonic(f.degree - 1);
    case TestFnKind::polynomial: {
      // Linear in f: each t^{k+1} contributes -H_k.
      double s = 0.0;
      for (std::size_t k = 0; k < f.coeffs.size(); ++k) {
        s += f.coeffs[k] * (-harmonic(static_cast<int>(k)));
      }
      return s;
    }
    case TestFnKind::custom:
      return u_coefficient(f, 0.0, 1.0).value;
  }
  throw argument_error("unknown test function kind");
}

ClosedFormResult two_interval_trace(const Interval& i1, const Interval& i2,
                                    const TestFunction& f) {
  ClosedFormResult out;
  out.formula_id = FormulaId::two_interval;
  out.value = u_value(f) / (2.0 * kPi * kPi) * cross_ratio_log(i1, i2);
  out.inputs = echo(i1, i2, f);
  return out;
}

ClosedFormResult n_interval_trace(const Partition& p, const TestFunction& f) {
  ClosedFormResult out;
  out.formula_id = FormulaId::n_interval;
  out.value = u_value(f) / (2.0 * kPi * kPi) * multi_cross_ratio_log(p);
  out.inputs = "p1=" + format_interval_set(p.first) +
               " p2=" + format_interval_set(p.second) + " f=" + f.label;
  return out;
}

ClosedFormResult renyi_ee(const Partition& p, double alpha) {
  if (!(alpha > 0.0)) throw argument_error("entropy order must be positive");
  if (p.first.has_unbounded()) {
    throw argument_error("first partition group must be bounded");
  }
  ClosedFormResult out;
  out.formula_id = FormulaId::renyi_corollary;
  out.value = (1.0 + alpha) / (12.0 * alpha) * multi_cross_ratio_log(p);
  std::ostringstream os;
  os.precision(17);
  os << "p1=" << format_interval_set(p.first)
     << " p2=" << format_interval_set(p.second) << " alpha=" << alpha;
  out.inputs = os.str();
  return out;
}

ClosedFormResult intersecting_trace(const Interval& i1, const Interval& i2,
                                    const TestFunction& f) {
  const Interval& l = (i1.a <= i2.a) ? i1 : i2;
  const Interval& r = (i1.a <= i2.a) ? i2 : i1;
  if (l.a == r.a || !(r.a < l.b)) {
    throw geometry_error(geometry_error::kind::unordered,
                         "intervals must properly overlap");
  }
  if (!(l.b < r.b)) {
    throw geometry_error(geometry_error::kind::contained,
                         "one interval contains the other");
  }

  ClosedFormResult out;
  out.formula_id = FormulaId::intersecting;
  out.conjectural = !polynomial_kind(f);
  const double cap = l.b - r.a;
  double ratio_log;
  if (r.unbounded()) {
    // |I2| and |union| diverge together; their ratio drops out.
    ratio_log = std::log(l.length() / cap);
  } else {
    const double cup = r.b - l.a;
    ratio_log = std::log(l.length() * r.length() / (cap * cup));
  }
  out.value = u_value(f) / (2.0 * kPi * kPi) * ratio_log;
  out.inputs = echo(i1, i2, f);
  return out;
}

SeparationExpansion separation_expansion(const Interval& i1,
                                         const Interval& i2_template, double r,
                                         double alpha) {
  if (!(r > 0.0) || !std::isfinite(r)) throw argument_error("separation must be positive and finite");
  if (!(alpha > 0.0)) throw argument_error("entropy order must be positive");
  if (i1.unbounded()) throw argument_error("first interval must be bounded");

  const double coef = (1.0 + alpha) / (12.0 * alpha);
  const double L1 = i1.length();
  SeparationExpansion out;
  if (i2_template.unbounded()) {
    out.formula_id = FormulaId::asymptotic_unbounded;
    // I2 = (i1.b + r, inf)
    out.exact = coef * std::log1p(L1 / r);
    out.leading = coef * L1 / r;
    return out;
  }
  out.formula_id = FormulaId::asymptotic_bounded;
  const double L2 = i2_template.length();
  // I2 = (i1.b + r, i1.b + r + L2): four-point ratio in gap form.
  out.exact = coef * std::log((L1 + r) * (L2 + r) / (r * (L1 + L2 + r)));
  out.leading = coef * L1 * L2 / (r * r);
  return out;
}

}  // namespace entkit
