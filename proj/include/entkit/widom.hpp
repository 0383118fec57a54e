#pragma once

#include <array>

#include "entkit/geometry.hpp"
#include "entkit/testfns.hpp"

namespace entkit {

// Smoothed indicator of an interval union: 1 on the deep interior, 0 well
// outside, smooth-step collars of width epsilon at every endpoint.
// epsilon must stay below half the shortest interval and a quarter of the
// smallest gap so collars never collide.
struct MollifiedSymbol {
  IntervalSet base;
  double epsilon = 0.0;
};

MollifiedSymbol make_mollified_symbol(const IntervalSet& base, double epsilon);

double mollifier_eval(const MollifiedSymbol& sym, double x);

struct BesovValue {
  double value = 0.0;            // the seminorm itself (square root applied)
  double quadrature_error = 0.0;
};

// Homogeneous half-order seminorm of the symbol, computed by decomposing
// the plane into flat-flat (analytic), collar-flat (1D), and collar-collar
// (2D) cells. Diverges logarithmically as epsilon -> 0.
BesovValue besov_seminorm(const MollifiedSymbol& sym);

// Quadratic-combination value for a pair of separated intervals at collar
// width epsilon: only the cross cells between the two supports survive the
// cancellation, evaluated with pointwise chord-defect coefficients on the
// squared symbol levels.
double widom_combination(const Interval& i1, const Interval& i2,
                         const TestFunction& f, double epsilon);

struct RichardsonResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::array<double, 3> raw{};  // collar widths eps0, eps0/2, eps0/4
  double eps0 = 0.0;
};

// Extrapolate the linear-in-epsilon collar bias away using widths
// eps0, eps0/2, eps0/4 with eps0 set from the geometry.
RichardsonResult widom_richardson(const Interval& i1, const Interval& i2,
                                  const TestFunction& f);

}  // namespace entkit
