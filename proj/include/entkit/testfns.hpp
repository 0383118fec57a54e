#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "entkit/errors.hpp"

namespace entkit {

enum class TestFnKind { renyi, von_neumann, monomial, polynomial, custom };

// Scalar function on [0,1] together with two derivatives and the metadata
// the closed-form dispatch and the splitting machinery need.
struct TestFunction {
  TestFnKind kind = TestFnKind::custom;
  double alpha = 0.0;           // renyi order
  int degree = 0;               // monomial power
  std::vector<double> coeffs;   // polynomial: coeffs[k] multiplies t^{k+1}

  std::function<double(double)> eval;
  std::function<double(double)> d1;
  std::function<double(double)> d2;

  std::pair<double, double> support_hint{0.0, 1.0};
  bool zero_at_zero = true;
  std::vector<double> singular_points;  // endpoint derivative singularities
  std::string label;
};

// Entropy density of order alpha; alpha within 1e-9 of 1 dispatches to the
// von Neumann branch, alpha <= 0 is rejected.
TestFunction make_renyi(double alpha);
TestFunction make_monomial(int m);                     // t^m, m >= 1
TestFunction make_polynomial(std::vector<double> c);   // sum c[k] t^{k+1}

// "halpha:<a>" | "monomial:<m>" | "poly:<c1,c2,...>"
TestFunction parse_test_function(const std::string& spec);

struct UCoefficient {
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  double value = 0.0;
  double quadrature_error = 0.0;
};

// Chord-defect functional of f between the levels sigma1 and sigma2,
// integrated against dt/(t(1-t)). Coincident levels give exactly zero.
UCoefficient u_coefficient(const TestFunction& f, double sigma1, double sigma2,
                           int levels = 8);

// Closed form of the order-alpha coefficient between levels 0 and 1.
double u_renyi_closed(double alpha);

// Grid supremum of |f^(k)(x)| |x-y|^(k-gamma) over k = 0,1,2. Monotone
// under grid refinement; always a lower bound for the true supremum.
double hoelder_norm(const TestFunction& f, double y, double gamma,
                    const std::vector<double>& grid);

// Split f into smooth-partition pieces localized at its singular points.
// Two or more singular points give one piece per extreme point with a
// transition of the given width between them; otherwise {f, 0} is returned.
std::vector<TestFunction> assumption_split(const TestFunction& f,
                                           double zeta_width);

// C-infinity step: 0 for u <= 0, 1 for u >= 1, strictly increasing between.
double smooth_step(double u);
double smooth_step_d1(double u);
double smooth_step_d2(double u);

}  // namespace entkit
