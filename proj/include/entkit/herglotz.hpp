#pragma once

#include <utility>

#include "entkit/errors.hpp"

namespace entkit {

// Boundary phase density of the order-alpha entropy kernel, alpha in (0,1),
// lambda >= 1/2. Values lie in [0, alpha/2].
double f_alpha(double alpha, double lambda);

// Additive constant of the spectral-average representation, alpha in (0,1].
double b_alpha(double alpha);

// (R_z(lambda), R_z(-lambda)) for the resolvent R_z(x) = 1/(z - 1/2 + x),
// z in (0,1), lambda >= 1/2. Evaluation at a pole is rejected.
std::pair<double, double> resolvent_pair(double z, double lambda);

// Entropy density of order alpha recovered from its spectral-average
// representation; independent substitutions of the half-line integral must
// agree to 1e-8 or the evaluation aborts. Supported range: alpha in
// [0.05, 1), t in (0,1).
double herglotz_eval(double alpha, double t);

// Same representation specialized to the von Neumann density.
double von_neumann_eval(double t);

}  // namespace entkit
