#pragma once

#include <functional>
#include <vector>

#include "entkit/geometry.hpp"

namespace entkit {

enum class QuadScheme { gauss_legendre, tanh_sinh, pv_corrected };

struct QuadratureRule {
  std::vector<double> nodes;    // strictly increasing, strictly inside (a,b)
  std::vector<double> weights;  // positive; sum to b-a for finite domains
  QuadScheme scheme = QuadScheme::gauss_legendre;
  double a = 0.0;
  double b = 1.0;

  std::size_t size() const { return nodes.size(); }
};

// Gauss-Legendre rule on (a, b). Nodes from Newton iteration seeded with
// Chebyshev angles; failure to converge within 100 steps is a hard error.
QuadratureRule gauss_legendre(int n, double a, double b);

// Doubly-exponential rule on (a, b); step 2^-levels, trimmed to nodes
// strictly inside the interval. Handles integrable endpoint singularities.
QuadratureRule tanh_sinh_rule(int levels, double a, double b);

double integrate(const QuadratureRule& rule,
                 const std::function<double(double)>& f);

// Integrate with a nested coarse estimate (every other trapezoid level for
// tanh-sinh, half-order rule for Gauss-Legendre) to report a quadrature
// error proxy.
struct NestedResult {
  double value = 0.0;
  double error_estimate = 0.0;
};
NestedResult integrate_nested(const QuadratureRule& rule,
                              const std::function<double(double)>& f);

// Maps taking a base rule on (0,1) onto (1/2, +inf).
enum class SemiInfiniteMap { rational, exponential };

QuadratureRule semi_infinite_rule(SemiInfiniteMap map, int n);

struct SemiInfiniteResult {
  double value = 0.0;
  bool converged = true;      // false flags non-decaying integrands
  double tail_estimate = 0.0; // disagreement between n and n/2 points
};
SemiInfiniteResult semi_infinite_integrate(
    const std::function<double(double)>& f, SemiInfiniteMap map, int n);

// Rule for principal-value evaluation of finite Hilbert transforms
// (integral of f(y)/(x-y) over the interval). n >= 8.
QuadratureRule pv_rule(const Interval& iv, int n);

// Subtract-and-add principal value at interior x. When x lands on a node,
// the removable term is replaced by -f'(x); df may be empty, in which case
// a central difference is used.
double pv_apply(const QuadratureRule& rule,
                const std::function<double(double)>& f,
                const std::function<double(double)>& df, double x);

// Node count that resolves e^{i k x} on a length-L interval with margin.
int oscillatory_node_count(double k, double length);

}  // namespace entkit
