#include <doctest.h>

#include <cmath>

#include "entkit/errors.hpp"
#include "entkit/quad.hpp"

using namespace entkit;

TEST_CASE("gauss-legendre small orders are exact") {
  const QuadratureRule r2 = gauss_legendre(2, -1.0, 1.0);
  REQUIRE(r2.size() == 2);
  CHECK(r2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(r2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-14));

  const QuadratureRule r1 = gauss_legendre(1, 2.0, 6.0);
  CHECK(r1.nodes[0] == doctest::Approx(4.0));
  CHECK(r1.weights[0] == doctest::Approx(4.0));

  // n = 2 integrates cubics exactly
  const QuadratureRule r = gauss_legendre(2, 0.0, 1.0);
  CHECK(integrate(r, [](double x) { return x * x * x; }) ==
        doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("gauss-legendre weights sum to the interval length") {
  for (int n : {5, 64, 301}) {
    const QuadratureRule r = gauss_legendre(n, -2.0, 7.0);
    double s = 0.0;
    for (double w : r.weights) s += w;
    CHECK(s == doctest::Approx(9.0).epsilon(1e-13));
    for (std::size_t i = 1; i < r.size(); ++i) {
      CHECK(r.nodes[i] > r.nodes[i - 1]);
    }
  }
}

TEST_CASE("gauss-legendre resolves oscillation") {
  const QuadratureRule r = gauss_legendre(60, 0.0, 1.0);
  const double got = integrate(r, [](double x) { return std::sin(50.0 * x); });
  const double want = (1.0 - std::cos(50.0)) / 50.0;
  CHECK(got == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("tanh-sinh absorbs endpoint singularities") {
  const QuadratureRule r = tanh_sinh_rule(8, 0.0, 1.0);
  CHECK(integrate(r, [](double x) { return std::log(x); }) ==
        doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(integrate(r, [](double x) { return 1.0 / std::sqrt(x); }) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(tanh_sinh_rule(2, 0.0, 1.0), argument_error);
}

TEST_CASE("nested integration reports a sane error proxy") {
  const QuadratureRule r = tanh_sinh_rule(7, 0.0, 1.0);
  const NestedResult n =
      integrate_nested(r, [](double x) { return std::exp(x); });
  const double truth = std::exp(1.0) - 1.0;
  CHECK(n.value == doctest::Approx(truth).epsilon(1e-12));
  CHECK(n.error_estimate >= 0.0);
  CHECK(n.error_estimate < 1e-6);

  const QuadratureRule g = gauss_legendre(24, 0.0, 1.0);
  const NestedResult m =
      integrate_nested(g, [](double x) { return std::cos(3.0 * x); });
  CHECK(m.value == doctest::Approx(std::sin(3.0) / 3.0).epsilon(1e-13));
}

TEST_CASE("semi-infinite maps integrate decaying tails") {
  for (SemiInfiniteMap map :
       {SemiInfiniteMap::rational, SemiInfiniteMap::exponential}) {
    const SemiInfiniteResult inv2 = semi_infinite_integrate(
        [](double x) { return 1.0 / (x * x); }, map, 200);
    CHECK(inv2.converged);
    CHECK(inv2.value == doctest::Approx(2.0).epsilon(1e-8));

    const SemiInfiniteResult expo = semi_infinite_integrate(
        [](double x) { return std::exp(-x); }, map, 200);
    CHECK(expo.converged);
    CHECK(expo.value == doctest::Approx(std::exp(-0.5)).epsilon(1e-8));
  }
}

TEST_CASE("non-decaying integrand is flagged") {
  const SemiInfiniteResult flat =
      semi_infinite_integrate([](double) { return 1.0; },
                              SemiInfiniteMap::rational, 200);
  CHECK_FALSE(flat.converged);
}

namespace {
// PV integral of y^k/(x-y) over (a,b) via I_k = x I_{k-1} - (b^k - a^k)/k.
double pv_monomial(double a, double b, double x, int k) {
  double value = std::log((x - a) / (b - x));
  for (int j = 1; j <= k; ++j) {
    value = x * value - (std::pow(b, j) - std::pow(a, j)) / j;
  }
  return value;
}
}  // namespace

TEST_CASE("principal value evaluator matches the monomial recurrence") {
  const Interval iv{0.0, 1.0};
  const QuadratureRule r = pv_rule(iv, 80);
  CHECK(r.scheme == QuadScheme::pv_corrected);

  auto one = [](double) { return 1.0; };
  auto done = [](double) { return 0.0; };
  CHECK(pv_apply(r, one, done, 0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(pv_apply(r, one, done, 0.25) ==
        doctest::Approx(-std::log(3.0)).epsilon(1e-10));

  const Interval sym{-1.0, 1.0};
  const QuadratureRule rs = pv_rule(sym, 80);
  auto lin = [](double y) { return y; };
  auto dlin = [](double) { return 1.0; };
  CHECK(pv_apply(rs, lin, dlin, 0.0) == doctest::Approx(-2.0).epsilon(1e-10));

  const Interval gen{0.2, 1.7};
  const QuadratureRule rg = pv_rule(gen, 120);
  auto cubic = [](double y) { return y * y * y; };
  auto dcubic = [](double y) { return 3.0 * y * y; };
  CHECK(pv_apply(rg, cubic, dcubic, 0.9) ==
        doctest::Approx(pv_monomial(0.2, 1.7, 0.9, 3)).epsilon(1e-8));

  // x exactly on a node: the removable term switches to -f'(x)
  const double xn = rg.nodes[40];
  CHECK(pv_apply(rg, cubic, dcubic, xn) ==
        doctest::Approx(pv_monomial(0.2, 1.7, xn, 3)).epsilon(1e-6));
  // finite-difference fallback when df is absent
  CHECK(pv_apply(rg, cubic, nullptr, xn) ==
        doctest::Approx(pv_monomial(0.2, 1.7, xn, 3)).epsilon(1e-5));

  CHECK_THROWS_AS(pv_rule(iv, 4), argument_error);
}

TEST_CASE("oscillatory node counts scale with the phase") {
  const int base = oscillatory_node_count(10.0, 1.0);
  CHECK(base >= 16);
  CHECK(oscillatory_node_count(100.0, 1.0) > base);
  // invariant under trading cutoff against length
  CHECK(oscillatory_node_count(50.0, 2.0) == oscillatory_node_count(100.0, 1.0));
}
