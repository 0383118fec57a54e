#include <doctest.h>

#include <cmath>
#include <limits>
#include <string>

#include "entkit/closedform.hpp"
#include "entkit/errors.hpp"
#include "entkit/geometry.hpp"
#include "entkit/testfns.hpp"

using namespace entkit;

namespace {
constexpr double kPi = 3.14159265358979323846;
const double kLn43 = std::log(4.0 / 3.0);
const double kInf = std::numeric_limits<double>::infinity();
}  // namespace

TEST_CASE("chord-defect dispatch hits the closed values") {
  CHECK(u_value(make_renyi(1.0)) ==
        doctest::Approx(kPi * kPi / 3.0).epsilon(1e-14));
  CHECK(u_value(make_renyi(2.0)) ==
        doctest::Approx(kPi * kPi / 4.0).epsilon(1e-14));
  CHECK(u_value(make_monomial(2)) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(u_value(make_monomial(5)) ==
        doctest::Approx(-25.0 / 12.0).epsilon(1e-14));
  CHECK(u_value(make_polynomial({0.0, 3.0, -2.0})) ==
        doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("two-interval trace reference value") {
  const ClosedFormResult r = two_interval_trace(
      make_interval(0.0, 1.0), make_interval(2.0, 3.0), make_renyi(1.0));
  CHECK(r.value == doctest::Approx(kLn43 / 6.0).epsilon(1e-13));
  CHECK(r.formula_id == FormulaId::two_interval);
  CHECK_FALSE(r.conjectural);
  CHECK_FALSE(r.inputs.empty());
}

TEST_CASE("entropy-order form coincides with the direct trace") {
  for (double alpha : {0.5, 1.0, 2.0, 3.0}) {
    const Partition p =
        make_partition(make_interval_set({make_interval(0.0, 1.0)}),
                       make_interval_set({make_interval(2.0, 3.0)}));
    const double direct = two_interval_trace(
        make_interval(0.0, 1.0), make_interval(2.0, 3.0), make_renyi(alpha))
        .value;
    CHECK(renyi_ee(p, alpha).value ==
          doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("partition form reduces to the pair form") {
  const Partition p =
      make_partition(make_interval_set({make_interval(0.0, 1.0)}),
                     make_interval_set({make_interval(2.0, 3.0)}));
  const TestFunction h2 = make_renyi(2.0);
  CHECK(n_interval_trace(p, h2).value ==
        doctest::Approx(two_interval_trace(make_interval(0.0, 1.0),
                                           make_interval(2.0, 3.0), h2)
                            .value));
  // three intervals: cross pairs only
  const Partition p3 = make_partition(
      make_interval_set({make_interval(0.0, 1.0), make_interval(4.0, 5.0)}),
      make_interval_set({make_interval(2.0, 3.0)}));
  CHECK(renyi_ee(p3, 1.0).value ==
        doctest::Approx(kLn43 / 3.0).epsilon(1e-13));
}

TEST_CASE("closed forms are mobius invariant") {
  const TestFunction f = make_renyi(0.5);
  const Interval i1 = make_interval(1.0, 2.0);
  const Interval i2 = make_interval(3.0, 4.5);
  const double base = two_interval_trace(i1, i2, f).value;
  for (const MobiusMap m : {MobiusMap{MobiusMap::Kind::translate, -9.0},
                            MobiusMap{MobiusMap::Kind::scale, 4.0},
                            MobiusMap{MobiusMap::Kind::scale, -1.5},
                            MobiusMap{MobiusMap::Kind::invert, 0.0}}) {
    CHECK(two_interval_trace(apply_mobius(i1, m), apply_mobius(i2, m), f)
              .value == doctest::Approx(base).epsilon(1e-11));
  }
}

TEST_CASE("unbounded partner uses the limiting cross ratio") {
  const ClosedFormResult r = two_interval_trace(
      make_interval(0.0, 1.0), make_interval(2.0, kInf), make_renyi(1.0));
  CHECK(r.value == doctest::Approx(std::log(2.0) / 6.0).epsilon(1e-13));
}

TEST_CASE("overlap form value and flags") {
  const TestFunction h1 = make_renyi(1.0);
  const ClosedFormResult r =
      intersecting_trace(make_interval(0.0, 2.0), make_interval(1.0, 3.0), h1);
  // |I1||I2| / (|cap||cup|) = 2*2/(1*3)
  CHECK(r.value == doctest::Approx(kLn43 / 6.0).epsilon(1e-13));
  CHECK(r.conjectural);
  CHECK(r.formula_id == FormulaId::intersecting);

  // argument order cannot matter
  const ClosedFormResult swapped =
      intersecting_trace(make_interval(1.0, 3.0), make_interval(0.0, 2.0), h1);
  CHECK(swapped.value == doctest::Approx(r.value));

  // polynomial symbols carry a proof, not a conjecture
  CHECK_FALSE(intersecting_trace(make_interval(0.0, 2.0),
                                 make_interval(1.0, 3.0), make_monomial(2))
                  .conjectural);

  const ClosedFormResult ray = intersecting_trace(
      make_interval(0.0, 2.0), make_interval(1.0, kInf), make_monomial(2));
  // limiting ratio |I1|/|cap| = 2
  CHECK(ray.value ==
        doctest::Approx(-std::log(2.0) / (2.0 * kPi * kPi)).epsilon(1e-13));
}

TEST_CASE("overlap form rejects degenerate arrangements") {
  const TestFunction h1 = make_renyi(1.0);
  try {
    intersecting_trace(make_interval(0.0, 1.0), make_interval(0.0, 2.0), h1);
    CHECK(false);
  } catch (const geometry_error& e) {
    CHECK(e.which() == geometry_error::kind::unordered);
  }
  try {
    intersecting_trace(make_interval(0.0, 3.0), make_interval(1.0, 2.0), h1);
    CHECK(false);
  } catch (const geometry_error& e) {
    CHECK(e.which() == geometry_error::kind::contained);
  }
  try {
    intersecting_trace(make_interval(0.0, 1.0), make_interval(2.0, 3.0), h1);
    CHECK(false);
  } catch (const geometry_error& e) {
    CHECK(e.which() == geometry_error::kind::unordered);
  }
}

TEST_CASE("separation expansion at a large gap") {
  const SeparationExpansion e = separation_expansion(
      make_interval(0.0, 1.0), make_interval(0.0, 1.0), 100.0, 1.0);
  CHECK(e.leading == doctest::Approx(1e-4 / 6.0).epsilon(1e-12));
  const double want_exact =
      (1.0 / 6.0) * std::log(101.0 * 101.0 / (100.0 * 102.0));
  CHECK(e.exact == doctest::Approx(want_exact).epsilon(1e-12));
  CHECK(e.exact / e.leading == doctest::Approx(1.0).epsilon(0.05));
  CHECK(e.formula_id == FormulaId::asymptotic_bounded);

  const SeparationExpansion ray = separation_expansion(
      make_interval(0.0, 1.0), make_interval(0.0, kInf), 50.0, 1.0);
  CHECK(ray.exact == doctest::Approx(std::log1p(1.0 / 50.0) / 6.0).epsilon(1e-12));
  CHECK(ray.leading == doctest::Approx(1.0 / 300.0).epsilon(1e-12));
  CHECK(ray.formula_id == FormulaId::asymptotic_unbounded);

  CHECK_THROWS_AS(separation_expansion(make_interval(0.0, 1.0),
                                       make_interval(0.0, 1.0), -1.0, 1.0),
                  argument_error);
}

TEST_CASE("entropy-order partition form requires a bounded first group") {
  const Partition p =
      make_partition(make_interval_set({make_interval(0.0, kInf)}),
                     make_interval_set({make_interval(-3.0, -2.0)}));
  CHECK_THROWS_AS(renyi_ee(p, 1.0), argument_error);
}

TEST_CASE("formula names are distinct") {
  CHECK(std::string(formula_id_name(FormulaId::two_interval)) !=
        formula_id_name(FormulaId::n_interval));
  CHECK(std::string(formula_id_name(FormulaId::intersecting)) !=
        formula_id_name(FormulaId::asymptotic_unbounded));
}
