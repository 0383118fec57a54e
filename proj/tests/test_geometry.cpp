#include <doctest.h>

#include <cmath>
#include <limits>

#include "entkit/errors.hpp"
#include "entkit/geometry.hpp"

using namespace entkit;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("interval construction and validation") {
  const Interval iv = make_interval(1.0, 2.5);
  CHECK(iv.length() == doctest::Approx(1.5));
  CHECK_FALSE(iv.unbounded());

  const Interval ray = make_interval(3.0, kInf);
  CHECK(ray.unbounded());
  CHECK(std::isinf(ray.length()));

  CHECK_THROWS_AS(make_interval(2.0, 2.0), geometry_error);
  CHECK_THROWS_AS(make_interval(3.0, 1.0), geometry_error);
  CHECK_THROWS_AS(make_interval(kInf, kInf), argument_error);
}

TEST_CASE("interval set ordering and separation") {
  IntervalSet s = make_interval_set(
      {make_interval(4.0, 5.0), make_interval(0.0, 1.0)});
  CHECK(s.parts[0].a == 0.0);
  CHECK(s.parts[1].a == 4.0);
  CHECK(s.min_gap() == doctest::Approx(3.0));
  CHECK(s.total_length() == doctest::Approx(2.0));
  CHECK(s.strictly_separated());

  CHECK_THROWS_AS(
      make_interval_set({make_interval(0.0, 2.0), make_interval(1.0, 3.0)}),
      geometry_error);

  // touching closures pass the lax constructor, fail the strict one
  const std::vector<Interval> touching{make_interval(0.0, 1.0),
                                       make_interval(1.0, 2.0)};
  CHECK_FALSE(make_interval_set(touching).strictly_separated());
  try {
    make_interval_set(touching, true);
    CHECK(false);
  } catch (const geometry_error& e) {
    CHECK(e.which() == geometry_error::kind::touching);
  }
}

TEST_CASE("overlap and touching raise distinct kinds") {
  try {
    cross_ratio_log(make_interval(0.0, 2.0), make_interval(1.0, 3.0));
    CHECK(false);
  } catch (const geometry_error& e) {
    CHECK(e.which() == geometry_error::kind::overlapping);
  }
  try {
    cross_ratio_log(make_interval(0.0, 1.0), make_interval(1.0, 2.0));
    CHECK(false);
  } catch (const geometry_error& e) {
    CHECK(e.which() == geometry_error::kind::touching);
  }
}

TEST_CASE("cross-ratio log reference values") {
  CHECK(cross_ratio_log(make_interval(0.0, 1.0), make_interval(2.0, 3.0)) ==
        doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-14));
  // argument order cannot matter
  CHECK(cross_ratio_log(make_interval(2.0, 3.0), make_interval(0.0, 1.0)) ==
        doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-14));
  // right-unbounded second interval: limiting form ln|r.a-l.a|/|r.a-l.b|
  CHECK(cross_ratio_log(make_interval(0.0, 1.0), make_interval(2.0, kInf)) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("cross-ratio log vanishes at infinite separation") {
  const Interval i1 = make_interval(0.0, 1.0);
  double prev = 1.0;
  for (double r : {1e2, 1e3, 1e4}) {
    const double v =
        cross_ratio_log(i1, make_interval(1.0 + r, 2.0 + r));
    // leading term L1 L2 / r^2
    CHECK(v * r * r == doctest::Approx(1.0).epsilon(0.05));
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("mobius maps act correctly on intervals") {
  const Interval iv = make_interval(1.0, 2.0);
  const Interval t = apply_mobius(iv, {MobiusMap::Kind::translate, 3.0});
  CHECK(t.a == doctest::Approx(4.0));
  CHECK(t.b == doctest::Approx(5.0));

  const Interval neg = apply_mobius(iv, {MobiusMap::Kind::scale, -2.0});
  CHECK(neg.a == doctest::Approx(-4.0));
  CHECK(neg.b == doctest::Approx(-2.0));

  const Interval inv = apply_mobius(iv, {MobiusMap::Kind::invert, 0.0});
  CHECK(inv.a == doctest::Approx(0.5));
  CHECK(inv.b == doctest::Approx(1.0));

  // inversion needs a strictly positive left endpoint
  CHECK_THROWS_AS(
      apply_mobius(make_interval(-1.0, 2.0), {MobiusMap::Kind::invert, 0.0}),
      geometry_error);

  const Interval ray_inv =
      apply_mobius(make_interval(2.0, kInf), {MobiusMap::Kind::invert, 0.0});
  CHECK(ray_inv.a == doctest::Approx(0.0));
  CHECK(ray_inv.b == doctest::Approx(0.5));
}

TEST_CASE("cross-ratio log is a mobius invariant") {
  const Interval i1 = make_interval(1.0, 2.0);
  const Interval i2 = make_interval(3.0, 5.0);
  const double base = cross_ratio_log(i1, i2);
  for (const MobiusMap m : {MobiusMap{MobiusMap::Kind::translate, 11.0},
                            MobiusMap{MobiusMap::Kind::scale, 7.0},
                            MobiusMap{MobiusMap::Kind::scale, -3.0},
                            MobiusMap{MobiusMap::Kind::invert, 0.0}}) {
    CHECK(cross_ratio_log(apply_mobius(i1, m), apply_mobius(i2, m)) ==
          doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("partition cross-ratio sum counts cross pairs only") {
  const Partition p = make_partition(
      make_interval_set({make_interval(0.0, 1.0), make_interval(4.0, 5.0)}),
      make_interval_set({make_interval(2.0, 3.0)}));
  const double expect =
      cross_ratio_log(make_interval(0.0, 1.0), make_interval(2.0, 3.0)) +
      cross_ratio_log(make_interval(4.0, 5.0), make_interval(2.0, 3.0));
  CHECK(multi_cross_ratio_log(p) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("partition construction rejects bad groups") {
  CHECK_THROWS_AS(make_partition(IntervalSet{}, make_interval_set(
                                                    {make_interval(0.0, 1.0)})),
                  geometry_error);
  CHECK_THROWS_AS(
      make_partition(make_interval_set({make_interval(0.0, 2.0)}),
                     make_interval_set({make_interval(1.0, 3.0)})),
      geometry_error);
}

TEST_CASE("set algebra splits overlapping intervals") {
  const SetAlgebra alg =
      set_algebra(make_interval(0.0, 2.0), make_interval(1.0, 3.0));
  REQUIRE(alg.intersection.has_value());
  CHECK(alg.intersection->a == doctest::Approx(1.0));
  CHECK(alg.intersection->b == doctest::Approx(2.0));
  REQUIRE(alg.difference.parts.size() == 1);
  CHECK(alg.difference.parts[0].a == doctest::Approx(0.0));
  CHECK(alg.difference.parts[0].b == doctest::Approx(1.0));
  REQUIRE(alg.set_union.parts.size() == 1);
  CHECK(alg.set_union.parts[0].b == doctest::Approx(3.0));

  const SetAlgebra gap =
      set_algebra(make_interval(0.0, 1.0), make_interval(2.0, 3.0));
  CHECK_FALSE(gap.intersection.has_value());
  CHECK(gap.set_union.parts.size() == 2);
}

TEST_CASE("parsing and formatting round-trip") {
  const Interval iv = parse_interval("0.25,1.75");
  CHECK(iv.a == doctest::Approx(0.25));
  CHECK(iv.b == doctest::Approx(1.75));
  CHECK(parse_interval("2,inf").unbounded());
  CHECK_THROWS_AS(parse_interval("junk"), argument_error);
  CHECK_THROWS_AS(parse_interval("1"), argument_error);

  const IntervalSet s = parse_interval_set("0,1;4,5;2,3");
  CHECK(s.parts.size() == 3);
  CHECK(s.parts[1].a == doctest::Approx(2.0));

  const Partition p = parse_partition("0,1;4,5|2,3");
  CHECK(p.first.parts.size() == 2);
  CHECK(p.second.parts.size() == 1);
  CHECK_THROWS_AS(parse_partition("0,1"), argument_error);

  const Interval back = parse_interval(format_interval(iv));
  CHECK(back.a == iv.a);
  CHECK(back.b == iv.b);
  CHECK(parse_interval_set(format_interval_set(s)).parts.size() == 3);
}
