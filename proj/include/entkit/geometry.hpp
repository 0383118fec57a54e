#pragma once

#include <optional>
#include <string>
#include <vector>

#include "entkit/errors.hpp"

namespace entkit {

// Open interval (a, b) on the line. A right-unbounded interval carries the
// IEEE +infinity sentinel in b; no finite stand-in is ever used.
struct Interval {
  double a = 0.0;
  double b = 1.0;

  bool unbounded() const;
  double length() const;  // +infinity when unbounded
};

Interval make_interval(double a, double b);

// Finite union of intervals, kept sorted by left endpoint. Construction
// requires pairwise disjoint interiors; touching closures are allowed
// unless the caller demands strict separation.
struct IntervalSet {
  std::vector<Interval> parts;

  bool strictly_separated() const;  // closures pairwise disjoint
  double min_gap() const;           // smallest gap between consecutive parts
  double total_length() const;
  bool has_unbounded() const;
  bool empty() const { return parts.empty(); }
};

IntervalSet make_interval_set(std::vector<Interval> parts,
                              bool require_separated = false);

// Two nonempty groups of intervals whose union is a valid IntervalSet.
struct Partition {
  IntervalSet first;
  IntervalSet second;
};

Partition make_partition(IntervalSet first, IntervalSet second);

// Conformal self-maps of the line used by the invariance checks.
struct MobiusMap {
  enum class Kind { translate, scale, invert };
  Kind op = Kind::translate;
  double param = 0.0;  // offset for translate, factor for scale
};

Interval apply_mobius(const Interval& iv, const MobiusMap& m);
IntervalSet apply_mobius(const IntervalSet& s, const MobiusMap& m);

// ln of the anharmonic ratio of the four endpoints, positive for intervals
// with disjoint closures. Supports one right-unbounded interval via the
// limiting form. Touching closures and overlap raise geometry_error with
// distinct kinds.
double cross_ratio_log(const Interval& i1, const Interval& i2);

// Sum of cross_ratio_log over all pairs taking one interval from each
// group, accumulated in sorted order.
double multi_cross_ratio_log(const Partition& p);

struct SetAlgebra {
  IntervalSet difference;  // i1 \ closure(i2)
  std::optional<Interval> intersection;
  IntervalSet set_union;
};

SetAlgebra set_algebra(const Interval& i1, const Interval& i2);

// Text formats: "a,b" with "inf" accepted for b; sets are
// semicolon-separated; a partition separates its groups with '|'.
Interval parse_interval(const std::string& text);
IntervalSet parse_interval_set(const std::string& text,
                               bool require_separated = false);
Partition parse_partition(const std::string& text);

std::string format_interval(const Interval& iv);
std::string format_interval_set(const IntervalSet& s);

}  // namespace entkit
