#include "entkit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace entkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_finite_left(double a) {
  if (!std::isfinite(a)) {
    throw argument_error("interval left endpoint must be finite");
  }
}

}  // namespace

bool Interval::unbounded() const { return std::isinf(b); }

double Interval::length() const { return unbounded() ? kInf : b - a; }

Interval make_interval(double a, double b) {
  check_finite_left(a);
  if (std::isnan(b)) throw argument_error("interval right endpoint is NaN");
  if (b == -kInf) throw argument_error("interval right endpoint is -inf");
  if (!(a < b)) {
    throw geometry_error(geometry_error::kind::unordered,
                         "interval endpoints must satisfy a < b");
  }
  return Interval{a, b};
}

bool IntervalSet::strictly_separated() const {
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (!(parts[i].a > parts[i - 1].b)) return false;
  }
  return true;
}

double IntervalSet::min_gap() const {
  double g = kInf;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    g = std::min(g, parts[i].a - parts[i - 1].b);
  }
  return g;
}

double IntervalSet::total_length() const {
  double s = 0.0;
  for (const auto& iv : parts) s += iv.length();
  return s;
}

bool IntervalSet::has_unbounded() const {
  return !parts.empty() && parts.back().unbounded();
}

IntervalSet make_interval_set(std::vector<Interval> parts,
                              bool require_separated) {
  for (const auto& iv : parts) {
    // Re-validate; callers may aggregate raw structs.
    (void)make_interval(iv.a, iv.b);
  }
  std::sort(parts.begin(), parts.end(),
            [](const Interval& x, const Interval& y) { return x.a < y.a; });
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i].a < parts[i - 1].b) {
      throw geometry_error(geometry_error::kind::overlapping,
                           "interval interiors overlap");
    }
    if (require_separated && parts[i].a == parts[i - 1].b) {
      throw geometry_error(geometry_error::kind::touching,
                           "interval closures touch; strict separation required");
    }
  }
  return IntervalSet{std::move(parts)};
}

Partition make_partition(IntervalSet first, IntervalSet second) {
  if (first.empty() || second.empty()) {
    throw geometry_error(geometry_error::kind::empty,
                         "partition groups must be nonempty");
  }
  std::vector<Interval> all = first.parts;
  all.insert(all.end(), second.parts.begin(), second.parts.end());
  // Validates global disjointness of the union.
  (void)make_interval_set(std::move(all));
  return Partition{std::move(first), std::move(second)};
}

Interval apply_mobius(const Interval& iv, const MobiusMap& m) {
  switch (m.op) {
    case MobiusMap::Kind::translate: {
      if (!std::isfinite(m.param)) throw argument_error("translation offset must be finite");
      return Interval{iv.a + m.param, iv.b + m.param};
    }
    case MobiusMap::Kind::scale: {
      double s = m.param;
      if (!std::isfinite(s) || s == 0.0) throw argument_error("scale factor must be finite and nonzero");
      if (s > 0.0) return Interval{s * iv.a, s * iv.b};
      if (iv.unbounded()) {
        throw geometry_error(geometry_error::kind::unbounded,
                             "negative scale of an unbounded interval leaves the representable family");
      }
      return Interval{s * iv.b, s * iv.a};  // orientation reversed
    }
    case MobiusMap::Kind::invert: {
      if (!(iv.a > 0.0)) {
        throw geometry_error(geometry_error::kind::nonpositive,
                             "inversion requires all endpoints positive");
      }
      if (iv.unbounded()) return Interval{0.0, 1.0 / iv.a};
      return Interval{1.0 / iv.b, 1.0 / iv.a};
    }
  }
  throw argument_error("unknown mobius map kind");
}

IntervalSet apply_mobius(const IntervalSet& s, const MobiusMap& m) {
  std::vector<Interval> out;
  out.reserve(s.parts.size());
  for (const auto& iv : s.parts) out.push_back(apply_mobius(iv, m));
  return make_interval_set(std::move(out));
}

double cross_ratio_log(const Interval& i1, const Interval& i2) {
  if (i1.unbounded() && i2.unbounded()) {
    throw geometry_error(geometry_error::kind::overlapping,
                         "two right-unbounded intervals overlap");
  }
  const Interval& l = (i1.a <= i2.a) ? i1 : i2;
  const Interval& r = (i1.a <= i2.a) ? i2 : i1;
  if (r.a < l.b) {
    throw geometry_error(geometry_error::kind::overlapping,
                         "intervals overlap");
  }
  if (r.a == l.b) {
    throw geometry_error(geometry_error::kind::touching,
                         "interval closures touch");
  }
  double v;
  if (r.unbounded()) {
    // Limit of the four-point ratio as r.b -> +inf.
    v = std::log(std::abs(r.a - l.a) / std::abs(r.a - l.b));
  } else {
    v = std::log(std::abs(r.a - l.a) * std::abs(r.b - l.b) /
                 (std::abs(r.a - l.b) * std::abs(r.b - l.a)));
  }
  return v;
}

double multi_cross_ratio_log(const Partition& p) {
  double s = 0.0;
  for (const auto& a : p.first.parts) {
    for (const auto& b : p.second.parts) {
      s += cross_ratio_log(a, b);
    }
  }
  return s;
}

SetAlgebra set_algebra(const Interval& i1, const Interval& i2) {
  SetAlgebra out;
  const double lo = std::max(i1.a, i2.a);
  const double hi = std::min(i1.b, i2.b);
  if (lo < hi) out.intersection = Interval{lo, hi};

  std::vector<Interval> diff;
  if (i1.a < i2.a) diff.push_back(Interval{i1.a, std::min(i1.b, i2.a)});
  if (i2.b < i1.b) diff.push_back(Interval{std::max(i1.a, i2.b), i1.b});
  out.difference = make_interval_set(std::move(diff));

  std::vector<Interval> uni;
  if (lo <= hi) {
    uni.push_back(Interval{std::min(i1.a, i2.a), std::max(i1.b, i2.b)});
  } else {
    uni.push_back(i1);
    uni.push_back(i2);
  }
  out.set_union = make_interval_set(std::move(uni));
  return out;
}

namespace {

double parse_number(const std::string& tok, bool allow_inf) {
  std::string t = tok;
  t.erase(std::remove_if(t.begin(), t.end(),
                         [](unsigned char c) { return std::isspace(c); }),
          t.end());
  if (t.empty()) throw argument_error("empty number in interval spec");
  if (allow_inf && (t == "inf" || t == "+inf")) return kInf;
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(t, &pos);
  } catch (const std::exception&) {
    throw argument_error("cannot parse number '" + tok + "'");
  }
  if (pos != t.size()) throw argument_error("trailing junk in number '" + tok + "'");
  return v;
}

}  // namespace

Interval parse_interval(const std::string& text) {
  // accept the display form "(a,b)" as well as the bare "a,b"
  std::string s = text;
  const auto first = s.find_first_not_of(" \t");
  const auto last = s.find_last_not_of(" \t");
  if (first == std::string::npos) {
    throw argument_error("interval spec must be 'a,b': got '" + text + "'");
  }
  s = s.substr(first, last - first + 1);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
    s = s.substr(1, s.size() - 2);
  }
  auto comma = s.find(',');
  if (comma == std::string::npos) {
    throw argument_error("interval spec must be 'a,b': got '" + text + "'");
  }
  double a = parse_number(s.substr(0, comma), false);
  double b = parse_number(s.substr(comma + 1), true);
  return make_interval(a, b);
}

IntervalSet parse_interval_set(const std::string& text, bool require_separated) {
  std::vector<Interval> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    parts.push_back(parse_interval(item));
  }
  if (parts.empty()) throw argument_error("empty interval set spec");
  return make_interval_set(std::move(parts), require_separated);
}

Partition parse_partition(const std::string& text) {
  auto bar = text.find('|');
  if (bar == std::string::npos) {
    throw argument_error("partition spec must be 'set1|set2'");
  }
  return make_partition(parse_interval_set(text.substr(0, bar)),
                        parse_interval_set(text.substr(bar + 1)));
}

std::string format_interval(const Interval& iv) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << iv.a << ",";
  if (iv.unbounded()) {
    os << "inf";
  } else {
    os << iv.b;
  }
  os << ")";
  return os.str();
}

std::string format_interval_set(const IntervalSet& s) {
  std::ostringstream os;
  for (std::size_t i = 0; i < s.parts.size(); ++i) {
    if (i) os << ";";
    os << format_interval(s.parts[i]);
  }
  return os.str();
}

}  // namespace entkit
