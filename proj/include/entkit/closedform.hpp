#pragma once

#include <string>

#include "entkit/geometry.hpp"
#include "entkit/testfns.hpp"

namespace entkit {

enum class FormulaId {
  two_interval,
  n_interval,
  renyi_corollary,
  intersecting,
  asymptotic_bounded,
  asymptotic_unbounded,
};

const char* formula_id_name(FormulaId id);

struct ClosedFormResult {
  double value = 0.0;
  FormulaId formula_id = FormulaId::two_interval;
  bool conjectural = false;
  std::string inputs;  // human-readable echo of the arguments
};

// Chord-defect coefficient between levels 0 and 1, resolved in order:
// entropy orders and monomials in closed form, everything else by
// quadrature.
double u_value(const TestFunction& f);

// Trace of the two-set difference combination for separated intervals:
// u_value/(2 pi^2) times the endpoint cross-ratio log.
ClosedFormResult two_interval_trace(const Interval& i1, const Interval& i2,
                                    const TestFunction& f);

// Same with the pairwise cross-ratio sum over a partition.
ClosedFormResult n_interval_trace(const Partition& p, const TestFunction& f);

// Mutual-information form for entropy order alpha: (1+alpha)/(12 alpha)
// times the pairwise sum. The first group must be bounded.
ClosedFormResult renyi_ee(const Partition& p, double alpha);

// Properly overlapping pair: coefficient times ln(|I1||I2|/(|cap||cup|)).
// Conjectural except for polynomial test functions. Right-unbounded i2 uses
// the limiting ratio |I1|/|cap|; containment is rejected.
ClosedFormResult intersecting_trace(const Interval& i1, const Interval& i2,
                                    const TestFunction& f);

struct SeparationExpansion {
  double exact = 0.0;    // closed form at separation r
  double leading = 0.0;  // first term of the large-r expansion
  FormulaId formula_id = FormulaId::asymptotic_bounded;
};

// Entropy-order trace for i1 against a copy of i2_template placed at gap r
// to its right; a right-unbounded template keeps its unbounded end.
SeparationExpansion separation_expansion(const Interval& i1,
                                         const Interval& i2_template, double r,
                                         double alpha);

}  // namespace entkit
