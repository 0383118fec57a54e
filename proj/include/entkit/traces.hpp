#pragma once

#include <utility>
#include <vector>

#include "entkit/closedform.hpp"
#include "entkit/geometry.hpp"
#include "entkit/specops.hpp"
#include "entkit/testfns.hpp"

namespace entkit {

enum class Averaging { none, window_mean };

struct SweepConfig {
  double kappa_min = 0.0;
  double kappa_max = 0.0;
  int samples = 31;
  Averaging averaging = Averaging::window_mean;
  NodesPolicy nodes;
};

struct KappaSample {
  double kappa = 0.0;
  double raw = 0.0;
};

// Result of a discretization sweep or limit fit. chirality_factor records
// how many chiral copies the discretization carries relative to the
// closed forms: cutoff estimates target twice the one-sided value, the
// half-space path targets it directly. The factor is never divided out
// silently.
struct TraceEstimate {
  double value = 0.0;
  double error_bar = 0.0;
  std::vector<KappaSample> per_kappa;  // populated by cutoff sweeps
  int chirality_factor = 1;
};

// Difference-combination trace for two strictly separated bounded unions,
// swept over the cutoff window. Window averaging groups samples into
// windows spanning at least two oscillation periods of the smallest
// endpoint distance; the error bar is the spread of window means.
TraceEstimate delta_trace_cutoff(const IntervalSet& s1, const IntervalSet& s2,
                                 const TestFunction& f, const SweepConfig& cfg);

// Same sweep evaluated for several test functions at once, reusing each
// cutoff eigendecomposition across all of them.
std::vector<TraceEstimate> delta_trace_cutoff_multi(
    const IntervalSet& s1, const IntervalSet& s2,
    const std::vector<TestFunction>& fs, const SweepConfig& cfg);

// Single-cutoff raw value on shared per-interval grids; the union system
// reuses the parts' rules node for node so the combination cancels exactly.
// Touching sets are accepted here: the finite-cutoff value is regular.
double delta_raw_cutoff(const IntervalSet& s1, const IntervalSet& s2,
                        const TestFunction& f, double kappa,
                        const NodesPolicy& policy = {});

// Monomial trace difference evaluated through the half-space block
// expansion: minus the sum over mixed cyclic block words, grouped by
// rotation class. The imaginary remainder of the word sum (zero for the
// exact operator) is reported as the error bar.
TraceEstimate delta_trace_poly(const Interval& i1, const Interval& i2, int m,
                               int n_nodes);

// Four-term combination for properly overlapping intervals, all systems
// panelized on the common breakpoints and swept over the cutoff window.
TraceEstimate f_trace_cutoff(const Interval& i1, const Interval& i2,
                             const TestFunction& f, const SweepConfig& cfg);

// The four-term combination and its two-term difference decomposition at
// one cutoff on identical panel grids; the pair must agree to rounding.
std::pair<double, double> f_trace_decomposition_check(
    const Interval& i1, const Interval& i2, const TestFunction& f,
    double kappa, const NodesPolicy& policy = {});

// Monomial four-term combination via the difference decomposition with the
// shared endpoint retracted by eps; the eps -> 0 limit is recovered by a
// linear fit over the three smallest widths. Consecutive drifts beyond
// 1e-3 abort the fit.
TraceEstimate f_trace_poly_limit(const Interval& i1, const Interval& i2, int m,
                                 const std::vector<double>& eps_list,
                                 int n_nodes);

struct AsymptoticRow {
  double r = 0.0;
  double exact = 0.0;
  double leading = 0.0;
  double ratio = 0.0;  // exact / leading, -> 1 at large separation
};

std::vector<AsymptoticRow> asymptotic_check(const Interval& i1,
                                            const Interval& i2_template,
                                            double alpha,
                                            const std::vector<double>& r_list);

}  // namespace entkit
