#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "entkit/geometry.hpp"
#include "entkit/quad.hpp"
#include "entkit/testfns.hpp"

namespace entkit {

// Hard cap on quadrature nodes per interval; exceeding it is a resource
// failure, not a silent truncation.
inline constexpr int kMaxNodesPerInterval = 4000;

struct NodesPolicy {
  enum class Kind { oscillatory, fixed };
  Kind kind = Kind::oscillatory;
  int fixed_n = 0;  // per interval when kind == fixed
};

// Discretized self-adjoint operator on an interval union. The matrix is
// real symmetric throughout: genuinely complex Hermitian operators are
// stored as the 2n x 2n embedding [[X, -Y], [Y, X]] of X + iY, flagged by
// complex_dim = n.
struct SpectralSystem {
  IntervalSet support;
  std::vector<QuadratureRule> rules;  // one per interval, same order
  Eigen::MatrixXd matrix;
  double cutoff_k = 0.0;  // momentum cutoff; 0 for non-cutoff systems
  Eigen::Index complex_dim = 0;

  Eigen::Index size() const { return matrix.rows(); }
};

// Symmetrized Nystrom matrix of the momentum-cutoff ground-state projector
// on the union, sine kernel with parameter k/2. Trace equals
// (k/2)|support|/pi up to rounding.
SpectralSystem assemble_cutoff_projector(const IntervalSet& support, double k,
                                         const NodesPolicy& policy = {});

// Same, on caller-supplied per-interval rules (shared-grid code paths).
SpectralSystem assemble_cutoff_projector(const IntervalSet& support, double k,
                                         std::vector<QuadratureRule> rules);

// Off-diagonal correlation block between two separated intervals: entries
// sqrt(w_i v_j) / (2 pi (x_i - y_j)); real, modulus-equivalent to the
// complex kernel, which is all singular values care about.
struct CrossBlock {
  QuadratureRule row_rule;
  QuadratureRule col_rule;
  Eigen::MatrixXd matrix;
};

CrossBlock assemble_cross_block(const Interval& i1, const Interval& i2,
                                int n1, int n2);
CrossBlock assemble_cross_block(QuadratureRule row_rule, QuadratureRule col_rule);

// Diagonal block 1/2 + i/(2 pi) PV(1/(x-y)) of the half-space projector on
// one interval, as the real embedding of the Hermitian matrix with purely
// antisymmetric principal-value part.
SpectralSystem assemble_pv_block(const Interval& iv, int n);

// The embedded Hermitian operator (or the real matrix itself, complexified).
Eigen::MatrixXcd complex_operator(const SpectralSystem& sys);
// Antisymmetric principal-value factor Y of an embedded block.
Eigen::MatrixXd pv_antisymmetric_part(const SpectralSystem& sys);

struct SpectrumResult {
  Eigen::VectorXd eigenvalues;  // descending
  double residual_norm = 0.0;   // max_i |M v_i - s_i v_i| / |M|
};

SpectrumResult sym_eig(const SpectralSystem& sys);

struct SchattenResult {
  double value = 0.0;
  double tail_bound = 0.0;  // geometric estimate of the truncated tail
};

double schatten_norm(const CrossBlock& block, double p);
SchattenResult schatten_norm_detailed(const CrossBlock& block, double p);

struct EntropySumResult {
  double value = 0.0;
  int clipped_low = 0;      // eigenvalues clipped up to 0
  int clipped_high = 0;     // eigenvalues clipped down to 1
  double worst_excursion = 0.0;
  bool warn = false;        // excursion beyond 1e-6
};

// Sum f over the spectrum, clipping to [0,1]. Excursions beyond 1e-6 set
// the warning flag; beyond 1e-3 the sum is refused as numerically invalid.
EntropySumResult entropy_sum_detailed(const SpectrumResult& spec,
                                      const TestFunction& f);
double entropy_sum(const SpectrumResult& spec, const TestFunction& f);

void write_spectrum_csv(std::ostream& os, const SpectrumResult& spec);

}  // namespace entkit
