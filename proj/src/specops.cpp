#include "entkit/specops.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace entkit {

namespace {

constexpr double kPi = 3.14159265358979323846;

int policy_nodes(const NodesPolicy& policy, double kappa, double length) {
  int n;
  if (policy.kind == NodesPolicy::Kind::fixed) {
    if (policy.fixed_n < 1) throw argument_error("fixed node count must be >= 1");
    n = policy.fixed_n;
  } else {
    n = oscillatory_node_count(kappa, length);
  }
  if (n > kMaxNodesPerInterval) {
    throw resource_error("node count " + std::to_string(n) +
                         " exceeds per-interval cap " +
                         std::to_string(kMaxNodesPerInterval));
  }
  return n;
}

}  // namespace

SpectralSystem assemble_cutoff_projector(const IntervalSet& support, double k,
                                         const NodesPolicy& policy) {
  if (!(k > 0.0)) throw argument_error("momentum cutoff must be positive");
  if (support.empty()) {
    throw geometry_error(geometry_error::kind::empty, "empty support");
  }
  if (support.has_unbounded()) {
    throw argument_error("cutoff projector needs bounded support");
  }
  const double kappa = 0.5 * k;
  std::vector<QuadratureRule> rules;
  rules.reserve(support.parts.size());
  for (const auto& iv : support.parts) {
    rules.push_back(gauss_legendre(policy_nodes(policy, kappa, iv.length()),
                                   iv.a, iv.b));
  }
  return assemble_cutoff_projector(support, k, std::move(rules));
}

SpectralSystem assemble_cutoff_projector(const IntervalSet& support, double k,
                                         std::vector<QuadratureRule> rules) {
  if (!(k > 0.0)) throw argument_error("momentum cutoff must be positive");
  if (support.empty()) {
    throw geometry_error(geometry_error::kind::empty, "empty support");
  }
  if (support.has_unbounded()) {
    throw argument_error("cutoff projector needs bounded support");
  }
  if (rules.size() != support.parts.size()) {
    throw argument_error("one quadrature rule per interval required");
  }
  const double kappa = 0.5 * k;

  Eigen::Index total = 0;
  for (const auto& r : rules) {
    if (static_cast<int>(r.size()) > kMaxNodesPerInterval) {
      throw resource_error("rule exceeds per-interval node cap");
    }
    total += static_cast<Eigen::Index>(r.size());
  }
  Eigen::VectorXd x(total), sw(total);
  Eigen::Index at = 0;
  for (const auto& r : rules) {
    for (std::size_t i = 0; i < r.size(); ++i, ++at) {
      x[at] = r.nodes[i];
      sw[at] = std::sqrt(r.weights[i]);
    }
  }

  SpectralSystem sys;
  sys.support = support;
  sys.rules = std::move(rules);
  sys.cutoff_k = k;
  sys.matrix.resize(total, total);
  for (Eigen::Index i = 0; i < total; ++i) {
    sys.matrix(i, i) = sw[i] * sw[i] * kappa / kPi;
    for (Eigen::Index j = i + 1; j < total; ++j) {
      const double d = x[i] - x[j];
      const double v = sw[i] * sw[j] * std::sin(kappa * d) / (kPi * d);
      sys.matrix(i, j) = v;
      sys.matrix(j, i) = v;
    }
  }
  return sys;
}

CrossBlock assemble_cross_block(const Interval& i1, const Interval& i2,
                                int n1, int n2) {
  if (i1.unbounded() || i2.unbounded()) {
    throw argument_error("cross block needs bounded intervals");
  }
  if (n1 < 1 || n2 < 1) throw argument_error("cross block needs n >= 1");
  if (n1 > kMaxNodesPerInterval || n2 > kMaxNodesPerInterval) {
    throw resource_error("cross block node count exceeds per-interval cap");
  }
  return assemble_cross_block(gauss_legendre(n1, i1.a, i1.b),
                              gauss_legendre(n2, i2.a, i2.b));
}

CrossBlock assemble_cross_block(QuadratureRule row_rule, QuadratureRule col_rule) {
  // Zero gap makes the kernel non-square-integrable across the common point.
  const double gap = std::max(row_rule.a, col_rule.a) <= std::min(row_rule.b, col_rule.b)
                         ? std::min(row_rule.b, col_rule.b) - std::max(row_rule.a, col_rule.a)
                         : -1.0;
  if (gap >= 0.0) {
    throw geometry_error(gap == 0.0 ? geometry_error::kind::touching
                                    : geometry_error::kind::overlapping,
                         "cross block requires separated intervals");
  }
  CrossBlock block;
  const Eigen::Index n = static_cast<Eigen::Index>(row_rule.size());
  const Eigen::Index m = static_cast<Eigen::Index>(col_rule.size());
  block.matrix.resize(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double swi = std::sqrt(row_rule.weights[i]);
    for (Eigen::Index j = 0; j < m; ++j) {
      block.matrix(i, j) = swi * std::sqrt(col_rule.weights[j]) /
                           (2.0 * kPi * (row_rule.nodes[i] - col_rule.nodes[j]));
    }
  }
  block.row_rule = std::move(row_rule);
  block.col_rule = std::move(col_rule);
  return block;
}

SpectralSystem assemble_pv_block(const Interval& iv, int n) {
  if (iv.unbounded()) throw argument_error("pv block needs a bounded interval");
  if (n < 2) throw argument_error("pv block needs n >= 2");
  if (n > kMaxNodesPerInterval) {
    throw resource_error("pv block node count exceeds per-interval cap");
  }
  QuadratureRule rule = gauss_legendre(n, iv.a, iv.b);

  // Y = (1/2pi) * antisymmetric principal-value factor, zero diagonal: the
  // skipped-node form keeps the block exactly Hermitian, which is what the
  // trace combinations rely on; pointwise edge accuracy is pv_apply's job.
  Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(n, n);
  for (int p = 0; p < n; ++p) {
    const double swp = std::sqrt(rule.weights[p]);
    for (int q = p + 1; q < n; ++q) {
      const double v = swp * std::sqrt(rule.weights[q]) /
                       (2.0 * kPi * (rule.nodes[p] - rule.nodes[q]));
      Y(p, q) = v;
      Y(q, p) = -v;
    }
  }

  SpectralSystem sys;
  sys.support = make_interval_set({iv});
  sys.rules.push_back(std::move(rule));
  sys.complex_dim = n;
  sys.matrix.resize(2 * n, 2 * n);
  sys.matrix.topLeftCorner(n, n) = 0.5 * Eigen::MatrixXd::Identity(n, n);
  sys.matrix.bottomRightCorner(n, n) = 0.5 * Eigen::MatrixXd::Identity(n, n);
  sys.matrix.topRightCorner(n, n) = -Y;
  sys.matrix.bottomLeftCorner(n, n) = Y;
  return sys;
}

Eigen::MatrixXcd complex_operator(const SpectralSystem& sys) {
  if (sys.complex_dim == 0) {
    return sys.matrix.cast<std::complex<double>>();
  }
  const Eigen::Index n = sys.complex_dim;
  Eigen::MatrixXcd out(n, n);
  out.real() = sys.matrix.topLeftCorner(n, n);
  out.imag() = sys.matrix.bottomLeftCorner(n, n);
  return out;
}

Eigen::MatrixXd pv_antisymmetric_part(const SpectralSystem& sys) {
  if (sys.complex_dim == 0) {
    throw argument_error("system has no embedded principal-value part");
  }
  const Eigen::Index n = sys.complex_dim;
  return sys.matrix.bottomLeftCorner(n, n);
}

SpectrumResult sym_eig(const SpectralSystem& sys) {
  const Eigen::MatrixXd& M = sys.matrix;
  if (M.rows() != M.cols() || M.rows() == 0) {
    throw argument_error("sym_eig needs a nonempty square matrix");
  }
  const double scale = M.cwiseAbs().maxCoeff();
  const double asym = (M - M.transpose()).cwiseAbs().maxCoeff();
  if (scale > 0.0 && asym > 1e-13 * scale) {
    throw argument_error("sym_eig requires a symmetric matrix");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M);
  if (solver.info() != Eigen::Success) {
    throw numerical_error("symmetric eigensolver failed");
  }

  SpectrumResult out;
  out.eigenvalues = solver.eigenvalues().reverse();
  const Eigen::MatrixXd& V = solver.eigenvectors();
  const Eigen::MatrixXd R =
      M * V - V * solver.eigenvalues().asDiagonal().toDenseMatrix();
  const double mnorm = std::max(scale, out.eigenvalues.cwiseAbs().maxCoeff());
  out.residual_norm = mnorm > 0.0 ? R.colwise().norm().maxCoeff() / mnorm : 0.0;
  return out;
}

SchattenResult schatten_norm_detailed(const CrossBlock& block, double p) {
  if (!(p >= 1.0)) throw argument_error("schatten order must satisfy p >= 1");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(block.matrix);
  const Eigen::VectorXd& s = svd.singularValues();  // descending
  if (s.size() == 0) throw argument_error("empty cross block");

  double sum = 0.0;
  for (Eigen::Index i = s.size(); i-- > 0;) sum += std::pow(s[i], p);

  SchattenResult out;
  out.value = std::pow(sum, 1.0 / p);

  // Geometric tail model from the last resolved decade of decay.
  const Eigen::Index n = s.size();
  const double tiny = s[0] * 1e-15;
  Eigen::Index last = n - 1;
  while (last > 0 && s[last] <= tiny) --last;
  if (last >= 5 && s[last - 5] > 0.0) {
    const double rho = std::pow(s[last] / s[last - 5], 0.2);
    if (rho < 1.0) {
      const double rp = std::pow(rho, p);
      out.tail_bound = std::pow(s[last], p) * rp / (1.0 - rp);
    } else {
      out.tail_bound = std::pow(s[last], p) * static_cast<double>(n);
    }
  } else {
    out.tail_bound = std::pow(s[last], p) * static_cast<double>(n);
  }
  return out;
}

double schatten_norm(const CrossBlock& block, double p) {
  return schatten_norm_detailed(block, p).value;
}

EntropySumResult entropy_sum_detailed(const SpectrumResult& spec,
                                      const TestFunction& f) {
  if (!f.eval) throw argument_error("test function has no evaluator");
  EntropySumResult out;
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
    const double ev = spec.eigenvalues[i];
    const double excursion = std::max(-ev, ev - 1.0);
    if (excursion > out.worst_excursion) out.worst_excursion = excursion;
    if (excursion > 1e-3) {
      throw numerical_error("eigenvalue " + std::to_string(ev) +
                            " leaves [0,1] beyond tolerance");
    }
    double t = ev;
    if (t < 0.0) {
      t = 0.0;
      ++out.clipped_low;
    } else if (t > 1.0) {
      t = 1.0;
      ++out.clipped_high;
    }
    out.value += f.eval(t);
  }
  out.warn = out.worst_excursion > 1e-6;
  return out;
}

double entropy_sum(const SpectrumResult& spec, const TestFunction& f) {
  return entropy_sum_detailed(spec, f).value;
}

void write_spectrum_csv(std::ostream& os, const SpectrumResult& spec) {
  os << "# entkit-spectrum-csv v1\n";
  os << "index,eigenvalue\n";
  os.precision(17);
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
    os << i << "," << spec.eigenvalues[i] << "\n";
  }
}

}  // namespace entkit
