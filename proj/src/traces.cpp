#include "entkit/traces.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <utility>

#include <Eigen/Dense>

#include "entkit/errors.hpp"

namespace entkit {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

int worker_count(std::size_t items) {
  int cap = 1 << 20;
  if (const char* env = std::getenv("ENTKIT_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > 256) {
      throw argument_error("ENTKIT_THREADS must be an integer in [1, 256]");
    }
    cap = static_cast<int>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  int n = std::min<int>(cap, static_cast<int>(hw));
  return std::min<int>(n, static_cast<int>(std::max<std::size_t>(items, 1)));
}

// Index-addressed parallel loop; results land by index, so the outcome is
// identical for any worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const int workers = worker_count(n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  auto run = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

int nodes_for(const NodesPolicy& policy, double kappa, double length) {
  if (policy.kind == NodesPolicy::Kind::fixed) {
    if (policy.fixed_n < 1) {
      throw argument_error("fixed node count must be >= 1");
    }
    return policy.fixed_n;
  }
  return oscillatory_node_count(kappa, length);
}

Eigen::VectorXd eig_values_desc(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw numerical_error("eigenvalue iteration failed to converge");
  }
  return es.eigenvalues().reverse();
}

struct SystemCombo {
  std::vector<SpectralSystem> systems;
  std::vector<double> signs;
};

// One entropy pass per system, shared across all test functions.
std::vector<double> combo_sums(const SystemCombo& combo,
                               const std::vector<TestFunction>& fs) {
  std::vector<double> out(fs.size(), 0.0);
  for (std::size_t s = 0; s < combo.systems.size(); ++s) {
    SpectrumResult spec;
    spec.eigenvalues = eig_values_desc(combo.systems[s].matrix);
    for (std::size_t i = 0; i < fs.size(); ++i) {
      out[i] += combo.signs[s] * entropy_sum(spec, fs[i]);
    }
  }
  return out;
}

IntervalSet normalized_bounded(const IntervalSet& s, const char* role) {
  if (s.parts.empty()) {
    throw geometry_error(geometry_error::kind::empty,
                         std::string(role) + " set must be nonempty");
  }
  IntervalSet out = make_interval_set(s.parts, false);
  if (out.has_unbounded()) {
    throw argument_error(std::string(role) +
                         " set must be bounded for cutoff discretization");
  }
  return out;
}

std::vector<QuadratureRule> rules_for(const IntervalSet& s, double kappa,
                                      const NodesPolicy& policy) {
  std::vector<QuadratureRule> rules;
  rules.reserve(s.parts.size());
  for (const auto& iv : s.parts) {
    rules.push_back(
        gauss_legendre(nodes_for(policy, kappa, iv.length()), iv.a, iv.b));
  }
  return rules;
}

// Union system reusing the parts' rules verbatim; alignment holds because
// both parts and rules sort by the same left endpoints.
SpectralSystem union_system(const IntervalSet& s1, const IntervalSet& s2,
                            const std::vector<QuadratureRule>& r1,
                            const std::vector<QuadratureRule>& r2, double k) {
  std::vector<Interval> parts = s1.parts;
  parts.insert(parts.end(), s2.parts.begin(), s2.parts.end());
  std::vector<QuadratureRule> rules = r1;
  rules.insert(rules.end(), r2.begin(), r2.end());
  std::sort(rules.begin(), rules.end(),
            [](const QuadratureRule& x, const QuadratureRule& y) {
              return x.a < y.a;
            });
  const IntervalSet uni = make_interval_set(parts, false);
  return assemble_cutoff_projector(uni, k, std::move(rules));
}

SystemCombo build_delta_systems(const IntervalSet& s1, const IntervalSet& s2,
                                double kappa, const NodesPolicy& policy) {
  const double k = 2.0 * kappa;
  auto r1 = rules_for(s1, kappa, policy);
  auto r2 = rules_for(s2, kappa, policy);
  SystemCombo combo;
  combo.systems.push_back(assemble_cutoff_projector(s1, k, r1));
  combo.systems.push_back(assemble_cutoff_projector(s2, k, r2));
  combo.systems.push_back(union_system(s1, s2, r1, r2, k));
  combo.signs = {1.0, 1.0, -1.0};
  return combo;
}

double min_cross_distance(const IntervalSet& s1, const IntervalSet& s2) {
  std::vector<double> e1, e2;
  for (const auto& iv : s1.parts) {
    e1.push_back(iv.a);
    e1.push_back(iv.b);
  }
  for (const auto& iv : s2.parts) {
    e2.push_back(iv.a);
    e2.push_back(iv.b);
  }
  double d = std::numeric_limits<double>::infinity();
  for (double a : e1) {
    for (double b : e2) {
      const double v = std::abs(a - b);
      if (v > 0.0 && v < d) d = v;
    }
  }
  return d;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_stddev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

// Averages the sweep. Windows span two oscillation periods of the nearest
// endpoint distance; fewer than two usable windows falls back to the plain
// sample statistics.
void finalize_sweep(Averaging mode, double dmin, TraceEstimate& est) {
  std::vector<double> raws;
  raws.reserve(est.per_kappa.size());
  for (const auto& s : est.per_kappa) raws.push_back(s.raw);

  auto plain = [&]() {
    est.value = mean_of(raws);
    est.error_bar = sample_stddev(raws);
  };

  if (raws.size() < 3 || mode == Averaging::none || !std::isfinite(dmin) ||
      dmin <= 0.0) {
    plain();
    if (raws.size() < 3) est.error_bar = 0.0;
    return;
  }

  const double lo = est.per_kappa.front().kappa;
  const double hi = est.per_kappa.back().kappa;
  const double span = hi - lo;
  const int windows =
      std::max(1, static_cast<int>(std::floor(span * dmin / kTwoPi)));
  if (windows < 2) {
    plain();
    return;
  }
  std::vector<double> sums(windows, 0.0);
  std::vector<int> counts(windows, 0);
  for (const auto& s : est.per_kappa) {
    int idx = static_cast<int>((s.kappa - lo) / span * windows);
    idx = std::clamp(idx, 0, windows - 1);
    sums[idx] += s.raw;
    ++counts[idx];
  }
  std::vector<double> means;
  for (int w = 0; w < windows; ++w) {
    if (counts[w] > 0) means.push_back(sums[w] / counts[w]);
  }
  if (means.size() < 2) {
    plain();
    return;
  }
  est.value = mean_of(means);
  est.error_bar = sample_stddev(means);
}

void validate_sweep_config(const SweepConfig& cfg) {
  if (!(cfg.kappa_min > 0.0) || !std::isfinite(cfg.kappa_min)) {
    throw argument_error("cutoff window must start above zero");
  }
  if (!std::isfinite(cfg.kappa_max) || cfg.kappa_max < cfg.kappa_min) {
    throw argument_error("cutoff window must be ordered");
  }
  if (cfg.samples < 1) {
    throw argument_error("sweep needs at least one sample");
  }
  if (cfg.samples > 1 && !(cfg.kappa_max > cfg.kappa_min)) {
    throw argument_error("multi-sample sweep needs a window of positive width");
  }
}

std::vector<double> sweep_kappas(const SweepConfig& cfg) {
  std::vector<double> ks(cfg.samples);
  if (cfg.samples == 1) {
    ks[0] = cfg.kappa_min;
    return ks;
  }
  const double step = (cfg.kappa_max - cfg.kappa_min) / (cfg.samples - 1);
  for (int i = 0; i < cfg.samples; ++i) ks[i] = cfg.kappa_min + step * i;
  return ks;
}

std::vector<TraceEstimate> run_sweep(
    const SweepConfig& cfg, double dmin, const std::vector<TestFunction>& fs,
    const std::function<SystemCombo(double)>& build, int chirality) {
  validate_sweep_config(cfg);
  if (fs.empty()) throw argument_error("sweep needs at least one test function");
  const std::vector<double> kappas = sweep_kappas(cfg);

  std::vector<std::vector<double>> raws(kappas.size());
  parallel_for(kappas.size(), [&](std::size_t i) {
    raws[i] = combo_sums(build(kappas[i]), fs);
  });

  std::vector<TraceEstimate> out(fs.size());
  for (std::size_t fi = 0; fi < fs.size(); ++fi) {
    TraceEstimate& est = out[fi];
    est.chirality_factor = chirality;
    est.per_kappa.resize(kappas.size());
    for (std::size_t i = 0; i < kappas.size(); ++i) {
      est.per_kappa[i] = {kappas[i], raws[i][fi]};
    }
    const Averaging mode =
        cfg.samples < 3 ? Averaging::none : cfg.averaging;
    finalize_sweep(mode, dmin, est);
    if (cfg.samples < 3) est.error_bar = 0.0;
  }
  return out;
}

// Proper overlap l.a < r.a < l.b < r.b, panels on the sorted breakpoints.
struct OverlapPanels {
  Interval left, right, inter, uni;
  std::array<Interval, 3> panels;
  double dmin = 0.0;
};

OverlapPanels overlap_panels(const Interval& i1, const Interval& i2) {
  Interval l = i1;
  Interval r = i2;
  if (r.a < l.a) std::swap(l, r);
  if (l.unbounded() || r.unbounded()) {
    throw argument_error("overlap discretization needs bounded intervals");
  }
  if (!(l.a < r.a)) {
    throw geometry_error(geometry_error::kind::unordered,
                         "intervals must have distinct left endpoints");
  }
  if (!(r.a < l.b)) {
    throw geometry_error(geometry_error::kind::unordered,
                         "intervals must properly overlap");
  }
  if (!(l.b < r.b)) {
    throw geometry_error(geometry_error::kind::contained,
                         "one interval contains the other");
  }
  OverlapPanels p;
  p.left = l;
  p.right = r;
  p.inter = make_interval(r.a, l.b);
  p.uni = make_interval(l.a, r.b);
  p.panels = {make_interval(l.a, r.a), make_interval(r.a, l.b),
              make_interval(l.b, r.b)};
  const double gaps[3] = {r.a - l.a, l.b - r.a, r.b - l.b};
  p.dmin = std::min({gaps[0], gaps[1], gaps[2]});
  return p;
}

SystemCombo build_overlap_systems(const OverlapPanels& p, double kappa,
                                  const NodesPolicy& policy) {
  const double k = 2.0 * kappa;
  std::array<QuadratureRule, 3> rule;
  for (int j = 0; j < 3; ++j) {
    rule[j] = gauss_legendre(nodes_for(policy, kappa, p.panels[j].length()),
                             p.panels[j].a, p.panels[j].b);
  }
  auto set_of = [](std::vector<Interval> parts) {
    return make_interval_set(std::move(parts), false);
  };
  SystemCombo combo;
  combo.systems.push_back(assemble_cutoff_projector(
      set_of({p.panels[0], p.panels[1]}), k, {rule[0], rule[1]}));
  combo.systems.push_back(assemble_cutoff_projector(
      set_of({p.panels[1], p.panels[2]}), k, {rule[1], rule[2]}));
  combo.systems.push_back(
      assemble_cutoff_projector(set_of({p.panels[1]}), k, {rule[1]}));
  combo.systems.push_back(assemble_cutoff_projector(
      set_of({p.panels[0], p.panels[1], p.panels[2]}), k,
      {rule[0], rule[1], rule[2]}));
  combo.signs = {1.0, 1.0, -1.0, -1.0};
  return combo;
}

struct LinearFit {
  double c0 = 0.0;
  double c1 = 0.0;
  double max_residual = 0.0;
};

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-300) {
    throw argument_error("degenerate width list for the limit fit");
  }
  LinearFit fit;
  fit.c1 = (n * sxy - sx * sy) / denom;
  fit.c0 = (sy - fit.c1 * sx) / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    fit.max_residual =
        std::max(fit.max_residual, std::abs(y[i] - (fit.c0 + fit.c1 * x[i])));
  }
  return fit;
}

}  // namespace

std::vector<TraceEstimate> delta_trace_cutoff_multi(
    const IntervalSet& s1, const IntervalSet& s2,
    const std::vector<TestFunction>& fs, const SweepConfig& cfg) {
  const IntervalSet a = normalized_bounded(s1, "first");
  const IntervalSet b = normalized_bounded(s2, "second");
  std::vector<Interval> all = a.parts;
  all.insert(all.end(), b.parts.begin(), b.parts.end());
  make_interval_set(all, true);  // strict separation across the pair
  const double dmin = min_cross_distance(a, b);
  return run_sweep(
      cfg, dmin, fs,
      [&](double kappa) { return build_delta_systems(a, b, kappa, cfg.nodes); },
      2);
}

TraceEstimate delta_trace_cutoff(const IntervalSet& s1, const IntervalSet& s2,
                                 const TestFunction& f,
                                 const SweepConfig& cfg) {
  return delta_trace_cutoff_multi(s1, s2, {f}, cfg)[0];
}

double delta_raw_cutoff(const IntervalSet& s1, const IntervalSet& s2,
                        const TestFunction& f, double kappa,
                        const NodesPolicy& policy) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw argument_error("cutoff must be positive");
  }
  const IntervalSet a = normalized_bounded(s1, "first");
  const IntervalSet b = normalized_bounded(s2, "second");
  std::vector<Interval> all = a.parts;
  all.insert(all.end(), b.parts.begin(), b.parts.end());
  make_interval_set(all, false);  // overlap rejected, touching tolerated
  return combo_sums(build_delta_systems(a, b, kappa, policy), {f})[0];
}

TraceEstimate delta_trace_poly(const Interval& i1, const Interval& i2, int m,
                               int n_nodes) {
  if (m < 2 || m > 8) {
    throw argument_error("word expansion supports degrees 2 through 8");
  }
  if (n_nodes < 2) throw argument_error("need at least two nodes per block");
  Interval l = i1;
  Interval r = i2;
  if (r.a < l.a) std::swap(l, r);
  if (l.unbounded() || r.unbounded()) {
    throw argument_error("word expansion needs bounded intervals");
  }
  if (r.a < l.b) {
    throw geometry_error(geometry_error::kind::overlapping,
                         "intervals must be separated");
  }
  if (r.a == l.b) {
    throw geometry_error(geometry_error::kind::touching,
                         "intervals must be strictly separated");
  }

  const Eigen::MatrixXcd b11 = complex_operator(assemble_pv_block(l, n_nodes));
  const Eigen::MatrixXcd b22 = complex_operator(assemble_pv_block(r, n_nodes));
  const CrossBlock cross = assemble_cross_block(l, r, n_nodes, n_nodes);
  const std::complex<double> iu(0.0, 1.0);
  const Eigen::MatrixXcd b12 = iu * cross.matrix.cast<std::complex<double>>();
  const Eigen::MatrixXcd b21 =
      -iu * cross.matrix.transpose().cast<std::complex<double>>();
  const Eigen::MatrixXcd* blocks[2][2] = {{&b11, &b12}, {&b21, &b22}};

  // Group the 2^m - 2 mixed cyclic words by rotation class; each class
  // contributes its trace once, weighted by the class size.
  const std::uint32_t full = (1u << m) - 1u;
  std::map<std::uint32_t, int> classes;
  for (std::uint32_t w = 1; w < full; ++w) {
    std::uint32_t canon = w;
    for (int rot = 1; rot < m; ++rot) {
      const std::uint32_t v = ((w >> rot) | (w << (m - rot))) & full;
      canon = std::min(canon, v);
    }
    ++classes[canon];
  }

  std::complex<double> total(0.0, 0.0);
  for (const auto& [word, count] : classes) {
    auto letter = [&](int j) {
      return static_cast<int>((word >> (j % m)) & 1u);
    };
    Eigen::MatrixXcd prod = *blocks[letter(0)][letter(1)];
    for (int j = 1; j < m; ++j) {
      prod = prod * (*blocks[letter(j)][letter(j + 1)]);
    }
    total += static_cast<double>(count) * prod.trace();
  }

  TraceEstimate est;
  est.value = -total.real();
  est.error_bar = std::abs(total.imag());
  est.chirality_factor = 1;
  return est;
}

TraceEstimate f_trace_cutoff(const Interval& i1, const Interval& i2,
                             const TestFunction& f, const SweepConfig& cfg) {
  const OverlapPanels p = overlap_panels(i1, i2);
  return run_sweep(
      cfg, p.dmin, {f},
      [&](double kappa) { return build_overlap_systems(p, kappa, cfg.nodes); },
      2)[0];
}

std::pair<double, double> f_trace_decomposition_check(const Interval& i1,
                                                      const Interval& i2,
                                                      const TestFunction& f,
                                                      double kappa,
                                                      const NodesPolicy& policy) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw argument_error("cutoff must be positive");
  }
  const OverlapPanels p = overlap_panels(i1, i2);
  const double k = 2.0 * kappa;
  std::array<QuadratureRule, 3> rule;
  for (int j = 0; j < 3; ++j) {
    rule[j] = gauss_legendre(nodes_for(policy, kappa, p.panels[j].length()),
                             p.panels[j].a, p.panels[j].b);
  }
  auto sum_on = [&](std::vector<int> which) {
    std::vector<Interval> parts;
    std::vector<QuadratureRule> rules;
    for (int j : which) {
      parts.push_back(p.panels[j]);
      rules.push_back(rule[j]);
    }
    const SpectralSystem sys = assemble_cutoff_projector(
        make_interval_set(parts, false), k, std::move(rules));
    SpectrumResult spec;
    spec.eigenvalues = eig_values_desc(sys.matrix);
    return entropy_sum(spec, f);
  };
  const double s1 = sum_on({0, 1});
  const double s2 = sum_on({1, 2});
  const double si = sum_on({1});
  const double su = sum_on({0, 1, 2});
  const double sa = sum_on({0});  // the retracted piece I1 minus I2
  const double four_term = s1 + s2 - si - su;
  const double decomposed = (sa + s2 - su) - (sa + si - s1);
  return {four_term, decomposed};
}

TraceEstimate f_trace_poly_limit(const Interval& i1, const Interval& i2, int m,
                                 const std::vector<double>& eps_list,
                                 int n_nodes) {
  const OverlapPanels p = overlap_panels(i1, i2);
  if (eps_list.size() < 3) {
    throw argument_error("limit fit needs at least three widths");
  }
  std::vector<double> eps = eps_list;
  std::sort(eps.begin(), eps.end(), std::greater<double>());
  const double head = p.panels[0].length();
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0) || !std::isfinite(eps[i])) {
      throw argument_error("widths must be positive");
    }
    if (!(eps[i] < head)) {
      throw argument_error("width exceeds the non-overlapping head segment");
    }
    if (i > 0 && eps[i] == eps[i - 1]) {
      throw argument_error("widths must be distinct");
    }
  }

  std::vector<double> dvals(eps.size());
  parallel_for(eps.size(), [&](std::size_t i) {
    const Interval shrunk = make_interval(p.left.a, p.right.a - eps[i]);
    const double d_full =
        delta_trace_poly(shrunk, p.right, m, n_nodes).value;
    const double d_inter =
        delta_trace_poly(shrunk, p.inter, m, n_nodes).value;
    dvals[i] = d_full - d_inter;
  });

  for (std::size_t i = 0; i + 1 < eps.size(); ++i) {
    const double drift = std::abs(dvals[i] - dvals[i + 1]);
    if (drift >= 1e-3) {
      throw numerical_error("width-shrink drift " + std::to_string(drift) +
                            " exceeds 1e-3; refine the widths");
    }
  }

  const std::size_t tail = eps.size() - 3;
  const std::vector<double> x(eps.begin() + tail, eps.end());
  const std::vector<double> y(dvals.begin() + tail, dvals.end());
  const LinearFit fit = fit_line(x, y);

  TraceEstimate est;
  est.value = fit.c0;
  est.error_bar = fit.max_residual;
  est.chirality_factor = 1;
  return est;
}

std::vector<AsymptoticRow> asymptotic_check(const Interval& i1,
                                            const Interval& i2_template,
                                            double alpha,
                                            const std::vector<double>& r_list) {
  std::vector<AsymptoticRow> rows;
  rows.reserve(r_list.size());
  for (double r : r_list) {
    const SeparationExpansion e = separation_expansion(i1, i2_template, r, alpha);
    AsymptoticRow row;
    row.r = r;
    row.exact = e.exact;
    row.leading = e.leading;
    if (e.leading == 0.0) {
      throw numerical_error("vanishing leading term in the separation table");
    }
    row.ratio = e.exact / e.leading;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace entkit
