#include "entkit/cli_app.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "entkit/closedform.hpp"
#include "entkit/errors.hpp"
#include "entkit/geometry.hpp"
#include "entkit/herglotz.hpp"
#include "entkit/report.hpp"
#include "entkit/specops.hpp"
#include "entkit/suite.hpp"
#include "entkit/testfns.hpp"
#include "entkit/traces.hpp"
#include "entkit/widom.hpp"

namespace entkit {
namespace {

struct Output {
  std::string format = "text";
  std::string out_path;
  long seed = 0;
  int exit_code = 0;
  bool handled = false;

  void deliver(const std::string& text_doc, const report_json& doc) const {
    const std::string payload =
        format == "json" ? render_report(doc) : text_doc;
    if (out_path.empty()) {
      std::cout << payload;
      return;
    }
    std::ofstream os(out_path);
    if (!os) throw resource_error("cannot open output file " + out_path);
    os << payload;
  }
};

void write_file(const std::string& path,
                const std::function<void(std::ostream&)>& body) {
  std::ofstream os(path);
  if (!os) throw resource_error("cannot open output file " + path);
  body(os);
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// A subcommand named on the command line and again as a config-file section
// parses twice; the report must still be computed and delivered once.
void on_run(CLI::App* cmd, Output& out, const std::function<void()>& body) {
  cmd->callback([&out, body] {
    if (out.handled) return;
    out.handled = true;
    body();
  });
}

NodesPolicy policy_from(int fixed_nodes) {
  NodesPolicy p;
  if (fixed_nodes > 0) {
    p.kind = NodesPolicy::Kind::fixed;
    p.fixed_n = fixed_nodes;
  }
  return p;
}

Averaging averaging_from(const std::string& name) {
  return name == "none" ? Averaging::none : Averaging::window_mean;
}

// --- formula ---------------------------------------------------------------

struct FormulaState {
  std::string sets;
  std::string fn = "halpha:1";
};

void add_formula(CLI::App& app, Output& out) {
  auto st = std::make_shared<FormulaState>();
  auto* cmd =
      app.add_subcommand("formula",
                         "Closed-form trace combination for a partition of "
                         "separated intervals")
          ->configurable(true);
  cmd->add_option("--sets", st->sets,
                  "partition 'a,b;c,d|e,f' (use inf for an open right end)")
      ->required();
  cmd->add_option("--fn", st->fn, "halpha:<a> | monomial:<m> | poly:<c1,...>")
      ->capture_default_str();
  on_run(cmd, out, [st, &out] {
    const Partition p = parse_partition(st->sets);
    const TestFunction f = parse_test_function(st->fn);
    const ClosedFormResult r = n_interval_trace(p, f);
    report_json inputs;
    inputs["sets"] = st->sets;
    inputs["fn"] = st->fn;
    std::ostringstream text;
    text << "value = " << num(r.value) << "\n"
         << "formula = " << formula_id_name(r.formula_id) << "\n"
         << "conjectural = " << (r.conjectural ? "yes" : "no") << "\n";
    out.deliver(text.str(),
                report_envelope("formula", inputs, to_report(r), out.seed));
  });
}

// --- ucoef -----------------------------------------------------------------

struct UcoefState {
  std::string fn = "halpha:1";
  double sigma1 = 0.0;
  double sigma2 = 1.0;
  int levels = 8;
};

void add_ucoef(CLI::App& app, Output& out) {
  auto st = std::make_shared<UcoefState>();
  auto* cmd = app.add_subcommand(
                     "ucoef", "Chord-defect coefficient between symbol levels")
                  ->configurable(true);
  cmd->add_option("--fn", st->fn, "test function")->capture_default_str();
  cmd->add_option("--sigma1", st->sigma1, "first level")->capture_default_str();
  cmd->add_option("--sigma2", st->sigma2, "second level")
      ->capture_default_str();
  cmd->add_option("--levels", st->levels, "tanh-sinh refinement levels")
      ->capture_default_str()
      ->check(CLI::Range(3, 12));
  on_run(cmd, out, [st, &out] {
    const TestFunction f = parse_test_function(st->fn);
    const UCoefficient u = u_coefficient(f, st->sigma1, st->sigma2, st->levels);
    report_json inputs;
    inputs["fn"] = st->fn;
    inputs["sigma1"] = st->sigma1;
    inputs["sigma2"] = st->sigma2;
    inputs["levels"] = st->levels;
    std::ostringstream text;
    text << "value = " << num(u.value) << "\n"
         << "quadrature_error = " << num(u.quadrature_error) << "\n";
    out.deliver(text.str(),
                report_envelope("ucoef", inputs, to_report(u), out.seed));
  });
}

// --- spectrum --------------------------------------------------------------

struct SpectrumState {
  std::string set;
  double kappa = 100.0;
  int nodes = 0;
  std::string csv;
};

void add_spectrum(CLI::App& app, Output& out) {
  auto st = std::make_shared<SpectrumState>();
  auto* cmd =
      app.add_subcommand("spectrum",
                         "Eigenvalues of the cutoff projector on an interval "
                         "union")
          ->configurable(true);
  cmd->add_option("--set", st->set, "interval union 'a,b;c,d'")->required();
  cmd->add_option("--kappa", st->kappa, "sine-kernel cutoff parameter")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--nodes", st->nodes,
                  "fixed nodes per interval (0 = resolve the oscillation)")
      ->capture_default_str();
  cmd->add_option("--csv", st->csv, "write eigenvalues to this CSV file");
  on_run(cmd, out, [st, &out] {
    const IntervalSet support = parse_interval_set(st->set);
    const SpectralSystem sys = assemble_cutoff_projector(
        support, 2.0 * st->kappa, policy_from(st->nodes));
    const SpectrumResult spec = sym_eig(sys);
    if (!st->csv.empty()) {
      write_file(st->csv, [&](std::ostream& os) { write_spectrum_csv(os, spec); });
    }
    report_json inputs;
    inputs["set"] = st->set;
    inputs["kappa"] = st->kappa;
    inputs["nodes"] = st->nodes;
    const Eigen::Index n = spec.eigenvalues.size();
    std::ostringstream text;
    text << "size = " << n << "\n"
         << "trace = " << num(spec.eigenvalues.sum()) << "\n"
         << "max = " << num(n ? spec.eigenvalues(0) : 0.0) << "\n"
         << "min = " << num(n ? spec.eigenvalues(n - 1) : 0.0) << "\n"
         << "residual_norm = " << num(spec.residual_norm) << "\n";
    out.deliver(text.str(),
                report_envelope("spectrum", inputs, to_report(spec), out.seed));
  });
}

// --- mutualinfo ------------------------------------------------------------

struct MutualState {
  std::string sets;
  std::string fn = "halpha:1";
  double kappa_min = 200.0;
  double kappa_max = 260.0;
  int samples = 31;
  std::string averaging = "window";
  int nodes = 0;
  std::string csv;
};

void add_mutualinfo(CLI::App& app, Output& out) {
  auto st = std::make_shared<MutualState>();
  auto* cmd =
      app.add_subcommand("mutualinfo",
                         "Cutoff-sweep trace combination for separated "
                         "groups, with the closed-form reference")
          ->configurable(true);
  cmd->add_option("--sets", st->sets, "partition 'a,b;c,d|e,f'")->required();
  cmd->add_option("--fn", st->fn, "test function")->capture_default_str();
  cmd->add_option("--kappa-min", st->kappa_min, "sweep start")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--kappa-max", st->kappa_max, "sweep end")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--samples", st->samples, "sweep sample count")
      ->capture_default_str()
      ->check(CLI::Range(1, 100000));
  cmd->add_option("--averaging", st->averaging, "window | none")
      ->capture_default_str()
      ->check(CLI::IsMember({"window", "none"}));
  cmd->add_option("--nodes", st->nodes,
                  "fixed nodes per interval (0 = resolve the oscillation)")
      ->capture_default_str();
  cmd->add_option("--csv", st->csv, "write per-cutoff samples to this file");
  on_run(cmd, out, [st, &out] {
    const Partition p = parse_partition(st->sets);
    const TestFunction f = parse_test_function(st->fn);
    SweepConfig cfg;
    cfg.kappa_min = st->kappa_min;
    cfg.kappa_max = st->kappa_max;
    cfg.samples = st->samples;
    cfg.averaging = averaging_from(st->averaging);
    cfg.nodes = policy_from(st->nodes);
    if (st->samples < 3 && cfg.averaging == Averaging::window_mean) {
      std::cerr << "warning: fewer than 3 samples; averaging disabled and "
                   "the error bar is not meaningful\n";
    }
    const TraceEstimate est =
        delta_trace_cutoff(p.first, p.second, f, cfg);
    const ClosedFormResult cf = n_interval_trace(p, f);
    const double one_sided = est.value / est.chirality_factor;
    const double rel_dev = std::abs(one_sided - cf.value) / std::abs(cf.value);
    if (!st->csv.empty()) {
      write_file(st->csv, [&](std::ostream& os) { write_sweep_csv(os, est); });
    }
    report_json inputs;
    inputs["sets"] = st->sets;
    inputs["fn"] = st->fn;
    inputs["kappa_min"] = st->kappa_min;
    inputs["kappa_max"] = st->kappa_max;
    inputs["samples"] = st->samples;
    inputs["averaging"] = st->averaging;
    inputs["nodes"] = st->nodes;
    report_json results;
    results["estimate"] = to_report(est);
    results["one_sided_value"] = one_sided;
    results["closed_form"] = to_report(cf);
    results["relative_deviation"] = rel_dev;
    std::ostringstream text;
    text << "value = " << num(est.value) << "\n"
         << "error_bar = " << num(est.error_bar) << "\n"
         << "chirality_factor = " << est.chirality_factor << "\n"
         << "one_sided_value = " << num(one_sided) << "\n"
         << "closed_form = " << num(cf.value) << "\n"
         << "relative_deviation = " << num(rel_dev) << "\n";
    out.deliver(text.str(),
                report_envelope("mutualinfo", inputs, results, out.seed));
  });
}

// --- polytrace -------------------------------------------------------------

struct PolytraceState {
  std::string i1;
  std::string i2;
  int degree = 2;
  int nodes = 200;
};

void add_polytrace(CLI::App& app, Output& out) {
  auto st = std::make_shared<PolytraceState>();
  auto* cmd =
      app.add_subcommand("polytrace",
                         "Monomial trace combination through the half-space "
                         "block word expansion")
          ->configurable(true);
  cmd->add_option("--i1", st->i1, "first interval 'a,b'")->required();
  cmd->add_option("--i2", st->i2, "second interval 'a,b'")->required();
  cmd->add_option("--degree", st->degree, "monomial degree (2..8)")
      ->capture_default_str()
      ->check(CLI::Range(2, 8));
  cmd->add_option("--nodes", st->nodes, "quadrature nodes per block")
      ->capture_default_str()
      ->check(CLI::Range(2, kMaxNodesPerInterval));
  on_run(cmd, out, [st, &out] {
    const Interval a = parse_interval(st->i1);
    const Interval b = parse_interval(st->i2);
    const TraceEstimate est = delta_trace_poly(a, b, st->degree, st->nodes);
    const ClosedFormResult cf =
        two_interval_trace(a, b, make_monomial(st->degree));
    const double rel_dev =
        std::abs(est.value - cf.value) / std::abs(cf.value);
    report_json inputs;
    inputs["i1"] = st->i1;
    inputs["i2"] = st->i2;
    inputs["degree"] = st->degree;
    inputs["nodes"] = st->nodes;
    report_json results;
    results["estimate"] = to_report(est);
    results["closed_form"] = to_report(cf);
    results["relative_deviation"] = rel_dev;
    std::ostringstream text;
    text << "value = " << num(est.value) << "\n"
         << "imaginary_remainder = " << num(est.error_bar) << "\n"
         << "closed_form = " << num(cf.value) << "\n"
         << "relative_deviation = " << num(rel_dev) << "\n";
    out.deliver(text.str(),
                report_envelope("polytrace", inputs, results, out.seed));
  });
}

// --- schatten --------------------------------------------------------------

struct SchattenState {
  std::string i1;
  std::string i2;
  int n1 = 200;
  int n2 = 200;
  double p = 2.0;
};

void add_schatten(CLI::App& app, Output& out) {
  auto st = std::make_shared<SchattenState>();
  auto* cmd = app.add_subcommand(
                     "schatten",
                     "Schatten norm of the cross-correlation block between "
                     "two separated intervals")
                  ->configurable(true);
  cmd->add_option("--i1", st->i1, "first interval 'a,b'")->required();
  cmd->add_option("--i2", st->i2, "second interval 'a,b'")->required();
  cmd->add_option("--n1", st->n1, "nodes on the first interval")
      ->capture_default_str()
      ->check(CLI::Range(1, kMaxNodesPerInterval));
  cmd->add_option("--n2", st->n2, "nodes on the second interval")
      ->capture_default_str()
      ->check(CLI::Range(1, kMaxNodesPerInterval));
  cmd->add_option("--p", st->p, "norm order, p >= 1")
      ->capture_default_str()
      ->check(CLI::Range(1.0, 1e6));
  on_run(cmd, out, [st, &out] {
    const CrossBlock block = assemble_cross_block(
        parse_interval(st->i1), parse_interval(st->i2), st->n1, st->n2);
    const SchattenResult r = schatten_norm_detailed(block, st->p);
    report_json inputs;
    inputs["i1"] = st->i1;
    inputs["i2"] = st->i2;
    inputs["n1"] = st->n1;
    inputs["n2"] = st->n2;
    inputs["p"] = st->p;
    std::ostringstream text;
    text << "value = " << num(r.value) << "\n"
         << "tail_bound = " << num(r.tail_bound) << "\n";
    out.deliver(text.str(),
                report_envelope("schatten", inputs, to_report(r), out.seed));
  });
}

// --- intersect -------------------------------------------------------------

struct IntersectState {
  std::string i1;
  std::string i2;
  std::string fn = "halpha:1";
  std::string oracle = "none";
  int degree = 2;
  std::vector<double> eps{0.04, 0.02, 0.01};
  int nodes = 240;
  double kappa_min = 200.0;
  double kappa_max = 260.0;
  int samples = 21;
  std::string averaging = "window";
  double check_kappa = 0.0;
};

void add_intersect(CLI::App& app, Output& out) {
  auto st = std::make_shared<IntersectState>();
  auto* cmd =
      app.add_subcommand("intersect",
                         "Four-term combination for properly overlapping "
                         "intervals, with optional discretization oracles")
          ->configurable(true);
  cmd->add_option("--i1", st->i1, "first interval 'a,b'")->required();
  cmd->add_option("--i2", st->i2, "second interval 'a,b' (b may be inf)")
      ->required();
  cmd->add_option("--fn", st->fn, "test function")->capture_default_str();
  cmd->add_option("--oracle", st->oracle, "none | poly | sweep")
      ->capture_default_str()
      ->check(CLI::IsMember({"none", "poly", "sweep"}));
  cmd->add_option("--degree", st->degree, "monomial degree for --oracle poly")
      ->capture_default_str()
      ->check(CLI::Range(2, 8));
  cmd->add_option("--eps", st->eps,
                  "retraction widths for --oracle poly (>= 3 values)")
      ->capture_default_str()
      ->expected(-1);
  cmd->add_option("--nodes", st->nodes, "nodes per block for --oracle poly")
      ->capture_default_str()
      ->check(CLI::Range(2, kMaxNodesPerInterval));
  cmd->add_option("--kappa-min", st->kappa_min, "sweep start for --oracle sweep")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--kappa-max", st->kappa_max, "sweep end for --oracle sweep")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--samples", st->samples, "sweep sample count")
      ->capture_default_str()
      ->check(CLI::Range(1, 100000));
  cmd->add_option("--averaging", st->averaging, "window | none")
      ->capture_default_str()
      ->check(CLI::IsMember({"window", "none"}));
  cmd->add_option("--check-kappa", st->check_kappa,
                  "also verify the two-term decomposition at this cutoff")
      ->capture_default_str();
  on_run(cmd, out, [st, &out] {
    const Interval a = parse_interval(st->i1);
    const Interval b = parse_interval(st->i2);
    const TestFunction f = parse_test_function(st->fn);
    const ClosedFormResult cf = intersecting_trace(a, b, f);

    report_json inputs;
    inputs["i1"] = st->i1;
    inputs["i2"] = st->i2;
    inputs["fn"] = st->fn;
    inputs["oracle"] = st->oracle;
    report_json results;
    results["closed_form"] = to_report(cf);

    std::ostringstream text;
    text << "closed_form = " << num(cf.value) << "\n"
         << "conjectural = " << (cf.conjectural ? "yes" : "no") << "\n";

    if (st->oracle == "poly") {
      inputs["degree"] = st->degree;
      inputs["eps"] = st->eps;
      inputs["nodes"] = st->nodes;
      const TraceEstimate est =
          f_trace_poly_limit(a, b, st->degree, st->eps, st->nodes);
      const ClosedFormResult ref =
          intersecting_trace(a, b, make_monomial(st->degree));
      const double rel_dev =
          std::abs(est.value - ref.value) / std::abs(ref.value);
      report_json oracle;
      oracle["kind"] = "poly";
      oracle["estimate"] = to_report(est);
      oracle["reference"] = to_report(ref);
      oracle["relative_deviation"] = rel_dev;
      results["oracle"] = oracle;
      text << "oracle_value = " << num(est.value) << "\n"
           << "oracle_reference = " << num(ref.value) << "\n"
           << "oracle_relative_deviation = " << num(rel_dev) << "\n";
    } else if (st->oracle == "sweep") {
      inputs["kappa_min"] = st->kappa_min;
      inputs["kappa_max"] = st->kappa_max;
      inputs["samples"] = st->samples;
      inputs["averaging"] = st->averaging;
      SweepConfig cfg;
      cfg.kappa_min = st->kappa_min;
      cfg.kappa_max = st->kappa_max;
      cfg.samples = st->samples;
      cfg.averaging = averaging_from(st->averaging);
      const TraceEstimate est = f_trace_cutoff(a, b, f, cfg);
      const double one_sided = est.value / est.chirality_factor;
      const double rel_dev =
          std::abs(one_sided - cf.value) / std::abs(cf.value);
      report_json oracle;
      oracle["kind"] = "sweep";
      oracle["estimate"] = to_report(est);
      oracle["one_sided_value"] = one_sided;
      oracle["relative_deviation"] = rel_dev;
      results["oracle"] = oracle;
      text << "oracle_one_sided = " << num(one_sided) << "\n"
           << "oracle_relative_deviation = " << num(rel_dev) << "\n";
    }

    if (st->check_kappa > 0.0) {
      inputs["check_kappa"] = st->check_kappa;
      const auto [four_term, decomposed] =
          f_trace_decomposition_check(a, b, f, st->check_kappa);
      report_json dec;
      dec["four_term"] = four_term;
      dec["decomposed"] = decomposed;
      dec["difference"] = std::abs(four_term - decomposed);
      results["decomposition"] = dec;
      text << "decomposition_four_term = " << num(four_term) << "\n"
           << "decomposition_two_term = " << num(decomposed) << "\n"
           << "decomposition_difference = "
           << num(std::abs(four_term - decomposed)) << "\n";
    }

    out.deliver(text.str(),
                report_envelope("intersect", inputs, results, out.seed));
  });
}

// --- widom -----------------------------------------------------------------

struct WidomState {
  std::string i1;
  std::string i2;
  std::string fn = "halpha:1";
};

void add_widom(CLI::App& app, Output& out) {
  auto st = std::make_shared<WidomState>();
  auto* cmd =
      app.add_subcommand("widom",
                         "Mollified quadratic-combination estimate with "
                         "collar-width extrapolation")
          ->configurable(true);
  cmd->add_option("--i1", st->i1, "first interval 'a,b'")->required();
  cmd->add_option("--i2", st->i2, "second interval 'a,b'")->required();
  cmd->add_option("--fn", st->fn, "test function")->capture_default_str();
  on_run(cmd, out, [st, &out] {
    const Interval a = parse_interval(st->i1);
    const Interval b = parse_interval(st->i2);
    const TestFunction f = parse_test_function(st->fn);
    const RichardsonResult rich = widom_richardson(a, b, f);
    const ClosedFormResult cf = two_interval_trace(a, b, f);
    const double rel_dev =
        std::abs(rich.value - cf.value) / std::abs(cf.value);
    report_json inputs;
    inputs["i1"] = st->i1;
    inputs["i2"] = st->i2;
    inputs["fn"] = st->fn;
    report_json results;
    results["extrapolated"] = to_report(rich);
    results["closed_form"] = to_report(cf);
    results["relative_deviation"] = rel_dev;
    std::ostringstream text;
    text << "value = " << num(rich.value) << "\n"
         << "error_estimate = " << num(rich.error_estimate) << "\n"
         << "closed_form = " << num(cf.value) << "\n"
         << "relative_deviation = " << num(rel_dev) << "\n";
    out.deliver(text.str(),
                report_envelope("widom", inputs, results, out.seed));
  });
}

// --- herglotz --------------------------------------------------------------

struct HerglotzState {
  double alpha = 0.5;
  double t = 0.5;
};

void add_herglotz(CLI::App& app, Output& out) {
  auto st = std::make_shared<HerglotzState>();
  auto* cmd =
      app.add_subcommand("herglotz",
                         "Entropy density from its spectral-average "
                         "representation, against direct evaluation")
          ->configurable(true);
  cmd->add_option("--alpha", st->alpha, "entropy order in [0.05, 1]")
      ->required()
      ->check(CLI::Range(0.05, 1.0));
  cmd->add_option("--t", st->t, "argument in (0,1)")->required();
  on_run(cmd, out, [st, &out] {
    const bool vn = std::abs(st->alpha - 1.0) < 1e-9;
    const double via_average =
        vn ? von_neumann_eval(st->t) : herglotz_eval(st->alpha, st->t);
    const double direct = make_renyi(st->alpha).eval(st->t);
    const double diff = std::abs(via_average - direct);
    report_json inputs;
    inputs["alpha"] = st->alpha;
    inputs["t"] = st->t;
    report_json results;
    results["spectral_average"] = via_average;
    results["direct"] = direct;
    results["difference"] = diff;
    std::ostringstream text;
    text << "spectral_average = " << num(via_average) << "\n"
         << "direct = " << num(direct) << "\n"
         << "difference = " << num(diff) << "\n";
    out.deliver(text.str(),
                report_envelope("herglotz", inputs, results, out.seed));
  });
}

// --- asymptotics -----------------------------------------------------------

struct AsymptoticsState {
  std::string i1;
  std::string templ;
  double alpha = 1.0;
  std::vector<double> r;
  std::string csv;
};

void add_asymptotics(CLI::App& app, Output& out) {
  auto st = std::make_shared<AsymptoticsState>();
  auto* cmd =
      app.add_subcommand("asymptotics",
                         "Closed form against its leading large-separation "
                         "term over a table of gaps")
          ->configurable(true);
  cmd->add_option("--i1", st->i1, "fixed interval 'a,b'")->required();
  cmd->add_option("--template", st->templ,
                  "interval shape placed at each gap (b may be inf)")
      ->required();
  cmd->add_option("--alpha", st->alpha, "entropy order")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--r", st->r, "gap values")->required()->expected(-1);
  cmd->add_option("--csv", st->csv, "write the table to this CSV file");
  on_run(cmd, out, [st, &out] {
    const std::vector<AsymptoticRow> rows = asymptotic_check(
        parse_interval(st->i1), parse_interval(st->templ), st->alpha, st->r);
    if (!st->csv.empty()) {
      write_file(st->csv,
                 [&](std::ostream& os) { write_asymptotics_csv(os, rows); });
    }
    report_json inputs;
    inputs["i1"] = st->i1;
    inputs["template"] = st->templ;
    inputs["alpha"] = st->alpha;
    inputs["r"] = st->r;
    std::ostringstream text;
    text << "r exact leading ratio\n";
    for (const auto& row : rows) {
      text << num(row.r) << ' ' << num(row.exact) << ' ' << num(row.leading)
           << ' ' << num(row.ratio) << "\n";
    }
    out.deliver(text.str(), report_envelope("asymptotics", inputs,
                                            to_report(rows), out.seed));
  });
}

// --- suite -----------------------------------------------------------------

struct SuiteState {
  std::vector<int> only;
};

void add_suite(CLI::App& app, Output& out) {
  auto st = std::make_shared<SuiteState>();
  auto* cmd = app.add_subcommand(
                     "suite", "Cross-validation battery; exits 0 only if "
                              "every criterion passes")
                  ->configurable(true);
  cmd->add_option("--only", st->only, "criterion ids to run (default: all)")
      ->expected(-1)
      ->check(CLI::Range(1, 15));
  on_run(cmd, out, [st, &out] {
    const std::vector<CriterionResult> results = run_suite(st->only);
    std::vector<int> failed;
    report_json arr = report_json::array();
    std::ostringstream text;
    for (const auto& r : results) {
      if (!r.passed) failed.push_back(r.id);
      text << format_criterion_line(r) << "\n";
      report_json row;
      row["id"] = r.id;
      row["name"] = r.name;
      row["passed"] = r.passed;
      row["measured"] = r.measured;
      row["tolerance"] = r.tolerance;
      row["detail"] = r.detail;
      arr.push_back(row);
    }
    text << "suite: " << (results.size() - failed.size()) << "/"
         << results.size() << " passed";
    if (!failed.empty()) {
      text << "; failing:";
      for (int id : failed) text << ' ' << id;
    }
    text << "\n";
    report_json inputs;
    inputs["only"] = st->only;
    report_json res;
    res["criteria"] = arr;
    res["all_passed"] = failed.empty();
    res["failed_ids"] = failed;
    out.deliver(text.str(),
                report_envelope("suite", inputs, res, out.seed));
    if (!failed.empty()) out.exit_code = 1;
  });
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{
      "entkit: closed-form entanglement-entropy trace combinations for "
      "interval unions, cross-validated by spectral discretizations"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "read options from an INI key=value file (subcommand "
                 "options live in their [section])");

  Output out;
  app.add_option("--format", out.format, "text | json")
      ->capture_default_str()
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", out.out_path, "write the report to this file");
  app.add_option("--seed", out.seed,
                 "echoed into reports; all computations are deterministic")
      ->capture_default_str();

  add_formula(app, out);
  add_ucoef(app, out);
  add_spectrum(app, out);
  add_mutualinfo(app, out);
  add_polytrace(app, out);
  add_schatten(app, out);
  add_intersect(app, out);
  add_widom(app, out);
  add_herglotz(app, out);
  add_asymptotics(app, out);
  add_suite(app, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const argument_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const geometry_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const resource_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const numerical_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return out.exit_code;
}

}  // namespace entkit
