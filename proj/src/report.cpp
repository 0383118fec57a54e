#include "entkit/report.hpp"

#include <ostream>

namespace entkit {

report_json to_report(const Interval& iv) {
  report_json j;
  j["a"] = iv.a;
  if (iv.unbounded()) {
    j["b"] = "inf";
  } else {
    j["b"] = iv.b;
  }
  return j;
}

report_json to_report(const IntervalSet& s) {
  report_json arr = report_json::array();
  for (const auto& iv : s.parts) arr.push_back(to_report(iv));
  return arr;
}

report_json to_report(const UCoefficient& u) {
  report_json j;
  j["sigma1"] = u.sigma1;
  j["sigma2"] = u.sigma2;
  j["value"] = u.value;
  j["quadrature_error"] = u.quadrature_error;
  return j;
}

report_json to_report(const ClosedFormResult& r) {
  report_json j;
  j["value"] = r.value;
  j["formula"] = formula_id_name(r.formula_id);
  j["conjectural"] = r.conjectural;
  j["inputs"] = r.inputs;
  return j;
}

report_json to_report(const TraceEstimate& e) {
  report_json j;
  j["value"] = e.value;
  j["error_bar"] = e.error_bar;
  j["chirality_factor"] = e.chirality_factor;
  report_json samples = report_json::array();
  for (const auto& s : e.per_kappa) {
    report_json row;
    row["kappa"] = s.kappa;
    row["raw"] = s.raw;
    samples.push_back(row);
  }
  j["per_kappa"] = samples;
  return j;
}

report_json to_report(const SpectrumResult& s) {
  report_json j;
  const Eigen::Index n = s.eigenvalues.size();
  j["count"] = n;
  j["trace"] = s.eigenvalues.sum();
  j["max"] = n > 0 ? s.eigenvalues(0) : 0.0;
  j["min"] = n > 0 ? s.eigenvalues(n - 1) : 0.0;
  j["residual_norm"] = s.residual_norm;
  report_json vals = report_json::array();
  for (Eigen::Index i = 0; i < n; ++i) vals.push_back(s.eigenvalues(i));
  j["eigenvalues"] = vals;
  return j;
}

report_json to_report(const SchattenResult& s) {
  report_json j;
  j["value"] = s.value;
  j["tail_bound"] = s.tail_bound;
  return j;
}

report_json to_report(const EntropySumResult& s) {
  report_json j;
  j["value"] = s.value;
  j["clipped_low"] = s.clipped_low;
  j["clipped_high"] = s.clipped_high;
  j["worst_excursion"] = s.worst_excursion;
  j["warn"] = s.warn;
  return j;
}

report_json to_report(const BesovValue& b) {
  report_json j;
  j["value"] = b.value;
  j["quadrature_error"] = b.quadrature_error;
  return j;
}

report_json to_report(const RichardsonResult& r) {
  report_json j;
  j["value"] = r.value;
  j["error_estimate"] = r.error_estimate;
  j["eps0"] = r.eps0;
  j["raw"] = {r.raw[0], r.raw[1], r.raw[2]};
  return j;
}

report_json to_report(const std::vector<AsymptoticRow>& rows) {
  report_json arr = report_json::array();
  for (const auto& row : rows) {
    report_json j;
    j["r"] = row.r;
    j["exact"] = row.exact;
    j["leading"] = row.leading;
    j["ratio"] = row.ratio;
    arr.push_back(j);
  }
  return arr;
}

report_json report_envelope(const std::string& command,
                            const report_json& inputs,
                            const report_json& results, long seed) {
  report_json j;
  j["tool"] = "entkit";
  j["schema"] = "entkit-report-v1";
  j["command"] = command;
  j["seed"] = seed;
  j["inputs"] = inputs;
  j["results"] = results;
  return j;
}

std::string render_report(const report_json& doc) {
  return doc.dump(2) + "\n";
}

void write_sweep_csv(std::ostream& os, const TraceEstimate& e) {
  os << "# entkit-sweep-csv v1\n";
  os << "kappa,raw\n";
  const auto prec = os.precision(17);
  for (const auto& s : e.per_kappa) {
    os << s.kappa << ',' << s.raw << '\n';
  }
  os.precision(prec);
}

void write_asymptotics_csv(std::ostream& os,
                           const std::vector<AsymptoticRow>& rows) {
  os << "# entkit-asymptotics-csv v1\n";
  os << "r,exact,leading,ratio\n";
  const auto prec = os.precision(17);
  for (const auto& row : rows) {
    os << row.r << ',' << row.exact << ',' << row.leading << ',' << row.ratio
       << '\n';
  }
  os.precision(prec);
}

}  // namespace entkit
