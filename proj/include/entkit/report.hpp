#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "entkit/closedform.hpp"
#include "entkit/geometry.hpp"
#include "entkit/specops.hpp"
#include "entkit/testfns.hpp"
#include "entkit/traces.hpp"
#include "entkit/widom.hpp"

namespace entkit {

// Key order is fixed at insertion so that identical runs serialize to
// identical bytes.
using report_json = nlohmann::ordered_json;

report_json to_report(const Interval& iv);
report_json to_report(const IntervalSet& s);
report_json to_report(const UCoefficient& u);
report_json to_report(const ClosedFormResult& r);
report_json to_report(const TraceEstimate& e);
report_json to_report(const SpectrumResult& s);
report_json to_report(const SchattenResult& s);
report_json to_report(const EntropySumResult& s);
report_json to_report(const BesovValue& b);
report_json to_report(const RichardsonResult& r);
report_json to_report(const std::vector<AsymptoticRow>& rows);

// Top-level envelope shared by every machine-readable command output.
report_json report_envelope(const std::string& command,
                            const report_json& inputs,
                            const report_json& results, long seed);

std::string render_report(const report_json& doc);

void write_sweep_csv(std::ostream& os, const TraceEstimate& e);
void write_asymptotics_csv(std::ostream& os,
                           const std::vector<AsymptoticRow>& rows);

}  // namespace entkit
