#pragma once

#include <string>
#include <vector>

namespace entkit {

// One cross-validation criterion: a measured discrepancy against a pinned
// tolerance. Tolerances live in the implementations and are not knobs.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double measured = 0.0;   // worst discrepancy observed
  double tolerance = 0.0;  // pinned bound it must stay under
  std::string detail;
};

std::vector<int> suite_ids();

CriterionResult run_criterion(int id);

// Canonical one-line rendering: PASS/FAIL, id, name, measured, tolerance,
// then the per-subcheck detail.
std::string format_criterion_line(const CriterionResult& r);

// Runs the listed criteria (all of them when only is empty), in id order.
std::vector<CriterionResult> run_suite(const std::vector<int>& only = {});

}  // namespace entkit
