// One line per acceptance criterion; exit status 0 only when all pass.

#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "nctlab/harness.hpp"

namespace {

// Distance to failure on a log scale: positive when passing.
double margin(const nct::CheckResult& r) {
  if (!std::isfinite(r.metric)) return -1e300;
  const double m = std::max(std::abs(r.metric), 1e-300);
  return r.comparison == nct::Comparison::at_most ? std::log(r.tolerance / m) : std::log(m / r.tolerance);
}

}  // namespace

int main() {
  const nct::SuiteConfig config = nct::SuiteConfig::defaults();
  const auto first = nct::run_suite(config);
  const auto second = nct::run_suite(config);
  const bool identical = nct::report_json(first) == nct::report_json(second);

  std::map<std::string, int> criterion_of;
  std::map<int, std::vector<std::string>> names_of;
  for (const auto& info : nct::check_registry()) {
    criterion_of[info.name] = info.criterion;
    names_of[info.criterion].push_back(info.name);
  }

  std::map<int, std::vector<const nct::CheckResult*>> grouped;
  for (const auto& r : first) grouped[criterion_of.at(r.name)].push_back(&r);

  int failures = 0;
  for (const auto& [criterion, names] : names_of) {
    std::string label;
    for (const auto& n : names) label += (label.empty() ? "" : "+") + n;
    const auto& rs = grouped[criterion];
    bool pass = !rs.empty();
    const nct::CheckResult* worst = nullptr;
    for (const auto* r : rs) {
      pass = pass && r->pass;
      if (!worst || margin(*r) < margin(*worst)) worst = r;
    }
    if (criterion == 15) pass = pass && identical;
    if (!pass) ++failures;
    if (worst) {
      std::printf("[%s] %2d %-38s worst=%.3e %s %.1e (%zu points)\n", pass ? "PASS" : "FAIL", criterion,
                  label.c_str(), worst->metric, worst->comparison == nct::Comparison::at_most ? "<=" : ">=",
                  worst->tolerance, rs.size());
    } else {
      std::printf("[FAIL] %2d %-38s no results\n", criterion, label.c_str());
    }
  }
  std::printf("outer determinism: reports %s\n", identical ? "byte-identical" : "DIFFER");
  std::printf("%d of %zu criteria failed\n", failures, names_of.size());
  return failures == 0 ? 0 : 1;
}
