#pragma once

// Verification suite: configuration, check registry, runner and reports.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nctlab/weyl.hpp"

namespace nct {

/// Bad configuration, filter or command line; maps to exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SuiteConfig {
  std::uint64_t seed = 20240611;
  std::map<std::string, double> tolerances;  // "tol.<check>[.<part>]" keys without the prefix
  std::vector<int> p{1, 2, 3};
  std::vector<double> theta{0.0, 0.18, 0.3, 0.45};
  std::vector<double> commutation_theta{0.0, 0.3, 0.5, 0.7};
  std::vector<cplx> tau{cplx(0.0, 1.0), cplx(0.3, 1.1)};
  std::vector<int> N{8};
  std::vector<int> grid{32};
  int chern_grid = 256;
  int projection_grid = 128;
  std::string output_dir;  // empty: checks write no files

  static SuiteConfig defaults();

  double tol(const std::string& key) const;
  /// Throws UsageError on an invalid value.
  void validate() const;
};

/// Flat "key = value" text, '#' comments, lists comma separated. Keys not
/// present keep their value from `base`.
SuiteConfig parse_config(std::string_view text, SuiteConfig base = SuiteConfig::defaults());
SuiteConfig load_config(const std::string& path, SuiteConfig base = SuiteConfig::defaults());

/// "a+bi", "bi", "i", "a" and "a,b" forms.
cplx parse_complex(std::string_view text);

enum class Comparison { at_most, at_least };

struct CheckResult {
  std::string name;
  int index = 0;
  nlohmann::ordered_json params;
  double metric = 0.0;
  double tolerance = 0.0;
  Comparison comparison = Comparison::at_most;
  bool pass = false;
  double runtime_ms = 0.0;
};

struct CheckInfo {
  std::string name;
  int criterion;  // acceptance criterion number
  std::string summary;
};

const std::vector<CheckInfo>& check_registry();

/// Runs every registered check whose name matches the glob (all when
/// absent), concurrently, and returns results sorted by (name, index).
/// Throws UsageError when the glob matches no check or the config is invalid.
std::vector<CheckResult> run_suite(const SuiteConfig& config,
                                   const std::optional<std::string>& filter = std::nullopt);

bool all_pass(const std::vector<CheckResult>& results);

enum class ReportFormat { json, text };

/// JSON omits runtime so that equal seeds give equal bytes.
std::string report_json(const std::vector<CheckResult>& results);
std::string report_text(const std::vector<CheckResult>& results);

/// Writes the report to `path`; throws std::runtime_error when it cannot.
void emit_report(const std::vector<CheckResult>& results, ReportFormat format, const std::string& path);

}  // namespace nct
