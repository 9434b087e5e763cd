#pragma once

// Verification suites and the report they produce.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ucgl/stokes.hpp"

namespace ucgl {

struct CheckResult {
  std::string name;
  std::string anchor;  // the property being checked, in a few words
  std::size_t samples = 0;
  double max_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct SuiteConfig {
  int n = 2;
  std::uint64_t seed = 42;
  std::string suite = "all";
  std::optional<std::size_t> samples;  // overrides every per-check sample count
  std::optional<double> tol;           // overrides tolerances of exact algebraic identities
  double search_budget = 60.0;
};

struct VerificationReport {
  int n = 0;
  std::uint64_t seed = 0;
  std::string suite;
  std::vector<CheckResult> checks;  // sorted by name
  RootSetData root_sets;
  std::map<std::string, double> measurements;  // measured, not asserted
  std::map<std::string, std::string> notes;    // measured, not asserted
  std::map<std::string, double> timing;         // seconds per check plus "total"

  bool all_pass() const;
};

const std::vector<std::string>& known_suites();

/// Runs one suite. Throws usage-error for an unknown suite name and
/// search-failure when the root sets cannot be derived.
VerificationReport run_suite(const SuiteConfig& config);

/// Same, with root sets supplied by the caller.
VerificationReport run_suite(const SuiteConfig& config, const RootSetData& rs);

std::string report_to_json(const VerificationReport& report, bool include_timing = true);
VerificationReport report_from_json(const std::string& text);
std::string report_to_markdown(const VerificationReport& report);

/// Reads n, seed, suite, samples and tol from a JSON config file.
SuiteConfig config_from_json(const std::string& text, SuiteConfig base = {});

}  // namespace ucgl
