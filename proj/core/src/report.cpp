#include "ucgl/report.hpp"

#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>

#include "ucgl/error.hpp"

namespace ucgl {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json roots_json(const std::vector<RootPair>& roots) {
  ordered_json out = ordered_json::array();
  for (const auto& r : roots) out.push_back({r.i, r.j});
  return out;
}

std::vector<RootPair> roots_from(const nlohmann::json& j) {
  std::vector<RootPair> out;
  for (const auto& pair : j) out.push_back(RootPair{pair.at(0).get<int>(), pair.at(1).get<int>()});
  return out;
}

std::string escape_cell(const std::string& text) {
  std::string out;
  for (const char c : text) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

std::string format_residual(double x) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << x;
  return os.str();
}

}  // namespace

std::string report_to_json(const VerificationReport& report, bool include_timing) {
  ordered_json j;
  j["n"] = report.n;
  j["seed"] = report.seed;
  j["suite"] = report.suite;
  ordered_json checks = ordered_json::array();
  for (const auto& c : report.checks) {
    ordered_json item;
    item["name"] = c.name;
    item["anchor"] = c.anchor;
    item["samples"] = c.samples;
    item["max_residual"] = c.max_residual;
    item["tol"] = c.tol;
    item["pass"] = c.pass;
    checks.push_back(std::move(item));
  }
  j["checks"] = std::move(checks);
  j["root_sets"] = {{"R1", roots_json(report.root_sets.r1)},
                    {"R1p", roots_json(report.root_sets.r1p)},
                    {"survivor_count", report.root_sets.survivor_count}};
  j["measurements"] = ordered_json::object();
  for (const auto& [k, v] : report.measurements) j["measurements"][k] = v;
  j["notes"] = ordered_json::object();
  for (const auto& [k, v] : report.notes) j["notes"][k] = v;
  if (include_timing) {
    j["timing"] = ordered_json::object();
    for (const auto& [k, v] : report.timing) j["timing"][k] = v;
  }
  return j.dump(2) + "\n";
}

VerificationReport report_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    VerificationReport r;
    r.n = j.at("n").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.suite = j.at("suite").get<std::string>();
    for (const auto& c : j.at("checks")) {
      r.checks.push_back(CheckResult{c.at("name").get<std::string>(), c.at("anchor").get<std::string>(),
                                     c.at("samples").get<std::size_t>(), c.at("max_residual").get<double>(),
                                     c.at("tol").get<double>(), c.at("pass").get<bool>()});
    }
    const auto& rs = j.at("root_sets");
    r.root_sets.n = r.n;
    r.root_sets.r1 = roots_from(rs.at("R1"));
    r.root_sets.r1p = roots_from(rs.at("R1p"));
    r.root_sets.survivor_count = rs.at("survivor_count").get<int>();
    if (j.contains("measurements"))
      for (const auto& [k, v] : j["measurements"].items()) r.measurements[k] = v.get<double>();
    if (j.contains("notes"))
      for (const auto& [k, v] : j["notes"].items()) r.notes[k] = v.get<std::string>();
    if (j.contains("timing"))
      for (const auto& [k, v] : j["timing"].items()) r.timing[k] = v.get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::usage_error, std::string("report: ") + e.what());
  }
}

std::string report_to_markdown(const VerificationReport& report) {
  std::ostringstream os;
  os << "# Verification report\n\n";
  os << "- n: " << report.n << "\n- seed: " << report.seed << "\n- suite: " << report.suite << "\n";
  os << "- root sets: R1 = {";
  for (std::size_t i = 0; i < report.root_sets.r1.size(); ++i)
    os << (i ? ", " : "") << "(" << report.root_sets.r1[i].i << "," << report.root_sets.r1[i].j << ")";
  os << "}, R1' = {";
  for (std::size_t i = 0; i < report.root_sets.r1p.size(); ++i)
    os << (i ? ", " : "") << "(" << report.root_sets.r1p[i].i << "," << report.root_sets.r1p[i].j << ")";
  os << "}, survivors = " << report.root_sets.survivor_count << "\n\n";

  os << "| check | property | samples | max residual | tol | result |\n";
  os << "|---|---|---|---|---|---|\n";
  for (const auto& c : report.checks) {
    os << "| " << c.name << " | " << escape_cell(c.anchor) << " | " << c.samples << " | " << format_residual(c.max_residual)
       << " | " << format_residual(c.tol) << " | " << (c.pass ? "pass" : "FAIL") << " |\n";
  }
  if (!report.measurements.empty() || !report.notes.empty()) {
    os << "\n## Measurements\n\n";
    for (const auto& [k, v] : report.measurements) os << "- " << k << ": " << v << "\n";
    for (const auto& [k, v] : report.notes) os << "- " << k << ": " << v << "\n";
  }
  os << "\n" << (report.all_pass() ? "All checks passed." : "Some checks FAILED.") << "\n";
  return os.str();
}

SuiteConfig config_from_json(const std::string& text, SuiteConfig base) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (!j.is_object()) throw Error(ErrorKind::usage_error, "config must be a JSON object");
    if (j.contains("n")) base.n = j["n"].get<int>();
    if (j.contains("seed")) base.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("suite")) base.suite = j["suite"].get<std::string>();
    if (j.contains("samples")) base.samples = j["samples"].get<std::size_t>();
    if (j.contains("tol")) base.tol = j["tol"].get<double>();
    if (j.contains("budget")) base.search_budget = j["budget"].get<double>();
    return base;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::usage_error, std::string("config: ") + e.what());
  }
}

}  // namespace ucgl
