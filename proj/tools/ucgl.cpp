#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "ucgl/error.hpp"
#include "ucgl/groupoid.hpp"
#include "ucgl/io.hpp"
#include "ucgl/report.hpp"

namespace {

enum ExitCode : int { kPass = 0, kCheckFailure = 1, kUsage = 2, kSearchFailure = 3 };

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ucgl::Error(ucgl::ErrorKind::usage_error, "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ucgl::Error(ucgl::ErrorKind::usage_error, "cannot write '" + path + "'");
  out << text;
}

int exit_code_for(const ucgl::Error& e) {
  switch (e.kind()) {
    case ucgl::ErrorKind::usage_error:
    case ucgl::ErrorKind::invalid_dimension:
      return kUsage;
    case ucgl::ErrorKind::search_failure:
      return kSearchFailure;
    default:
      return kCheckFailure;
  }
}

struct DeriveArgs {
  int n = 0;
  double budget = 60.0;
  std::string out;
};

int run_derive(const DeriveArgs& args) {
  const auto rs = ucgl::derive_root_sets(args.n, args.budget);
  write_output(args.out, ucgl::root_sets_to_json(rs));
  std::cerr << "n=" << rs.n << ": " << rs.survivor_count << " surviving candidate(s)\n";
  return kPass;
}

struct VerifyArgs {
  std::optional<int> n;
  std::optional<std::string> suite;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<double> tol;
  std::string format = "json";
  std::string out;
  std::string config;
};

int run_verify(const VerifyArgs& args) {
  ucgl::SuiteConfig cfg;
  if (!args.config.empty()) cfg = ucgl::config_from_json(read_file(args.config), cfg);
  if (args.n) cfg.n = *args.n;
  if (args.suite) cfg.suite = *args.suite;
  if (args.seed) cfg.seed = *args.seed;
  if (args.samples) cfg.samples = *args.samples;
  if (args.tol) cfg.tol = *args.tol;
  if (!args.n && args.config.empty()) throw ucgl::Error(ucgl::ErrorKind::usage_error, "--n is required");

  const auto report = ucgl::run_suite(cfg);
  write_output(args.out, args.format == "md" ? ucgl::report_to_markdown(report) : ucgl::report_to_json(report));
  std::size_t failed = 0;
  for (const auto& c : report.checks) {
    if (!c.pass) {
      ++failed;
      std::cerr << "FAIL " << c.name << ": " << c.max_residual << " >= " << c.tol << "\n";
    }
  }
  std::cerr << report.checks.size() - failed << "/" << report.checks.size() << " checks passed\n";
  return failed == 0 ? kPass : kCheckFailure;
}

struct SampleArgs {
  int n = 0;
  std::uint64_t seed = 0;
  std::size_t count = 0;
  std::string out;
};

int run_sample(const SampleArgs& args) {
  const auto rs = ucgl::load_or_derive_root_sets(args.n);
  std::vector<ucgl::SampledPoint> points;
  points.reserve(args.count);
  bool all_members = true;
  for (std::size_t i = 0; i < args.count; ++i) {
    const std::uint64_t sd = args.seed * 0x9e3779b97f4a7c15ull + 2 * i + 1;
    const auto a = ucgl::build_M(rs, ucgl::random_local_params(args.n, sd));
    auto p = ucgl::sample_slocal_fiber(rs, a, sd + 1);
    const auto flags = ucgl::slocal_membership(rs, p, 1e-8);
    all_members = all_members && flags.fixed_route && flags.direct_route;
    points.push_back({std::move(p), flags});
  }
  write_output(args.out, ucgl::sampled_points_to_json(points));
  return all_members ? kPass : kCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stokes-groupoid verification tool"};
  app.require_subcommand(1);

  DeriveArgs derive;
  auto* derive_cmd = app.add_subcommand("derive-roots", "Search for the root subsets and write them as JSON");
  derive_cmd->add_option("--n", derive.n, "Rank parameter")->required()->check(CLI::Range(1, 6));
  derive_cmd->add_option("--budget", derive.budget, "Search time budget in seconds")->check(CLI::PositiveNumber);
  derive_cmd->add_option("--out", derive.out, "Output file")->required();

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite and emit a report");
  verify_cmd->add_option("--n", verify.n, "Rank parameter")->check(CLI::Range(1, 6));
  verify_cmd->add_option("--suite", verify.suite, "Suite name")->check(CLI::IsMember(ucgl::known_suites()));
  verify_cmd->add_option("--seed", verify.seed, "Random seed");
  verify_cmd->add_option("--samples", verify.samples, "Override every per-check sample count");
  verify_cmd->add_option("--tol", verify.tol, "Override tolerances of exact algebraic identities")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--format", verify.format, "Report format")->check(CLI::IsMember({"json", "md"}));
  verify_cmd->add_option("--out", verify.out, "Output file (stdout when omitted)");
  verify_cmd->add_option("--config", verify.config, "JSON config file; flags take precedence");

  SampleArgs sample;
  auto* sample_cmd = app.add_subcommand("sample-slocal", "Sample points of S^local and write them as JSON");
  sample_cmd->add_option("--n", sample.n, "Rank parameter")->required()->check(CLI::Range(1, 6));
  sample_cmd->add_option("--seed", sample.seed, "Random seed")->required();
  sample_cmd->add_option("--count", sample.count, "Number of points")->required();
  sample_cmd->add_option("--out", sample.out, "Output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*derive_cmd) return run_derive(derive);
    if (*verify_cmd) return run_verify(verify);
    return run_sample(sample);
  } catch (const ucgl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailure;
  }
}
