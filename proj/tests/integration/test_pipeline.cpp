#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "oracle.hpp"
#include "ucgl/groupoid.hpp"
#include "ucgl/io.hpp"
#include "ucgl/report.hpp"

using namespace ucgl;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("every suite passes at n = 1 and the report survives a JSON round trip") {
  SuiteConfig cfg;
  cfg.n = 1;
  const auto report = run_suite(cfg);
  for (const auto& c : report.checks) {
    CAPTURE(c.name);
    CHECK(c.pass);
  }
  CHECK(report.checks.size() > 40);
  CHECK(report.measurements.at("slocal.c_reality_fraction") == 1.0);
  const auto back = report_from_json(report_to_json(report));
  CHECK(report_to_json(back, false) == report_to_json(report, false));
}

TEST_CASE("fresh derivation writes a cache that later runs reuse") {
  const auto dir = std::filesystem::temp_directory_path() / ("ucgl-pipeline-" + std::to_string(std::random_device{}()));
  std::optional<std::string> previous;
  if (const char* env = std::getenv("UCGL_ROOT_CACHE")) previous = env;
  setenv("UCGL_ROOT_CACHE", dir.c_str(), 1);

  const auto derived = load_or_derive_root_sets(3);
  const auto file = dir / "roots_n3.json";
  REQUIRE(std::filesystem::exists(file));
  const auto cached = root_sets_from_json(slurp(file));
  CHECK(cached.r1 == derived.r1);
  CHECK(cached.r1p == derived.r1p);
  SuiteConfig cfg;
  cfg.n = 3;
  cfg.suite = "stokes";
  cfg.samples = 5;
  const auto report = run_suite(cfg);
  CHECK(report.all_pass());
  CHECK(report.root_sets.r1 == derived.r1);

  if (previous) setenv("UCGL_ROOT_CACHE", previous->c_str(), 1);
  else unsetenv("UCGL_ROOT_CACHE");
  std::filesystem::remove_all(dir);
}

TEST_CASE("sampled S^local points reload as members") {
  for (int n = 1; n <= 3; ++n) {
    const auto rs = load_or_derive_root_sets(n);
    std::vector<SampledPoint> points;
    for (std::uint64_t i = 0; i < 8; ++i) {
      const auto p = sample_slocal_fiber(rs, build_M(rs, random_local_params(n, i + 1)), i + 50);
      points.push_back({p, slocal_membership(rs, p, 1e-9)});
    }
    for (const auto& sp : sampled_points_from_json(sampled_points_to_json(points))) {
      const auto flags = slocal_membership(rs, sp.point, 1e-9);
      CHECK(flags.fixed_route);
      CHECK(flags.direct_route);
      CHECK(z_membership(rs, sp.point.b, sp.point.a, 1e-9));
    }
  }
}
