// Runs every verification suite for n = 1..4 and prints one PASS/FAIL line
// per acceptance criterion. The optional first argument is the path of the
// ucgl executable, used for the end-to-end criterion.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ucgl/report.hpp"
#include "ucgl/stokes.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::map<int, ucgl::VerificationReport> g_reports;

const ucgl::CheckResult* find_check(const ucgl::VerificationReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

// Requires the named checks to pass for every n in [lo, hi].
void require_checks(Verdict& v, const std::vector<std::string>& names, int lo = 1, int hi = 4) {
  for (int n = lo; n <= hi; ++n) {
    for (const auto& name : names) {
      const auto* c = find_check(g_reports.at(n), name);
      const std::string label = name + "@n=" + std::to_string(n);
      v.require(c != nullptr, label + " missing");
      if (c) v.require(c->pass, label + " residual " + std::to_string(c->max_residual));
    }
  }
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

Verdict ac1() {
  Verdict v;
  for (int n = 1; n <= 4; ++n) {
    const auto start = Clock::now();
    const auto rs = ucgl::derive_root_sets(n, 60.0);
    const double t = seconds_since(start);
    v.require(t < 60.0, "derivation time at n=" + std::to_string(n));
    v.require(ucgl::root_sets_admissible(rs), "admissible at n=" + std::to_string(n));
    v.detail << " n=" << n << ":" << t << "s,survivors=" << rs.survivor_count;
    if (n == 1) v.require(rs.r1.empty() && rs.r1p == std::vector<ucgl::RootPair>{{1, 0}}, "n=1 sets");
  }
  return v;
}

Verdict ac8() {
  Verdict v;
  require_checks(v, {"symplectic.multiplicativity"}, 1, 3);
  for (int n = 1; n <= 3; ++n) {
    const double t = g_reports.at(n).timing.at("symplectic.multiplicativity");
    v.require(t < 60.0, "runtime at n=" + std::to_string(n));
    v.detail << " n=" << n << ":" << t << "s";
  }
  return v;
}

Verdict ac12() {
  Verdict v;
  require_checks(v, {"symplectic.real_form_theta", "symplectic.real_form_joint", "symplectic.real_form_even_dimension"});
  for (int n = 1; n <= 4; ++n) {
    const auto& m = g_reports.at(n).measurements;
    const auto it = m.find("symplectic.joint_fixed_dimension.max");
    v.require(it != m.end(), "dimension measurement at n=" + std::to_string(n));
    if (it != m.end()) v.detail << " dim(n=" << n << ")=" << it->second;
  }
  return v;
}

Verdict ac15() {
  Verdict v;
  for (int n = 1; n <= 4; ++n) {
    const auto& m = g_reports.at(n).measurements;
    const auto frac = m.find("slocal.c_reality_fraction");
    const auto samples = m.find("slocal.c_reality_samples");
    v.require(frac != m.end() && samples != m.end(), "measurement at n=" + std::to_string(n));
    if (frac == m.end() || samples == m.end()) continue;
    v.require(samples->second >= 100.0, "sample count at n=" + std::to_string(n));
    v.detail << " n=" << n << ":" << frac->second;
  }
  require_checks(v, {"slocal.sampled_members"});
  return v;
}

Verdict ac16(const char* exe) {
  Verdict v;
  if (exe == nullptr) {
    v.require(false, "no executable given");
    return v;
  }
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = dir / "ucgl_acceptance_a.json";
  const auto b = dir / "ucgl_acceptance_b.json";
  const auto run = [&](const std::filesystem::path& out) {
    const std::string cmd = std::string("\"") + exe + "\" verify --n 2 --suite all --seed 42 --out \"" + out.string() +
                            "\" 2>/dev/null";
    return std::system(cmd.c_str());
  };
  const auto start = Clock::now();
  const int first = run(a);
  const double t = seconds_since(start);
  const int second = run(b);
  v.require(first == 0 && second == 0, "exit status");
  v.require(t < 300.0, "runtime");
  v.detail << " runtime=" << t << "s";
  if (first == 0 && second == 0) {
    const auto ra = ucgl::report_from_json(read_file(a));
    const auto rb = ucgl::report_from_json(read_file(b));
    v.require(ucgl::report_to_json(ra, false) == ucgl::report_to_json(rb, false), "reproducibility");
  }
  std::filesystem::remove(a);
  std::filesystem::remove(b);
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  for (int n = 1; n <= 4; ++n) {
    ucgl::SuiteConfig cfg;
    cfg.n = n;
    g_reports[n] = ucgl::run_suite(cfg);
  }

  std::vector<std::pair<std::string, Verdict>> results;
  const auto simple = [&](const std::string& id, const std::vector<std::string>& names, int hi = 4) {
    Verdict v;
    require_checks(v, names, 1, hi);
    results.emplace_back(id, std::move(v));
  };

  results.emplace_back("AC-1", ac1());
  simple("AC-2", {"stokes.round_trip", "stokes.regular"});
  simple("AC-3", {"stokes.power_identity"});
  simple("AC-4", {"stokes.sigma0_reversal", "stokes.theta0_conj_reversal", "stokes.anti_symmetry_palindromic",
                  "stokes.anti_symmetry_negative_control"});
  simple("AC-5", {"involutions.sigma_squared", "involutions.theta_squared", "involutions.commute"});
  simple("AC-6", {"groupoid.associativity", "groupoid.unit_laws", "groupoid.inverse_laws",
                  "groupoid.source_equals_target", "involutions.sigma_morphism", "involutions.theta_morphism"});
  simple("AC-7", {"symplectic.unit_blocks", "symplectic.units_isotropic"}, 3);
  results.emplace_back("AC-8", ac8());
  simple("AC-9", {"symplectic.closedness"}, 3);
  simple("AC-10", {"symplectic.nondegenerate_units", "symplectic.nondegenerate_random"});
  simple("AC-11", {"symplectic.sigma_pullback_units", "symplectic.theta_pullback_units",
                   "symplectic.sigma_pullback_random", "symplectic.theta_pullback_random"});
  results.emplace_back("AC-12", ac12());
  simple("AC-13", {"symplectic.character_rank", "symplectic.fiber_isotropy", "symplectic.poisson_commuting",
                   "groupoid.tangent_dimension"});
  simple("AC-14", {"connection.cyclic", "connection.anti", "connection.c_real", "connection.theta_real",
                   "connection.negative_control"});
  results.emplace_back("AC-15", ac15());
  results.emplace_back("AC-16", ac16(argc > 1 ? argv[1] : nullptr));

  bool all = true;
  for (const auto& [id, v] : results) {
    std::cout << id << ' ' << (v.pass ? "PASS" : "FAIL") << v.detail.str() << '\n';
    all = all && v.pass;
  }
  return all ? 0 : 1;
}
