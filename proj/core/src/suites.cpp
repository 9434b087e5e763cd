#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <string_view>

#include "ucgl/bondal.hpp"
#include "ucgl/connection.hpp"
#include "ucgl/error.hpp"
#include "ucgl/groupoid.hpp"
#include "ucgl/report.hpp"
#include "ucgl/symplectic.hpp"

namespace ucgl {

namespace {

constexpr double kFailedResidual = 1e300;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t hash_name(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (const char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

struct Measured {
  std::size_t samples = 0;
  double residual = 0.0;
};

class Runner {
 public:
  Runner(const SuiteConfig& cfg, const RootSetData& rs, VerificationReport& report)
      : cfg_(cfg), rs_(rs), report_(report) {}

  int n() const { return rs_.n; }
  const RootSetData& rs() const { return rs_; }
  VerificationReport& report() { return report_; }

  std::size_t count(std::size_t fallback) const { return cfg_.samples.value_or(fallback); }
  double exact_tol(double fallback) const { return cfg_.tol.value_or(fallback); }

  std::uint64_t seed(std::string_view salt, std::size_t index) const {
    return splitmix(splitmix(cfg_.seed ^ hash_name(salt)) + index);
  }

  void check(const std::string& name, const std::string& anchor, double tol, const std::function<Measured()>& body) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult result{name, anchor, 0, kFailedResidual, tol, false};
    try {
      const Measured m = body();
      result.samples = m.samples;
      result.max_residual = std::isfinite(m.residual) ? m.residual : kFailedResidual;
    } catch (const std::exception& e) {
      report_.notes[name + ".error"] = e.what();
    }
    result.pass = result.max_residual < result.tol;
    report_.checks.push_back(std::move(result));
    report_.timing[name] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }

 private:
  const SuiteConfig& cfg_;
  const RootSetData& rs_;
  VerificationReport& report_;
};

// Negative controls report threshold / smallest observed defect; they pass
// below 1 exactly when every observed defect exceeds the threshold.
double control_ratio(double threshold, double smallest) {
  return smallest > 0.0 ? threshold / smallest : kFailedResidual;
}

double params_error(const StokesParams& a, const StokesParams& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

StokesParams random_palindromic(int n, std::uint64_t seed) {
  const auto raw = seeded_complex(seed, static_cast<std::size_t>(n));
  StokesParams s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = raw[static_cast<std::size_t>(std::min(i, n - 1 - i))];
  return s;
}

// ---------------------------------------------------------------------------

TodaInput random_toda(int n, std::uint64_t seed, bool anti) {
  const auto raw = seeded_complex(seed, static_cast<std::size_t>(n) + 3);
  TodaInput inp;
  inp.n = n;
  inp.w.assign(static_cast<std::size_t>(n) + 1, 0.0);
  inp.v.assign(static_cast<std::size_t>(n) + 1, 0.0);
  for (int i = 0; i <= n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    if (!anti) {
      inp.w[ui] = raw[ui].real();
      inp.v[ui] = raw[ui].imag();
    } else if (i < n - i) {
      inp.w[ui] = raw[ui].real();
      inp.v[ui] = raw[ui].imag();
      inp.w[static_cast<std::size_t>(n - i)] = -raw[ui].real();
      inp.v[static_cast<std::size_t>(n - i)] = -raw[ui].imag();
    }
  }
  const auto un = static_cast<std::size_t>(n);
  inp.x = 0.5 + 0.75 * (raw[un + 1].real() + 1.0);
  inp.zeta = std::polar(0.3 + 0.85 * (raw[un + 2].real() + 1.0), std::numbers::pi * raw[un + 2].imag());
  return inp;
}

void connection_suite(Runner& r) {
  const std::size_t count = r.count(100);
  const std::pair<SymmetryKind, const char*> kinds[] = {{SymmetryKind::cyclic, "connection.cyclic"},
                                                         {SymmetryKind::anti, "connection.anti"},
                                                         {SymmetryKind::c_real, "connection.c_real"},
                                                         {SymmetryKind::theta_real, "connection.theta_real"}};
  const char* anchors[] = {"cyclic symmetry of the connection coefficient",
                           "anti-symmetry of the connection coefficient",
                           "c-reality of the connection coefficient", "theta-reality of the connection coefficient"};
  for (std::size_t k = 0; k < 4; ++k) {
    const auto kind = kinds[k].first;
    r.check(kinds[k].second, anchors[k], r.exact_tol(1e-11), [&] {
      Measured m;
      for (std::size_t i = 0; i < count; ++i) {
        const auto inp = random_toda(r.n(), r.seed("connection", i), true);
        m.residual = std::max(m.residual, alpha_symmetry_residual(kind, inp));
        ++m.samples;
      }
      return m;
    });
  }
  r.check("connection.negative_control", "anti-symmetry is needed for anti and c-reality (threshold/defect)", 1.0,
          [&] {
            double smallest = std::numeric_limits<double>::infinity();
            Measured m;
            for (std::size_t i = 0; i < count; ++i) {
              const auto inp = random_toda(r.n(), r.seed("connection.negative", i), false);
              smallest = std::min({smallest, alpha_symmetry_residual_unchecked(SymmetryKind::anti, inp),
                                   alpha_symmetry_residual_unchecked(SymmetryKind::c_real, inp)});
              ++m.samples;
            }
            m.residual = control_ratio(1e-3, smallest);
            return m;
          });
}

// ---------------------------------------------------------------------------

void stokes_suite(Runner& r) {
  const auto& rs = r.rs();
  const int n = r.n();
  const int size = n + 1;
  const std::size_t count = r.count(100);

  r.check("stokes.root_sets_admissible", "root subsets satisfy every search constraint", 0.5, [&] {
    double bad = root_sets_admissible(rs) ? 0.0 : 1.0;
    if (static_cast<int>(rs.r1.size() + rs.r1p.size()) != n) bad += 1.0;
    if (rs.survivor_count < 1) bad += 1.0;
    return Measured{1, bad};
  });

  r.check("stokes.round_trip", "Steinberg section isomorphism s -> M(s) -> s", r.exact_tol(1e-10), [&] {
    Measured m;
    for (std::size_t i = 0; i < count; ++i) {
      const auto s = random_params(n, r.seed("stokes.round_trip", i));
      m.residual = std::max(m.residual, params_error(stokes_params_of(build_M(rs, s)), s));
      ++m.samples;
    }
    return m;
  });

  r.check("stokes.regular", "section elements are regular (count of failures)", 0.5, [&] {
    Measured m;
    for (std::size_t i = 0; i < count; ++i) {
      const auto s = random_params(n, r.seed("stokes.round_trip", i));
      if (!is_regular(build_M(rs, s))) m.residual += 1.0;
      ++m.samples;
    }
    return m;
  });

  r.check("stokes.det_one", "section elements have determinant 1", r.exact_tol(1e-10), [&] {
    Measured m;
    for (std::size_t i = 0; i < count; ++i) {
      const auto s = random_params(n, r.seed("stokes.round_trip", i));
      m.residual = std::max(m.residual, std::abs(determinant(build_M(rs, s)) - 1.0));
      ++m.samples;
    }
    return m;
  });

  r.check("stokes.power_identity", "M^{n+1} = -/+ S_1 S_2 (relative)", r.exact_tol(1e-9), [&] {
    Measured m;
    const double sign = rs.parity() == Parity::odd ? -1.0 : 1.0;
    for (std::size_t i = 0; i < count; ++i) {
      const auto s = random_params(n, r.seed("stokes.power", i));
      const ComplexMatrix lhs = power(build_M(rs, s), size);
      const ComplexMatrix rhs = sign * (build_S(rs, 1, s) * build_S(rs, 2, s));
      m.residual = std::max(m.residual, max_abs_diff(lhs, rhs) / std::max(1.0, lhs.max_abs()));
      ++m.samples;
    }
    return m;
  });

  r.check("stokes.factor_routes", "root-set and Coxeter-conjugation constructions of Q_k agree", r.exact_tol(1e-13),
          [&] {
            Measured m;
            for (std::size_t i = 0; i < count; ++i) {
              const auto s = random_params(n, r.seed("stokes.routes", i));
              for (int k = -size; k <= 3 * size; ++k) {
                m.residual = std::max(
                    m.residual, max_abs_diff(build_Q(rs, SectorIndex{k}, s), build_Q_by_conjugation(rs, SectorIndex{k}, s)));
              }
              ++m.samples;
            }
            return m;
          });

  auto anti_defect = [&](const StokesParams& s) {
    double d = 0.0;
    for (int k = size; k <= size + 1; ++k) {
      const ComplexMatrix q = build_Q(rs, SectorIndex{k}, s);
      d = std::max(d, max_abs_diff(build_Q(rs, SectorIndex{k + size}, s), inverse(q).transpose()));
    }
    return d;
  };

  r.check("stokes.anti_symmetry_palindromic", "Q_{k+1} = Q_k^{-T} for palindromic s", r.exact_tol(1e-10), [&] {
    Measured m;
    for (std::size_t i = 0; i < count; ++i) {
      m.residual = std::max(m.residual, anti_defect(random_palindromic(n, r.seed("stokes.palindromic", i))));
      ++m.samples;
    }
    return m;
  });

  r.check("stokes.anti_symmetry_negative_control", "Q_{k+1} != Q_k^{-T} for generic s (threshold/defect)", 1.0,
          [&] {
            Measured m;
            if (n == 1) {
              r.report().notes["stokes.anti_symmetry_negative_control"] =
                  "n = 1: every parameter vector is palindromic, no generic sample exists";
              return m;
            }
            double smallest = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < count; ++i) {
              smallest = std::min(smallest, anti_defect(random_params(n, r.seed("stokes.generic", i))));
              ++m.samples;
            }
            m.residual = control_ratio(1e-3, smallest);
            return m;
          });

  r.check("stokes.sigma0_reversal", "sigma_0 reverses the Stokes parameters", r.exact_tol(1e-10), [&] {
    Measured m;
    for (std::size_t i = 0; i < count; ++i) {
      const auto s = random_params(n, r.seed("stokes.sigma0", i));
      m.residual = std::max(m.residual, params_error(stokes_params_of(sigma0(rs, build_M(rs, s))), reversed(s)));
      ++m.samples;
    }
    return m;
  });

  r.check("stokes.theta0_conj_reversal", "theta_0 conjugates and reverses the Stokes parameters", r.exact_tol(1e-10),
          [&] {
            Measured m;
            for (std::size_t i = 0; i < count; ++i) {
              const auto s = random_params(n, r.seed("stokes.theta0", i));
              m.residual =
                  std::max(m.residual, params_error(stokes_params_of(theta0(rs, build_M(rs, s))), conj_reversed(s)));
              ++m.samples;
            }
            return m;
          });

  r.check("stokes.section_membership", "members and generic non-members classified correctly (errors)", 0.5, [&] {
    Measured m;
    for (std::size_t i = 0; i < count; ++i) {
      const auto s = random_params(n, r.seed("stokes.membership", i));
      const ComplexMatrix a = build_M(rs, s);
      if (!section_membership(rs, a, 1e-9).in_section) m.residual += 1.0;
      const auto g_raw = seeded_complex(r.seed("stokes.membership.g", i), static_cast<std::size_t>(size * size));
      ComplexMatrix g(static_cast<std::size_t>(size), g_raw);
      g += 2.0 * ComplexMatrix::identity(static_cast<std::size_t>(size));
      if (section_membership(rs, ad(g, a), 1e-9).in_section) m.residual += 1.0;
      m.samples += 2;
    }
    return m;
  });
}

// ---------------------------------------------------------------------------

void involutions_suite(Runner& r) {
  const auto& rs = r.rs();
  const int n = r.n();
  const std::size_t count = r.count(100);

  r.check("involutions.sigma_squared", "sigma is an involution", r.exact_tol(1e-9), [&] {
    Measured m;
    for (std::size_t i = 0; i < count; ++i) {
      const auto p = sample_z_point(rs, r.seed("involutions.z", i));
      m.residual = std::max(m.residual, point_distance(apply_sigma(rs, apply_sigma(rs, p)), p));
      ++m.samples;
    }
    return m;
  });
  r.check("involutions.theta_squared", "theta is an involution", r.exact_tol(1e-9), [&] {
    Measured m;
    for (std::size_t i = 0; i < count; ++i) {
      const auto p = sample_z_point(rs, r.seed("involutions.z", i));
      m.residual = std::max(m.residual, point_distance(apply_theta(rs, apply_theta(rs, p)), p));
      ++m.samples;
    }
    return m;
  });
  r.check("involutions.commute", "sigma and theta commute", r.exact_tol(1e-9), [&] {
    Measured m;
    for (std::size_t i = 0; i < count; ++i) {
      const auto p = sample_z_point(rs, r.seed("involutions.z", i));
      m.residual = std::max(m.residual, point_distance(apply_sigma(rs, apply_theta(rs, p)),
                                                       apply_theta(rs, apply_sigma(rs, p))));
      ++m.samples;
    }
    return m;
  });

  auto morphism = [&](bool sigma) {
    Measured m;
    for (std::size_t i = 0; i < count; ++i) {
      const auto p = sample_z_point(rs, r.seed("involutions.morphism", i));
      const GroupoidPoint q = make_point(sample_commuting(p.a, r.seed("involutions.morphism.q", i)), p.a);
      auto f = [&](const GroupoidPoint& x) { return sigma ? apply_sigma(rs, x) : apply_theta(rs, x); };
      m.residual = std::max(m.residual, point_distance(f(compose(p, q)), compose(f(p), f(q))));
      ++m.samples;
    }
    return m;
  };
  r.check("involutions.sigma_morphism", "sigma is a groupoid morphism", r.exact_tol(1e-9), [&] { return morphism(true); });
  r.check("involutions.theta_morphism", "theta is a groupoid morphism", r.exact_tol(1e-9),
          [&] { return morphism(false); });

  r.check("involutions.route_agreement", "fixed-point and direct S^local tests agree (disagreements)", 0.5, [&] {
    Measured m;
    const std::size_t probes = 10 * count;
    for (std::size_t i = 0; i < probes; ++i) {
      const auto sd = r.seed("involutions.routes", i);
      GroupoidPoint p;
      switch (i % 4) {
        case 0:
          p = sample_slocal_fiber(rs, build_M(rs, random_local_params(n, sd)), sd + 1);
          break;
        case 1:
          p = sample_z_point(rs, sd);
          break;
        case 2: {
          const ComplexMatrix a = build_M(rs, random_theta_params(n, sd));
          p = sample_theta_fixed_fiber(rs, a, sd + 1);
          break;
        }
        default:
          p = unit_point(build_M(rs, random_local_params(n, sd)));
          break;
      }
      const auto flags = slocal_membership(rs, p, 1e-8);
      if (flags.fixed_route != flags.direct_route) m.residual += 1.0;
      ++m.samples;
    }
    return m;
  });

  r.check("involutions.theta_fixed_real_charpoly", "characteristic polynomial of B is real at theta-fixed points",
          r.exact_tol(1e-9), [&] {
            Measured m;
            for (std::size_t i = 0; i < count; ++i) {
              const auto sd = r.seed("involutions.theta_fixed", i);
              const ComplexMatrix a = build_M(rs, random_theta_params(n, sd));
              const auto p = sample_theta_fixed_fiber(rs, a, sd + 1);
              for (const auto& c : char_poly(p.b).coefficients) m.residual = std::max(m.residual, std::abs(c.imag()));
              ++m.samples;
            }
            return m;
          });
}

// ---------------------------------------------------------------------------

void groupoid_suite(Runner& r) {
  const auto& rs = r.rs();
  const int n = r.n();
  const std::size_t count = r.count(100);

  auto triple = [&](std::size_t i) {
    const auto p = sample_z_point(rs, r.seed("groupoid.triple", i));
    const GroupoidPoint q = make_point(sample_commuting(p.a, r.seed("groupoid.triple.q", i)), p.a);
    const GroupoidPoint w = make_point(sample_commuting(p.a, r.seed("groupoid.triple.w", i)), p.a);
    return std::tuple{p, q, w};
  };

  r.check("groupoid.associativity", "multiplication is associative", r.exact_tol(1e-10), [&] {
    Measured m;
    for (std::size_t i = 0; i < count; ++i) {
      const auto [p, q, w] = triple(i);
      m.residual = std::max(m.residual, point_distance(compose(compose(p, q), w), compose(p, compose(q, w))));
      ++m.samples;
    }
    return m;
  });
  r.check("groupoid.unit_laws", "units are two-sided identities", r.exact_tol(1e-10), [&] {
    Measured m;
    for (std::size_t i = 0; i < count; ++i) {
      const auto p = std::get<0>(triple(i));
      const auto e = unit_point(p.a);
      m.residual = std::max({m.residual, point_distance(compose(p, e), p), point_distance(compose(e, p), p)});
      ++m.samples;
    }
    return m;
  });
  r.check("groupoid.inverse_laws", "inverses compose to units", r.exact_tol(1e-10), [&] {
    Measured m;
    for (std::size_t i = 0; i < count; ++i) {
      const auto p = std::get<0>(triple(i));
      const auto e = unit_point(p.a);
      m.residual = std::max({m.residual, point_distance(compose(p, inverse_point(p)), e),
                             point_distance(compose(inverse_point(p), p), e)});
      ++m.samples;
    }
    return m;
  });
  r.check("groupoid.source_equals_target", "source and target coincide on Z", r.exact_tol(1e-10), [&] {
    Measured m;
    for (std::size_t i = 0; i < count; ++i) {
      const auto p = std::get<0>(triple(i));
      m.residual = std::max(m.residual, max_abs_diff(source(p), target(p)));
      ++m.samples;
    }
    return m;
  });
  r.check("groupoid.commuting_samples", "samples commute with A and have det 1", r.exact_tol(1e-10), [&] {
    Measured m;
    for (std::size_t i = 0; i < count; ++i) {
      const auto p = std::get<0>(triple(i));
      m.residual = std::max({m.residual, max_abs_diff(p.b * p.a, p.a * p.b), std::abs(determinant(p.b) - 1.0)});
      if (!z_membership(rs, p.b, p.a, 1e-9)) m.residual = std::max(m.residual, 1.0);
      ++m.samples;
    }
    return m;
  });
  r.check("groupoid.tangent_dimension", "complex dimension of T Z equals 2n (mismatches)", 0.5, [&] {
    Measured m;
    for (std::size_t i = 0; i < r.count(50); ++i) {
      const auto p = sample_z_point(rs, r.seed("groupoid.tangent", i));
      if (tangent_dimension(rs, p, 1e-9) != static_cast<std::size_t>(2 * n)) m.residual += 1.0;
      ++m.samples;
    }
    return m;
  });
  r.check("groupoid.slocal_samples", "S^local samples pass both membership routes (failures)", 0.5, [&] {
    Measured m;
    for (std::size_t i = 0; i < count; ++i) {
      const auto sd = r.seed("groupoid.slocal", i);
      const auto p = sample_slocal_fiber(rs, build_M(rs, random_local_params(n, sd)), sd + 1);
      const auto flags = slocal_membership(rs, p, 1e-8);
      if (!flags.fixed_route || !flags.direct_route) m.residual += 1.0;
      ++m.samples;
    }
    return m;
  });
}

// ---------------------------------------------------------------------------

ComplexMatrix random_combination(const std::vector<ComplexMatrix>& basis, std::uint64_t seed) {
  const auto c = seeded_complex(seed, basis.size());
  ComplexMatrix out(basis.front().dim());
  for (std::size_t k = 0; k < basis.size(); ++k) out += c[k] * basis[k];
  return out;
}

void symplectic_suite(Runner& r) {
  const auto& rs = r.rs();
  const int n = r.n();
  const auto un = static_cast<std::size_t>(n);

  r.check("symplectic.unit_blocks", "2-form at units matches the four closed-form blocks", r.exact_tol(1e-11), [&] {
    Measured m;
    for (std::size_t i = 0; i < r.count(200); ++i) {
      const auto sd = r.seed("symplectic.unit_blocks", i);
      const auto s = random_params(n, sd);
      const ComplexMatrix a = build_M(rs, s);
      const auto lie = centralizer_basis(a).lie;
      const auto partials = build_M_partials(rs, s);
      const ComplexMatrix a_inv = inverse(a);
      const TangentVector f1 = unit_fiber_vector(random_combination(lie, sd + 1));
      const TangentVector f2 = unit_fiber_vector(random_combination(lie, sd + 2));
      const TangentVector h1 = unit_horizontal_vector(a, a_inv * random_combination(partials, sd + 3));
      const TangentVector h2 = unit_horizontal_vector(a, a_inv * random_combination(partials, sd + 4));
      const GroupoidPoint e = unit_point(a);
      for (const auto* u : {&f1, &h1})
        for (const auto* v : {&f2, &h2})
          m.residual = std::max(m.residual, std::abs(omega(e, *u, *v) - unit_block_value(a, *u, *v)));
      m.residual = std::max(m.residual, std::abs(omega(e, h1, h2)));
      ++m.samples;
    }
    return m;
  });

  r.check("symplectic.units_isotropic", "the 2-form vanishes on horizontal lifts at units", r.exact_tol(1e-12), [&] {
    Measured m;
    for (std::size_t i = 0; i < r.count(100); ++i) {
      const auto e = unit_point(build_M(rs, random_params(n, r.seed("symplectic.units", i))));
      const auto basis = tangent_space(rs, e);
      for (std::size_t a = un; a < 2 * un; ++a)
        for (std::size_t b = un; b < 2 * un; ++b) m.residual = std::max(m.residual, std::abs(omega(e, basis[a], basis[b])));
      ++m.samples;
    }
    return m;
  });

  r.check("symplectic.multiplicativity", "m*omega = pr1*omega + pr2*omega", r.exact_tol(1e-8), [&] {
    Measured m;
    for (std::size_t i = 0; i < r.count(50); ++i) {
      const auto p = sample_z_point(rs, r.seed("symplectic.mult", i));
      const GroupoidPoint q = make_point(sample_commuting(p.a, r.seed("symplectic.mult.q", i)), p.a);
      const auto basis = pair_tangent_basis(rs, p, q);
      for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = a + 1; b < basis.size(); ++b)
          m.residual = std::max(m.residual, multiplicativity_residual(p, q, basis[a], basis[b]));
      ++m.samples;
    }
    return m;
  });

  r.check("symplectic.closedness", "d omega = 0 on Z (finite differences, Richardson)", n <= 2 ? 1e-4 : 1e-3, [&] {
    Measured m;
    for (std::size_t i = 0; i < r.count(20); ++i) {
      const auto p = sample_z_point(rs, r.seed("symplectic.closed", i));
      m.residual = std::max(m.residual, closedness_residual(rs, p));
      ++m.samples;
    }
    return m;
  });

  r.check("symplectic.closedness_order", "plain central differences converge at second order, abs(log10 ratio - 2)", 0.5,
          [&] {
            const auto p = sample_z_point(rs, r.seed("symplectic.closed", 0));
            const double coarse = closedness_residual(rs, p, {1e-3, false});
            const double fine = closedness_residual(rs, p, {1e-4, false});
            return Measured{1, std::abs(std::log10(coarse / fine) - 2.0)};
          });

  r.check("symplectic.nondegenerate_units", "Gram nondegenerate at units over semisimple A (1e-6/min singular)", 1.0,
          [&] {
            Measured m;
            double smallest = std::numeric_limits<double>::infinity();
            std::size_t skipped = 0;
            for (std::size_t i = 0; i < r.count(100); ++i) {
              const ComplexMatrix a = build_M(rs, random_params(n, r.seed("symplectic.nondeg.units", i)));
              if (eigenvalue_gap(a) <= 1e-2) {
                ++skipped;
                continue;
              }
              const auto e = unit_point(a);
              smallest = std::min(smallest, gram_matrix(e, tangent_space(rs, e)).min_singular);
              ++m.samples;
            }
            r.report().measurements["symplectic.nondegenerate_units.skipped_non_semisimple"] =
                static_cast<double>(skipped);
            m.residual = control_ratio(1e-6, smallest);
            return m;
          });

  r.check("symplectic.nondegenerate_random", "Gram nondegenerate at random points (1e-6/min singular)", 1.0, [&] {
    Measured m;
    double smallest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < r.count(100); ++i) {
      const auto p = sample_z_point(rs, r.seed("symplectic.nondeg.random", i));
      smallest = std::min(smallest, gram_matrix(p, tangent_space(rs, p)).min_singular);
      ++m.samples;
    }
    m.residual = control_ratio(1e-6, smallest);
    return m;
  });

  r.check("symplectic.gram_antisymmetry", "Gram matrices are antisymmetric", r.exact_tol(1e-12), [&] {
    Measured m;
    for (std::size_t i = 0; i < r.count(100); ++i) {
      const auto p = sample_z_point(rs, r.seed("symplectic.nondeg.random", i));
      m.residual = std::max(m.residual, gram_matrix(p, tangent_space(rs, p)).antisymmetry);
      ++m.samples;
    }
    return m;
  });

  r.check("symplectic.type_2_0", "omega(J u, v) = i omega(u, v)", r.exact_tol(1e-10), [&] {
    Measured m;
    const Complex iu(0.0, 1.0);
    for (std::size_t i = 0; i < r.count(100); ++i) {
      const auto p = sample_z_point(rs, r.seed("symplectic.type", i));
      const auto basis = tangent_space(rs, p);
      for (const auto& u : basis)
        for (const auto& v : basis)
          m.residual = std::max(m.residual, std::abs(omega(p, scaled(u, iu), v) - iu * omega(p, u, v)));
      ++m.samples;
    }
    return m;
  });

  auto pullback = [&](InvolutionKind kind, bool units, DifferentialRoute route, std::string_view salt) {
    Measured m;
    for (std::size_t i = 0; i < r.count(units ? 100 : 20); ++i) {
      const auto sd = r.seed(salt, i);
      const GroupoidPoint p = units ? unit_point(build_M(rs, random_params(n, sd))) : sample_z_point(rs, sd);
      const auto basis = tangent_space(rs, p);
      m.residual = std::max(m.residual, involution_pullback_residual(rs, kind, p, basis, route, 1e-5));
      ++m.samples;
    }
    return m;
  };
  r.check("symplectic.sigma_pullback_units", "sigma* omega = omega along units", r.exact_tol(1e-9),
          [&] { return pullback(InvolutionKind::sigma, true, DifferentialRoute::analytic, "symplectic.pull.units"); });
  r.check("symplectic.theta_pullback_units", "theta* omega = -conj(omega) along units", r.exact_tol(1e-9),
          [&] { return pullback(InvolutionKind::theta, true, DifferentialRoute::analytic, "symplectic.pull.units"); });
  r.check("symplectic.sigma_pullback_random", "sigma* omega = omega at random points (finite differences)", 1e-5, [&] {
    return pullback(InvolutionKind::sigma, false, DifferentialRoute::finite_difference, "symplectic.pull.random");
  });
  r.check("symplectic.theta_pullback_random", "theta* omega = -conj(omega) at random points (finite differences)",
          1e-5, [&] {
            return pullback(InvolutionKind::theta, false, DifferentialRoute::finite_difference,
                            "symplectic.pull.random");
          });

  r.check("symplectic.differential_routes", "finite-difference and exact involution differentials agree", 1e-6, [&] {
    Measured m;
    for (std::size_t i = 0; i < r.count(20); ++i) {
      const auto sd = r.seed("symplectic.routes", i);
      const GroupoidPoint p = i % 2 == 0 ? unit_point(build_M(rs, random_params(n, sd))) : sample_z_point(rs, sd);
      for (const auto& u : tangent_space(rs, p)) {
        for (const auto kind : {InvolutionKind::sigma, InvolutionKind::theta}) {
          const auto exact = involution_differential(rs, kind, p, u, DifferentialRoute::analytic);
          const auto fd = involution_differential(rs, kind, p, u, DifferentialRoute::finite_difference, 1e-5);
          const double scale = std::max({1.0, exact.x.max_abs(), exact.y.max_abs()});
          m.residual = std::max({m.residual, max_abs_diff(exact.x, fd.x) / scale, max_abs_diff(exact.y, fd.y) / scale});
        }
      }
      ++m.samples;
    }
    return m;
  });

  r.check("symplectic.character_rank", "character Jacobian has rank n (mismatches)", 0.5, [&] {
    Measured m;
    for (std::size_t i = 0; i < r.count(100); ++i) {
      const auto sys = character_system(rs, random_params(n, r.seed("symplectic.characters", i)));
      if (sys.jacobian_rank != un) m.residual += 1.0;
      ++m.samples;
    }
    return m;
  });

  r.check("symplectic.fiber_isotropy", "fibres are isotropic at non-unit points", r.exact_tol(1e-9), [&] {
    Measured m;
    for (std::size_t i = 0; i < r.count(100); ++i) {
      const auto p = sample_z_point(rs, r.seed("symplectic.fibers", i));
      const auto basis = tangent_space(rs, p);
      for (std::size_t a = 0; a < un; ++a)
        for (std::size_t b = 0; b < un; ++b) m.residual = std::max(m.residual, std::abs(omega(p, basis[a], basis[b])));
      ++m.samples;
    }
    return m;
  });

  r.check("symplectic.poisson_commuting", "characters Poisson-commute", 1e-5, [&] {
    Measured m;
    std::size_t skipped = 0;
    for (std::size_t i = 0; i < r.count(20); ++i) {
      const auto p = sample_z_point(rs, r.seed("symplectic.poisson", i));
      if (eigenvalue_gap(p.a) <= 1e-2) {
        ++skipped;
        continue;
      }
      for (std::size_t a = 1; a <= un; ++a)
        for (std::size_t b = a; b <= un; ++b)
          m.residual = std::max(m.residual, poisson_bracket_residual(rs, a, b, p));
      ++m.samples;
    }
    r.report().measurements["symplectic.poisson_commuting.skipped_non_semisimple"] = static_cast<double>(skipped);
    return m;
  });

  std::size_t min_dim = std::numeric_limits<std::size_t>::max(), max_dim = 0;
  r.check("symplectic.real_form_theta", "Re omega vanishes on theta-fixed tangents", r.exact_tol(1e-8), [&] {
    Measured m;
    for (std::size_t i = 0; i < r.count(20); ++i) {
      const auto sd = r.seed("symplectic.real.theta", i);
      GroupoidPoint p;
      if (i % 2 == 0) {
        const ComplexMatrix a = build_M(rs, random_theta_params(n, sd));
        p = sample_theta_fixed_fiber(rs, a, sd + 1);
      } else {
        p = sample_slocal_fiber(rs, build_M(rs, random_local_params(n, sd)), sd + 1);
      }
      m.residual = std::max(m.residual, real_form_check(rs, p, true).re_omega_max);
      ++m.samples;
    }
    return m;
  });
  r.check("symplectic.real_form_joint", "Im omega nondegenerate on sigma- and theta-fixed tangents (1e-7/min singular)",
          1.0, [&] {
            Measured m;
            double smallest = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < r.count(20); ++i) {
              const auto sd = r.seed("symplectic.real.joint", i);
              const auto p = sample_slocal_fiber(rs, build_M(rs, random_local_params(n, sd)), sd + 1);
              const auto rep = real_form_check(rs, p, false);
              smallest = std::min(smallest, rep.im_omega_min_singular);
              min_dim = std::min(min_dim, rep.fixed_dimension);
              max_dim = std::max(max_dim, rep.fixed_dimension);
              ++m.samples;
            }
            m.residual = control_ratio(1e-7, smallest);
            return m;
          });
  r.check("symplectic.real_form_even_dimension", "joint fixed tangent space has even real dimension (odd cases)", 0.5,
          [&] {
            Measured m{1, 0.0};
            if (max_dim == 0 || min_dim % 2 != 0 || max_dim % 2 != 0) m.residual = 1.0;
            return m;
          });
  if (max_dim > 0) {
    r.report().measurements["symplectic.joint_fixed_dimension.min"] = static_cast<double>(min_dim);
    r.report().measurements["symplectic.joint_fixed_dimension.max"] = static_cast<double>(max_dim);
    r.report().measurements["symplectic.joint_fixed_dimension.expected"] = 2.0 * ((n + 1) / 2);
  }
}

// ---------------------------------------------------------------------------

ComplexMatrix random_unipotent_upper(std::size_t size, std::uint64_t seed) {
  const auto raw = seeded_complex(seed, size * size);
  ComplexMatrix m = ComplexMatrix::identity(size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i + 1; j < size; ++j) m(i, j) = raw[i * size + j];
  return m;
}

// Arrow out of a: B = D (a^{-1} a^T)^k with D a diagonal sign matrix; its
// target is D a D.
BondalPoint random_bondal_arrow(const ComplexMatrix& a, std::uint64_t seed) {
  const std::uint64_t bits = splitmix(seed);
  std::vector<Complex> signs(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) signs[i] = ((bits >> i) & 1u) ? -1.0 : 1.0;
  const int k = static_cast<int>((bits >> 32) % 4) - 1;
  const ComplexMatrix coxeter = inverse(a) * a.transpose();
  return BondalPoint{ComplexMatrix::diagonal(signs) * power(coxeter, k), a};
}

double bondal_distance(const BondalPoint& p, const BondalPoint& q) {
  return std::max(max_abs_diff(p.b, q.b), max_abs_diff(p.a, q.a));
}

void bondal_suite(Runner& r) {
  const auto& rs = r.rs();
  const int n = r.n();
  const auto size = static_cast<std::size_t>(n + 1);
  const std::size_t count = r.count(100);

  r.check("bondal.members", "sampled Bondal arrows satisfy the membership condition (failures)", 0.5, [&] {
    Measured m;
    for (std::size_t i = 0; i < count; ++i) {
      const auto a = random_unipotent_upper(size, r.seed("bondal.a", i));
      if (!bondal_membership(random_bondal_arrow(a, r.seed("bondal.arrow", i)))) m.residual += 1.0;
      ++m.samples;
    }
    return m;
  });

  r.check("bondal.axioms", "Bondal groupoid associativity, unit and inverse laws", r.exact_tol(1e-10), [&] {
    Measured m;
    for (std::size_t i = 0; i < count; ++i) {
      const auto a = random_unipotent_upper(size, r.seed("bondal.a", i));
      const auto w = random_bondal_arrow(a, r.seed("bondal.w", i));
      const auto q = random_bondal_arrow(bondal_target(w), r.seed("bondal.q", i));
      const auto p = random_bondal_arrow(bondal_target(q), r.seed("bondal.p", i));
      double res = bondal_distance(bondal_compose(bondal_compose(p, q), w), bondal_compose(p, bondal_compose(q, w)));
      res = std::max(res, bondal_distance(bondal_compose(p, bondal_unit(bondal_source(p))), p));
      res = std::max(res, bondal_distance(bondal_compose(bondal_unit(bondal_target(p)), p), p));
      res = std::max(res, bondal_distance(bondal_compose(bondal_inverse(p), p), bondal_unit(bondal_source(p))));
      res = std::max(res, max_abs_diff(bondal_target(bondal_inverse(p)), bondal_source(p)));
      m.residual = std::max(m.residual, res);
      ++m.samples;
    }
    return m;
  });

  auto fibre_pair = [&](std::size_t i) {
    const auto sd = r.seed("bondal.embed", i);
    const ComplexMatrix a = build_M(rs, random_local_params(n, sd));
    return std::pair{sample_slocal_fiber(rs, a, sd + 1), sample_slocal_fiber(rs, a, sd + 2)};
  };

  r.check("bondal.embed_composable", "images of S^local pairs are composable", r.exact_tol(1e-9), [&] {
    Measured m;
    for (std::size_t i = 0; i < count; ++i) {
      const auto [p, q] = fibre_pair(i);
      const auto ep = embed_slocal(rs, p), eq = embed_slocal(rs, q);
      const ComplexMatrix tq = bondal_target(eq);
      m.residual = std::max(m.residual, max_abs_diff(ep.a, tq) / std::max(1.0, tq.max_abs()));
      ++m.samples;
    }
    return m;
  });

  r.check("bondal.embed_composition", "embedding intertwines composition", r.exact_tol(1e-9), [&] {
    Measured m;
    for (std::size_t i = 0; i < count; ++i) {
      const auto [p, q] = fibre_pair(i);
      const auto lhs = embed_slocal(rs, compose(p, q));
      const auto rhs = bondal_compose(embed_slocal(rs, p), embed_slocal(rs, q));
      m.residual = std::max(m.residual, bondal_distance(lhs, rhs));
      const auto unit_image = embed_slocal(rs, unit_point(p.a));
      m.residual = std::max(m.residual, bondal_distance(unit_image, bondal_unit(unit_image.a)));
      ++m.samples;
    }
    return m;
  });

  r.check("bondal.embed_injective", "distinct S^local samples have distinct images (collisions)", 0.5, [&] {
    Measured m;
    std::map<std::vector<long long>, std::size_t> seen;
    std::vector<GroupoidPoint> points;
    for (std::size_t i = 0; i < count; ++i) {
      const auto p = fibre_pair(i).first;
      const auto e = embed_slocal(rs, p);
      std::vector<long long> key;
      for (const auto* mat : {&e.b, &e.a})
        for (const auto& z : mat->entries()) {
          key.push_back(std::llround(z.real() * 1e6));
          key.push_back(std::llround(z.imag() * 1e6));
        }
      const auto [it, inserted] = seen.emplace(std::move(key), points.size());
      if (!inserted && point_distance(points[it->second], p) > 1e-6) m.residual += 1.0;
      points.push_back(p);
      ++m.samples;
    }
    return m;
  });

  const auto s = random_local_params(n, r.seed("bondal.triangular", 0));
  const ComplexMatrix image = inverse(build_S(rs, 1, s)).transpose();
  const auto perm = triangularizing_permutation(image);
  std::string text = "none";
  if (perm) {
    std::ostringstream os;
    for (std::size_t i = 0; i < perm->size(); ++i) os << (i ? " " : "") << (*perm)[i];
    text = os.str();
  }
  r.report().notes["bondal.triangularizing_permutation"] = text;
}

// ---------------------------------------------------------------------------

void slocal_experiment(Runner& r) {
  const auto& rs = r.rs();
  const int n = r.n();
  const std::size_t count = r.count(100);
  std::size_t real_count = 0;
  double worst_c = 0.0;
  r.check("slocal.sampled_members", "sampled S^local points are joint fixed points (failures)", 0.5, [&] {
    Measured m;
    for (std::size_t i = 0; i < count; ++i) {
      const auto sd = r.seed("slocal.experiment", i);
      const auto p = sample_slocal_fiber(rs, build_M(rs, random_local_params(n, sd)), sd + 1);
      const auto flags = slocal_membership(rs, p, 1e-8);
      if (!flags.fixed_route || !flags.direct_route) m.residual += 1.0;
      const double c = c_reality_residual(p.b);
      worst_c = std::max(worst_c, c);
      if (c < 1e-8) ++real_count;
      ++m.samples;
    }
    return m;
  });
  r.report().measurements["slocal.c_reality_fraction"] =
      count == 0 ? 0.0 : static_cast<double>(real_count) / static_cast<double>(count);
  r.report().measurements["slocal.c_reality_samples"] = static_cast<double>(count);
  r.report().measurements["slocal.c_reality_max_residual"] = worst_c;
  r.report().measurements["slocal.root_set_survivors"] = static_cast<double>(rs.survivor_count);
}

using SuiteFn = void (*)(Runner&);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"connection", connection_suite}, {"stokes", stokes_suite},     {"involutions", involutions_suite},
      {"groupoid", groupoid_suite},     {"symplectic", symplectic_suite}, {"bondal", bondal_suite},
      {"slocal-experiment", slocal_experiment}};
  return table;
}

}  // namespace

bool VerificationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : suite_table()) out.push_back(name);
    out.push_back("all");
    return out;
  }();
  return names;
}

VerificationReport run_suite(const SuiteConfig& config) {
  const auto& names = known_suites();
  if (std::find(names.begin(), names.end(), config.suite) == names.end()) {
    throw Error(ErrorKind::usage_error, "unknown suite '" + config.suite + "'");
  }
  if (config.n < 1) throw Error(ErrorKind::usage_error, "n must be >= 1");
  return run_suite(config, load_or_derive_root_sets(config.n, config.search_budget));
}

VerificationReport run_suite(const SuiteConfig& config, const RootSetData& rs) {
  const auto& names = known_suites();
  if (std::find(names.begin(), names.end(), config.suite) == names.end()) {
    throw Error(ErrorKind::usage_error, "unknown suite '" + config.suite + "'");
  }
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  report.n = rs.n;
  report.seed = config.seed;
  report.suite = config.suite;
  report.root_sets = rs;
  Runner runner(config, rs, report);
  for (const auto& [name, fn] : suite_table()) {
    if (config.suite == "all" || config.suite == name) fn(runner);
  }
  std::sort(report.checks.begin(), report.checks.end(),
            [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
  report.timing["total"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace ucgl
