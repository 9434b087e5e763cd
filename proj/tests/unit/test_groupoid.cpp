#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "ucgl/error.hpp"
#include "ucgl/groupoid.hpp"

using namespace ucgl;
using oracle::cd;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an exception");
  return ErrorKind::usage_error;
}

/// Complex rank of the Jacobian of (B, s) -> (B A(s) B^{-1} - A(s), det B - 1)
/// by central differences; the defining map is holomorphic.
std::size_t kernel_dimension_by_differences(const RootSetData& rs, const GroupoidPoint& p) {
  const std::size_t size = p.a.dim();
  const std::size_t n = p.s.size();
  auto defect = [&](const ComplexMatrix& b, const StokesParams& s) {
    const ComplexMatrix a = build_M(rs, s);
    Eigen::VectorXcd out(static_cast<Eigen::Index>(size * size + 1));
    const ComplexMatrix d = b * a * inverse(b) - a;
    for (std::size_t k = 0; k < size * size; ++k) out(static_cast<Eigen::Index>(k)) = d.entries()[k];
    out(static_cast<Eigen::Index>(size * size)) = determinant(b) - 1.0;
    return out;
  };
  const double h = 1e-6;
  Eigen::MatrixXcd jac(static_cast<Eigen::Index>(size * size + 1), static_cast<Eigen::Index>(size * size + n));
  for (std::size_t k = 0; k < size * size; ++k) {
    ComplexMatrix bp = p.b, bm = p.b;
    bp(k / size, k % size) += h;
    bm(k / size, k % size) -= h;
    jac.col(static_cast<Eigen::Index>(k)) = (defect(bp, p.s) - defect(bm, p.s)) / (2 * h);
  }
  for (std::size_t i = 0; i < n; ++i) {
    StokesParams sp = p.s, sm = p.s;
    sp[i] += h;
    sm[i] -= h;
    jac.col(static_cast<Eigen::Index>(size * size + i)) = (defect(p.b, sp) - defect(p.b, sm)) / (2 * h);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(jac);
  const auto& sv = svd.singularValues();
  std::size_t rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > 1e-6 * sv(0)) ++rank;
  return size * size + n - rank;
}

}  // namespace

TEST_CASE("membership in Z") {
  oracle::Rng rng(41);
  const auto rs = load_or_derive_root_sets(2);
  const ComplexMatrix a = build_M(rs, rng.complex_vector(2));
  CHECK(z_membership(rs, ComplexMatrix::identity(3), a, 1e-10));
  CHECK(z_membership(rs, a, a, 1e-10));
  CHECK_FALSE(z_membership(rs, ComplexMatrix::identity(3) + ComplexMatrix::unit(3, 0, 1), a, 1e-10));
}

TEST_CASE("composition example for n = 1") {
  const auto rs = load_or_derive_root_sets(1);
  const ComplexMatrix m = build_M(rs, {1.0});
  const auto sq = compose(make_point(m, m), make_point(m, m));
  const ComplexMatrix expected{{-1, -1}, {1, 0}};
  CHECK(max_abs_diff(sq.b, expected) < 1e-15);
  CHECK(max_abs_diff(sq.a, m) == 0.0);
}

TEST_CASE("composition over different bases is rejected") {
  const auto rs = load_or_derive_root_sets(1);
  const auto p = unit_point(build_M(rs, {1.0}));
  const auto q = unit_point(build_M(rs, {2.0}));
  CHECK(kind_of([&] { (void)compose(p, q); }) == ErrorKind::not_composable);
}

TEST_CASE("structure maps satisfy the groupoid laws") {
  for (int n = 1; n <= 4; ++n) {
    const auto rs = load_or_derive_root_sets(n);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto p = sample_z_point(rs, seed);
      const auto q = make_point(sample_commuting(p.a, seed + 100), p.a);
      const auto w = make_point(sample_commuting(p.a, seed + 200), p.a);
      CHECK(point_distance(compose(compose(p, q), w), compose(p, compose(q, w))) < 1e-10);
      CHECK(point_distance(compose(p, unit_point(p.a)), p) < 1e-12);
      CHECK(point_distance(compose(p, inverse_point(p)), unit_point(p.a)) < 1e-10);
      CHECK(max_abs_diff(source(p), target(p)) == 0.0);
    }
  }
}

TEST_CASE("centralizer basis of the signed shift") {
  const auto st = structural_matrices(1);
  const auto basis = centralizer_basis(st.pi_hat);
  REQUIRE(basis.commutant.size() == 2);
  CHECK(max_abs_diff(basis.commutant[0], ComplexMatrix::identity(2)) == 0.0);
  CHECK(max_abs_diff(basis.commutant[1], st.pi_hat) == 0.0);
  REQUIRE(basis.lie.size() == 1);
  CHECK(max_abs_diff(basis.lie[0], st.pi_hat) == 0.0);
  CHECK(kind_of([] { (void)centralizer_basis(ComplexMatrix::identity(3)); }) == ErrorKind::not_regular);
}

TEST_CASE("commuting sample from explicit coefficients") {
  const auto st = structural_matrices(1);
  const std::vector<cd> coeffs{1.0, 1.0};
  const ComplexMatrix b = commuting_from_coefficients(st.pi_hat, coeffs);
  CHECK(max_abs_diff(b, (1.0 / std::sqrt(2.0)) * (ComplexMatrix::identity(2) + st.pi_hat)) < 1e-15);
  const std::vector<cd> degenerate{0.0, 0.0};
  CHECK(kind_of([&] { (void)commuting_from_coefficients(st.pi_hat, degenerate); }) == ErrorKind::degenerate_sample);
}

TEST_CASE("seeded samples are reproducible and commute") {
  const auto rs = load_or_derive_root_sets(3);
  const ComplexMatrix a = build_M(rs, random_params(3, 5));
  const ComplexMatrix b1 = sample_commuting(a, 77), b2 = sample_commuting(a, 77);
  CHECK(max_abs_diff(b1, b2) == 0.0);
  CHECK(max_abs_diff(b1 * a, a * b1) < 1e-12);
  CHECK(std::abs(determinant(b1) - 1.0) < 1e-12);
  CHECK(max_abs_diff(sample_commuting(a, 78), b1) > 1e-6);
  const auto p = sample_z_point(rs, 9), q = sample_z_point(rs, 9);
  CHECK(point_distance(p, q) == 0.0);
}

TEST_CASE("random parameter families have the advertised symmetry") {
  for (int n = 1; n <= 5; ++n) {
    const auto local = random_local_params(n, 3);
    CHECK(is_local_params(local, 1e-15));
    const auto theta = random_theta_params(n, 3);
    CHECK(oracle::max_diff(theta, conj_reversed(theta)) == 0.0);
  }
}

TEST_CASE("fixed-point constructions from C = I give the unit") {
  const auto rs = load_or_derive_root_sets(2);
  const ComplexMatrix a = build_M(rs, {0.7, 0.7});
  CHECK(max_abs_diff(slocal_from_commuting(rs, a, ComplexMatrix::identity(3)).b, ComplexMatrix::identity(3)) < 1e-14);
  const ComplexMatrix at = build_M(rs, {cd(0.2, 0.5), cd(0.2, -0.5)});
  CHECK(max_abs_diff(theta_fixed_from_commuting(rs, at, ComplexMatrix::identity(3)).b, ComplexMatrix::identity(3)) <
        1e-14);
}

TEST_CASE("fibre sampling requires a base in M^local") {
  const auto rs = load_or_derive_root_sets(2);
  CHECK(kind_of([&] { (void)sample_slocal_fiber(rs, build_M(rs, {0.3, 0.9}), 1); }) ==
        ErrorKind::precondition_violation);
  CHECK(kind_of([&] { (void)sample_theta_fixed_fiber(rs, build_M(rs, {cd(0.3, 0.1), 0.9}), 1); }) ==
        ErrorKind::precondition_violation);
}

TEST_CASE("fibre samples are well conditioned members over M(1), n = 1") {
  const auto rs = load_or_derive_root_sets(1);
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto p = sample_slocal_fiber(rs, build_M(rs, {1.0}), seed);
    CHECK(p.b.max_abs() * inverse(p.b).max_abs() <= 100.0);
    const auto flags = slocal_membership(rs, p, 1e-10);
    CHECK(flags.fixed_route);
    CHECK(flags.direct_route);
  }
}

TEST_CASE("tangent dimension is 2n and agrees with a difference Jacobian") {
  for (int n = 1; n <= 3; ++n) {
    CAPTURE(n);
    const auto rs = load_or_derive_root_sets(n);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto p = sample_z_point(rs, seed);
      CHECK(tangent_dimension(rs, p, 1e-9) == static_cast<std::size_t>(2 * n));
      CHECK(kernel_dimension_by_differences(rs, p) == static_cast<std::size_t>(2 * n));
    }
  }
}

TEST_CASE("tangent basis vectors move along Z to first order") {
  for (int n = 1; n <= 4; ++n) {
    const auto rs = load_or_derive_root_sets(n);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto p = sample_z_point(rs, seed);
      const auto basis = tangent_space(rs, p);
      REQUIRE(basis.size() == static_cast<std::size_t>(2 * n));
      for (std::size_t k = 0; k < basis.size(); ++k) {
        const auto& u = basis[k];
        CHECK(u.kind == (k < static_cast<std::size_t>(n) ? TangentKind::fiber : TangentKind::general));
        const double t = 1e-6;
        StokesParams s = p.s;
        for (std::size_t i = 0; i < s.size(); ++i) s[i] += t * u.sdot[i];
        const ComplexMatrix a = build_M(rs, s);
        const ComplexMatrix b = p.b + t * u.x;
        const double commutation = max_abs_diff(b * a, a * b) / t;
        const double scale = 1.0 + u.x.max_abs() + p.b.max_abs() * u.y.max_abs();
        CHECK(commutation < 1e-4 * scale);
        CHECK(std::abs(determinant(b) - 1.0) / t < 1e-4 * scale);
      }
    }
  }
}

TEST_CASE("coordinate lifts at units are horizontal") {
  const auto rs = load_or_derive_root_sets(2);
  const auto e = unit_point(build_M(rs, {0.4, cd(0.1, 0.3)}));
  const auto basis = tangent_space(rs, e);
  for (std::size_t k = 2; k < 4; ++k) {
    CHECK(basis[k].kind == TangentKind::horizontal);
    CHECK(basis[k].x.max_abs() == 0.0);
  }
}

TEST_CASE("retraction returns a nearby point of Z") {
  const auto rs = load_or_derive_root_sets(2);
  const auto p = sample_z_point(rs, 4);
  oracle::Rng rng(42);
  const ComplexMatrix noisy = p.b + 1e-6 * rng.matrix(3);
  const auto q = retract_to_z(rs, noisy, p.s);
  CHECK(z_membership(rs, q.b, q.a, 1e-10));
  CHECK(max_abs_diff(q.b, p.b) < 1e-4);
}
