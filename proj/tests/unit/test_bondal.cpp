#include <doctest.h>

#include "oracle.hpp"
#include "ucgl/bondal.hpp"
#include "ucgl/error.hpp"
#include "ucgl/groupoid.hpp"

using namespace ucgl;
using oracle::cd;

namespace {

ComplexMatrix unipotent(oracle::Rng& rng, std::size_t size) {
  ComplexMatrix m = ComplexMatrix::identity(size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i + 1; j < size; ++j) m(i, j) = rng.complex();
  return m;
}

// B = D (A^{-1} A^T)^k with D = diag(+-1), computed with Eigen.
BondalPoint coxeter_arrow(const ComplexMatrix& a, int k, unsigned signs) {
  const Eigen::MatrixXcd A = oracle::to_eigen(a);
  const Eigen::MatrixXcd cox = A.inverse() * A.transpose();
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Identity(A.rows(), A.cols());
  const Eigen::MatrixXcd step = k >= 0 ? cox : cox.inverse();
  for (int i = 0; i < std::abs(k); ++i) b = b * step;
  for (Eigen::Index i = 0; i < b.rows(); ++i)
    if ((signs >> i) & 1u) b.row(i) *= -1.0;
  return BondalPoint{oracle::from_eigen(b), a};
}

double distance(const BondalPoint& p, const BondalPoint& q) {
  return std::max(max_abs_diff(p.b, q.b), max_abs_diff(p.a, q.a));
}

}  // namespace

TEST_CASE("units have equal source and target") {
  oracle::Rng rng(61);
  const ComplexMatrix a = unipotent(rng, 3);
  const auto e = bondal_unit(a);
  CHECK(bondal_membership(e));
  CHECK(max_abs_diff(bondal_source(e), a) == 0.0);
  CHECK(max_abs_diff(bondal_target(e), a) == 0.0);
}

TEST_CASE("membership and validated construction") {
  const ComplexMatrix a{{1, 2}, {0, 1}};
  const ComplexMatrix lower{{1, 0}, {2, 1}};
  CHECK_FALSE(bondal_membership(BondalPoint{ComplexMatrix::identity(2), lower}));
  CHECK_FALSE(bondal_membership(BondalPoint{ComplexMatrix(2), a}));
  // a swap sends A to A^T after transposed conjugation
  const ComplexMatrix swap{{0, 1}, {1, 0}};
  CHECK_FALSE(bondal_membership(BondalPoint{swap, a}));
  try {
    (void)bondal_point(swap, a);
    FAIL("expected invalid-point");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_point);
  }
  CHECK(is_unipotent_upper(a, 1e-12));
  CHECK_FALSE(is_unipotent_upper(lower, 1e-12));
}

TEST_CASE("Coxeter arrows and their sign twists are members") {
  oracle::Rng rng(62);
  for (std::size_t size = 2; size <= 5; ++size) {
    const ComplexMatrix a = unipotent(rng, size);
    for (int k = -2; k <= 2; ++k)
      for (unsigned signs = 0; signs < 4; ++signs) CHECK(bondal_membership(coxeter_arrow(a, k, signs)));
  }
}

TEST_CASE("groupoid axioms hold") {
  oracle::Rng rng(63);
  for (std::size_t size = 2; size <= 3; ++size) {
    for (int trial = 0; trial < 20; ++trial) {
      const ComplexMatrix a = unipotent(rng, size);
      const auto w = coxeter_arrow(a, trial % 3 - 1, static_cast<unsigned>(trial));
      const auto q = coxeter_arrow(bondal_target(w), 1, static_cast<unsigned>(trial + 1));
      const auto p = coxeter_arrow(bondal_target(q), -1, static_cast<unsigned>(trial + 2));
      CHECK(distance(bondal_compose(bondal_compose(p, q), w), bondal_compose(p, bondal_compose(q, w))) < 1e-11);
      CHECK(distance(bondal_compose(p, bondal_unit(bondal_source(p))), p) < 1e-11);
      CHECK(distance(bondal_compose(bondal_unit(bondal_target(p)), p), p) < 1e-11);
      CHECK(distance(bondal_compose(bondal_inverse(p), p), bondal_unit(bondal_source(p))) < 1e-11);
      CHECK(max_abs_diff(bondal_target(bondal_inverse(p)), bondal_source(p)) < 1e-11);
    }
  }
}

TEST_CASE("composition checks composability") {
  oracle::Rng rng(64);
  const auto p = bondal_unit(unipotent(rng, 3));
  const auto q = bondal_unit(unipotent(rng, 3));
  try {
    (void)bondal_compose(p, q);
    FAIL("expected not-composable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::not_composable);
  }
}

TEST_CASE("embedding of a unit for n = 1") {
  const auto rs = load_or_derive_root_sets(1);
  const cd sigma(0.9, 0.0);
  const auto e = embed_slocal(rs, unit_point(build_M(rs, {sigma})));
  const ComplexMatrix expected{{1, sigma}, {0, 1}};
  CHECK(max_abs_diff(e.b, ComplexMatrix::identity(2)) == 0.0);
  CHECK(max_abs_diff(e.a, expected) < 1e-15);
  CHECK(bondal_membership(e));
}

TEST_CASE("embedding of S^local intertwines composition") {
  for (int n = 1; n <= 3; ++n) {
    CAPTURE(n);
    const auto rs = load_or_derive_root_sets(n);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const ComplexMatrix a = build_M(rs, random_local_params(n, seed));
      const auto p = sample_slocal_fiber(rs, a, 2 * seed);
      const auto q = sample_slocal_fiber(rs, a, 2 * seed + 1);
      const auto ep = embed_slocal(rs, p), eq = embed_slocal(rs, q);
      // target computed independently: B^{-T} S^{-T} B^{-1}
      const Eigen::MatrixXcd bi = oracle::to_eigen(p.b).inverse();
      const Eigen::MatrixXcd st = oracle::to_eigen(build_S(rs, 1, p.s)).inverse().transpose();
      CHECK(oracle::max_diff(bondal_target(ep), bi.transpose() * st * bi) < 1e-9);
      CHECK(max_abs_diff(bondal_target(ep), ep.a) < 1e-9);
      CHECK(distance(embed_slocal(rs, compose(p, q)), bondal_compose(ep, eq)) < 1e-9);
    }
  }
}

TEST_CASE("triangularizing permutation search") {
  const ComplexMatrix upper{{1, 3}, {0, 1}};
  const auto id = triangularizing_permutation(upper);
  REQUIRE(id);
  CHECK(*id == std::vector<int>{0, 1});
  const auto flipped = triangularizing_permutation(upper.transpose());
  REQUIRE(flipped);
  CHECK(*flipped == std::vector<int>{1, 0});
  const ComplexMatrix full{{1, 1}, {1, 1}};
  CHECK_FALSE(triangularizing_permutation(full));
}
