#include <doctest.h>

#include "oracle.hpp"
#include "ucgl/groupoid.hpp"
#include "ucgl/involutions.hpp"
#include "ucgl/symplectic.hpp"

using namespace ucgl;
using oracle::cd;

// Randomized invariants that cross module boundaries. Each case sweeps
// n = 1..4 with a fresh generator per n.

TEST_CASE("the involutions preserve Z and act on the base through the section") {
  for (int n = 1; n <= 4; ++n) {
    CAPTURE(n);
    const auto rs = load_or_derive_root_sets(n);
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
      const auto p = sample_z_point(rs, seed);
      for (const auto& image : {apply_sigma(rs, p), apply_theta(rs, p)}) {
        CHECK(z_membership(rs, image.b, image.a, 1e-8));
        CHECK(section_membership(rs, image.a, 1e-8).in_section);
      }
      CHECK(oracle::max_diff(apply_sigma(rs, p).s, reversed(p.s)) < 1e-9);
      CHECK(oracle::max_diff(apply_theta(rs, p).s, conj_reversed(p.s)) < 1e-9);
    }
  }
}

TEST_CASE("the involutions are groupoid morphisms") {
  for (int n = 1; n <= 4; ++n) {
    const auto rs = load_or_derive_root_sets(n);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto p = sample_z_point(rs, seed);
      const auto q = make_point(sample_commuting(p.a, seed + 500), p.a);
      const double scale = 1.0 + p.b.max_abs() * q.b.max_abs();
      CHECK(point_distance(apply_sigma(rs, compose(p, q)), compose(apply_sigma(rs, p), apply_sigma(rs, q))) <
            1e-9 * scale);
      CHECK(point_distance(apply_theta(rs, compose(p, q)), compose(apply_theta(rs, p), apply_theta(rs, q))) <
            1e-9 * scale);
    }
  }
}

TEST_CASE("S^local is a subgroupoid") {
  for (int n = 1; n <= 4; ++n) {
    CAPTURE(n);
    const auto rs = load_or_derive_root_sets(n);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const ComplexMatrix a = build_M(rs, random_local_params(n, seed));
      const auto p = sample_slocal_fiber(rs, a, 3 * seed);
      const auto q = sample_slocal_fiber(rs, a, 3 * seed + 1);
      for (const auto& r : {compose(p, q), inverse_point(p), unit_point(a)}) {
        const auto flags = slocal_membership(rs, r, 1e-8);
        CHECK(flags.fixed_route);
        CHECK(flags.direct_route);
      }
    }
  }
}

TEST_CASE("the 2-form is invariant under the involutions on S^local tangents") {
  for (int n = 1; n <= 3; ++n) {
    const auto rs = load_or_derive_root_sets(n);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto p = sample_slocal_fiber(rs, build_M(rs, random_local_params(n, seed)), seed);
      const auto basis = tangent_space(rs, p);
      CHECK(involution_pullback_residual(rs, InvolutionKind::sigma, p, basis, DifferentialRoute::analytic) < 1e-8);
      CHECK(involution_pullback_residual(rs, InvolutionKind::theta, p, basis, DifferentialRoute::analytic) < 1e-8);
    }
  }
}

TEST_CASE("characters of the base are constant along fibres and along composition") {
  for (int n = 1; n <= 4; ++n) {
    const auto rs = load_or_derive_root_sets(n);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto p = sample_z_point(rs, seed);
      const auto q = make_point(sample_commuting(p.a, seed + 900), p.a);
      CHECK(oracle::max_diff(characters(compose(p, q).a), characters(p.a)) == 0.0);
      CHECK(oracle::max_diff(stokes_params_of(target(p)), p.s) < 1e-9);
    }
  }
}

TEST_CASE("the 2-form stays nondegenerate across dimensions") {
  for (int n = 1; n <= 4; ++n) {
    CAPTURE(n);
    const auto rs = load_or_derive_root_sets(n);
    for (std::uint64_t seed = 100; seed < 105; ++seed) {
      const auto p = sample_z_point(rs, seed);
      const auto gram = gram_matrix(p, tangent_space(rs, p));
      CHECK(gram.gram.size() == static_cast<std::size_t>(2 * n));
      CHECK(gram.min_singular > 1e-6);
    }
  }
}
