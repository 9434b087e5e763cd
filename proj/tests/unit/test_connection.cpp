#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "ucgl/connection.hpp"
#include "ucgl/error.hpp"

using namespace ucgl;
using oracle::cd;

namespace {

TodaInput anti_input(int n, oracle::Rng& rng, double x, cd zeta) {
  TodaInput inp;
  inp.n = n;
  inp.w.assign(static_cast<std::size_t>(n) + 1, 0.0);
  inp.v.assign(static_cast<std::size_t>(n) + 1, 0.0);
  for (int i = 0; i < n - i; ++i) {
    const double u = rng.real(), p = rng.real();
    inp.w[static_cast<std::size_t>(i)] = u;
    inp.w[static_cast<std::size_t>(n - i)] = -u;
    inp.v[static_cast<std::size_t>(i)] = p;
    inp.v[static_cast<std::size_t>(n - i)] = -p;
  }
  inp.x = x;
  inp.zeta = zeta;
  return inp;
}

Eigen::MatrixXcd diag_exp(const std::vector<double>& w, double sign) {
  Eigen::VectorXcd d(static_cast<Eigen::Index>(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i) d(static_cast<Eigen::Index>(i)) = std::exp(sign * w[i]);
  return d.asDiagonal();
}

}  // namespace

TEST_CASE("W reduces to the cyclic shift at w = 0") {
  for (int n = 1; n <= 4; ++n) {
    const auto w = build_W(std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0));
    CHECK(max_abs_diff(w, structural_matrices(n).pi) == 0.0);
  }
}

TEST_CASE("W for n = 1 with w = (u, -u)") {
  const double u = 0.37;
  const ComplexMatrix expected{{0, std::exp(-2 * u)}, {std::exp(2 * u), 0}};
  CHECK(max_abs_diff(build_W({u, -u}), expected) < 1e-15);
}

TEST_CASE("W equals exp(-w) Pi exp(w) for random w") {
  oracle::Rng rng(1);
  for (int n = 1; n <= 5; ++n) {
    std::vector<double> w(static_cast<std::size_t>(n) + 1);
    for (auto& x : w) x = rng.real();
    const Eigen::MatrixXcd ref = diag_exp(w, -1.0) * oracle::to_eigen(structural_matrices(n).pi) * diag_exp(w, 1.0);
    CHECK(oracle::max_diff(build_W(w), ref) < 1e-14);
  }
}

TEST_CASE("anti-diagonal flip fixes W^T for anti-symmetric w") {
  oracle::Rng rng(2);
  const auto inp = anti_input(2, rng, 1.0, 1.0);
  const auto st = structural_matrices(2);
  const ComplexMatrix w = build_W(inp.w);
  CHECK(max_abs_diff(st.delta * w.transpose() * st.delta, w) < 1e-14);
}

TEST_CASE("connection coefficient at trivial data") {
  const auto st = structural_matrices(1);
  TodaInput inp{1, {0, 0}, {0, 0}, 1.0, 1.0};
  CHECK(max_abs_diff(alpha_coeff(inp), st.pi - st.pi.transpose()) == 0.0);
  inp.zeta = cd(0, 1);
  CHECK(max_abs_diff(alpha_coeff(inp), st.pi + st.pi.transpose()) < 1e-15);
}

TEST_CASE("connection coefficient scales as the Laurent formula predicts") {
  oracle::Rng rng(3);
  for (int n = 1; n <= 4; ++n) {
    auto inp = anti_input(n, rng, 1.1, cd(0.4, -0.3));
    const ComplexMatrix w = build_W(inp.w);
    ComplexMatrix v(static_cast<std::size_t>(n) + 1);
    for (std::size_t i = 0; i < inp.v.size(); ++i) v(i, i) = inp.v[i];
    const cd z = inp.zeta;
    inp.zeta = 2.0 * z;
    const ComplexMatrix residual =
        alpha_coeff(inp) + (1.0 / (4.0 * z * z)) * w.transpose() + (1.0 / (2.0 * z)) * v - (inp.x * inp.x) * w;
    CHECK(residual.max_abs() < 1e-13);
  }
}

TEST_CASE("zeta = 0 is a pole") {
  TodaInput inp{1, {0, 0}, {0, 0}, 1.0, 0.0};
  CHECK_THROWS_AS(alpha_coeff(inp), Error);
  try {
    (void)alpha_coeff(inp);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::pole_evaluation);
  }
}

TEST_CASE("theta-reality is exact for real data") {
  oracle::Rng rng(4);
  for (int n = 1; n <= 4; ++n) {
    const auto inp = anti_input(n, rng, 0.8, 0.6);
    CHECK(alpha_symmetry_residual(SymmetryKind::theta_real, inp) == 0.0);
  }
}

TEST_CASE("cyclic symmetry for n = 2") {
  oracle::Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inp = anti_input(2, rng, 1.3, cd(0.7, 0.2));
    CHECK(alpha_symmetry_residual(SymmetryKind::cyclic, inp) < 1e-12);
  }
}

TEST_CASE("c-reality for n = 1") {
  oracle::Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inp = anti_input(1, rng, rng.real(0.5, 2.0), rng.complex());
    CHECK(alpha_symmetry_residual(SymmetryKind::c_real, inp) < 1e-12);
  }
}

TEST_CASE("all four symmetries hold for anti-symmetric inputs") {
  oracle::Rng rng(7);
  for (int n = 1; n <= 5; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto inp = anti_input(n, rng, rng.real(0.5, 2.0), std::polar(rng.real(0.3, 2.0), rng.real(-3.0, 3.0)));
      for (const auto kind : {SymmetryKind::cyclic, SymmetryKind::anti, SymmetryKind::c_real, SymmetryKind::theta_real})
        CHECK(alpha_symmetry_residual(kind, inp) < 1e-11);
    }
  }
}

TEST_CASE("anti-symmetry and c-reality fail without the anti-symmetric constraint") {
  TodaInput inp{2, {0.3, -0.1, 0.5}, {0.2, 0.4, -0.7}, 1.0, cd(0.8, 0.1)};
  CHECK_FALSE(is_anti_symmetric(inp));
  CHECK(alpha_symmetry_residual_unchecked(SymmetryKind::anti, inp) > 1e-3);
  CHECK(alpha_symmetry_residual_unchecked(SymmetryKind::c_real, inp) > 1e-3);
  try {
    (void)alpha_symmetry_residual(SymmetryKind::anti, inp);
    FAIL("expected a precondition violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::precondition_violation);
  }
}

TEST_CASE("mismatched lengths are rejected") {
  TodaInput inp{2, {0.0, 0.0}, {0.0, 0.0, 0.0}, 1.0, 1.0};
  CHECK_THROWS_AS(alpha_coeff(inp), Error);
}
