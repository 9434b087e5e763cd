#pragma once

// The universal centralizer Z over the section as a concrete groupoid:
// membership, structure maps, commutant bases, seeded sampling of Z and of
// S^local fibres, and tangent spaces.

#include <cstdint>
#include <vector>

#include "ucgl/involutions.hpp"
#include "ucgl/linalg.hpp"
#include "ucgl/stokes.hpp"

namespace ucgl {

enum class TangentKind { fiber, horizontal, general };

/// Tangent vector at a point (B, A): X is the variation of B, Y of A, and
/// sdot the matching variation of the Stokes parameters.
struct TangentVector {
  ComplexMatrix x;
  ComplexMatrix y;
  StokesParams sdot;
  TangentKind kind = TangentKind::general;
};

TangentVector scaled(const TangentVector& u, Complex c);
TangentVector combine(const std::vector<TangentVector>& basis, std::span<const Complex> coeffs);

bool z_membership(const RootSetData& rs, const ComplexMatrix& b, const ComplexMatrix& a, double tol);

GroupoidPoint unit_point(const ComplexMatrix& a);
GroupoidPoint inverse_point(const GroupoidPoint& p);
/// (B1 B2, A); throws not-composable when the bases differ by 1e-10 or more.
GroupoidPoint compose(const GroupoidPoint& p, const GroupoidPoint& q);
const ComplexMatrix& source(const GroupoidPoint& p);
const ComplexMatrix& target(const GroupoidPoint& p);

struct CentralizerBasis {
  std::vector<ComplexMatrix> commutant;  // I, A, ..., A^n
  std::vector<ComplexMatrix> lie;        // traceless parts of A, ..., A^n
};

/// Throws not-regular when A is not regular.
CentralizerBasis centralizer_basis(const ComplexMatrix& a);

/// Deterministic complex sample with components uniform in [-1, 1] + i[-1, 1].
std::vector<Complex> seeded_complex(std::uint64_t seed, std::size_t count);
StokesParams random_params(int n, std::uint64_t seed);
StokesParams random_local_params(int n, std::uint64_t seed);

/// det-normalized sum of c_j A^j with explicit coefficients.
/// Throws degenerate-sample when |det| of the raw sum is below 1e-8.
ComplexMatrix commuting_from_coefficients(const ComplexMatrix& a, std::span<const Complex> coeffs);

/// Seeded commuting sample with det 1 (bounded retries).
ComplexMatrix sample_commuting(const ComplexMatrix& a, std::uint64_t seed);

/// Random point of Z: seeded parameters and a seeded commuting B.
GroupoidPoint sample_z_point(const RootSetData& rs, std::uint64_t seed);

/// Point of S^local over A built from a commuting C by the double norm map.
GroupoidPoint slocal_from_commuting(const RootSetData& rs, const ComplexMatrix& a, const ComplexMatrix& c);

/// Parameters fixed by the base involution theta_0: s_i = conj(s_{n+1-i}).
StokesParams random_theta_params(int n, std::uint64_t seed);

/// Point of Z fixed by theta: (C theta_hat(C), A) for A fixed by theta_0.
GroupoidPoint theta_fixed_from_commuting(const RootSetData& rs, const ComplexMatrix& a, const ComplexMatrix& c);

/// Seeded S^local point over A; A must lie in M^local. Draws are repeated
/// until cond(B) <= 100; degenerate-sample when the retries run out.
GroupoidPoint sample_slocal_fiber(const RootSetData& rs, const ComplexMatrix& a, std::uint64_t seed);

/// Seeded theta-fixed point over A; A must be fixed by theta_0. Same
/// conditioning rule as sample_slocal_fiber.
GroupoidPoint sample_theta_fixed_fiber(const RootSetData& rs, const ComplexMatrix& a, std::uint64_t seed);

/// Linearized constraint residual of a candidate tangent vector.
double tangent_residual(const RootSetData& rs, const GroupoidPoint& p, const TangentVector& u);

/// Complex dimension of the numerical kernel of the linearized constraints.
std::size_t tangent_dimension(const RootSetData& rs, const GroupoidPoint& p, double tol);

/// Basis of T_p Z: n fibre vectors followed by n lifts of the coordinate
/// directions of s (horizontal at units). Throws degenerate-tangent when the
/// kernel dimension differs from 2n.
std::vector<TangentVector> tangent_space(const RootSetData& rs, const GroupoidPoint& p, double tol = 1e-9);

/// Nearest point of Z over the section element with parameters s: least
/// squares onto span{A^j}, then det-normalized. Throws projection-failure
/// when the relative distance exceeds max_rel.
GroupoidPoint retract_to_z(const RootSetData& rs, const ComplexMatrix& b_guess, const StokesParams& s,
                           double max_rel = 1e-2);

}  // namespace ucgl
