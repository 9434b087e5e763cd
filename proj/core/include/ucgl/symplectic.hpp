#pragma once

// The multiplicative 2-form on G x G restricted to Z, and the checks built
// on it: unit blocks, multiplicativity, closedness, nondegeneracy,
// involution pullbacks, characters, Poisson brackets and real forms.

#include <cstddef>
#include <vector>

#include "ucgl/groupoid.hpp"

namespace ucgl {

/// The 2-form at (g, a) on (X_u, Y_u), (X_v, Y_v).
Complex omega_at(const ComplexMatrix& g, const ComplexMatrix& a, const ComplexMatrix& xu, const ComplexMatrix& yu,
                 const ComplexMatrix& xv, const ComplexMatrix& yv);

Complex omega(const GroupoidPoint& p, const TangentVector& u, const TangentVector& v);

/// Fibre vector (xi, 0) and horizontal vector (0, a rho) at the unit over a.
TangentVector unit_fiber_vector(const ComplexMatrix& xi);
TangentVector unit_horizontal_vector(const ComplexMatrix& a, const ComplexMatrix& rho);

/// Closed-form value of the 2-form at a unit for tagged fibre/horizontal
/// vectors. Throws invalid-tangent-kind for general vectors.
Complex unit_block_value(const ComplexMatrix& a, const TangentVector& u, const TangentVector& v);

/// Tangent vector to the space of composable pairs: one vector per factor,
/// sharing the variation of the common base.
struct PairTangent {
  TangentVector first;
  TangentVector second;
};

/// Pushforward by the multiplication: (X1 B2 + B1 X2, Y).
TangentVector multiply_tangent(const GroupoidPoint& p, const GroupoidPoint& q, const PairTangent& u);

double multiplicativity_residual(const GroupoidPoint& p, const GroupoidPoint& q, const PairTangent& u,
                                 const PairTangent& v);

/// Basis of the tangent space to composable pairs over one base: fibre
/// vectors of each factor, then the paired lifts of each s-direction.
std::vector<PairTangent> pair_tangent_basis(const RootSetData& rs, const GroupoidPoint& p, const GroupoidPoint& q);

struct ClosednessOptions {
  double step = 1e-4;
  bool richardson = true;
};

/// Max |d omega| over all triples of real chart coordinates
/// (s and commutant coefficients c_1..c_n, with c_0 held fixed).
double closedness_residual(const RootSetData& rs, const GroupoidPoint& p, const ClosednessOptions& opts = {});

struct TwoFormGram {
  std::vector<std::vector<Complex>> gram;
  double min_singular = 0.0;
  double antisymmetry = 0.0;
};

TwoFormGram gram_matrix(const GroupoidPoint& p, const std::vector<TangentVector>& basis);

enum class InvolutionKind { sigma, theta };
enum class DifferentialRoute { analytic, finite_difference };

/// Image of a tangent vector under d sigma or d theta. The finite-difference
/// route retracts the straight curve onto Z and applies central differences
/// with one Richardson step.
TangentVector involution_differential(const RootSetData& rs, InvolutionKind kind, const GroupoidPoint& p,
                                      const TangentVector& u, DifferentialRoute route, double step = 1e-5);

/// sigma: max |omega(d sigma u, d sigma v) - omega(u, v)|;
/// theta: max |omega(d theta u, d theta v) + conj(omega(u, v))|.
double involution_pullback_residual(const RootSetData& rs, InvolutionKind kind, const GroupoidPoint& p,
                                    const std::vector<TangentVector>& basis, DifferentialRoute route,
                                    double step = 1e-5);

struct CharacterSystem {
  std::vector<Complex> values;
  std::size_t jacobian_rank = 0;
};

/// Elementary symmetric functions of the eigenvalues of M(s), read off the
/// characteristic polynomial.
std::vector<Complex> characters(const ComplexMatrix& a);
CharacterSystem character_system(const RootSetData& rs, const StokesParams& s);

/// |{chi_i, chi_j}| at p, pulled back by the source map, from
/// finite-difference gradients and the inverse Gram matrix.
double poisson_bracket_residual(const RootSetData& rs, std::size_t i, std::size_t j, const GroupoidPoint& p);

struct RealFormReport {
  std::size_t fixed_dimension = 0;  // real dimension of the fixed tangent subspace
  double re_omega_max = 0.0;        // max |Re omega| on the fixed subspace
  double im_omega_min_singular = 0.0;
  double im_omega_antisymmetry = 0.0;
};

/// Fixed subspace of d theta (theta_only) or of both d sigma and d theta at
/// a point fixed by the corresponding involutions.
RealFormReport real_form_check(const RootSetData& rs, const GroupoidPoint& p, bool theta_only);

}  // namespace ucgl
