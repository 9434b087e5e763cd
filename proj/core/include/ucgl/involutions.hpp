#pragma once

#include "ucgl/linalg.hpp"
#include "ucgl/stokes.hpp"

namespace ucgl {

/// A pair (B, A) with A on the section and B commuting with A.
struct GroupoidPoint {
  ComplexMatrix b;
  ComplexMatrix a;
  StokesParams s;
};

/// Builds a point and caches the parameters of A. No validation.
GroupoidPoint make_point(ComplexMatrix b, ComplexMatrix a);

/// Max-abs distance over both components.
double point_distance(const GroupoidPoint& p, const GroupoidPoint& q);

ComplexMatrix f_sigma(const RootSetData& rs, const StokesParams& s);
ComplexMatrix f_theta(const RootSetData& rs, const StokesParams& s);

ComplexMatrix sigma0(const RootSetData& rs, const ComplexMatrix& a);
ComplexMatrix theta0(const RootSetData& rs, const ComplexMatrix& a);

GroupoidPoint apply_sigma(const RootSetData& rs, const GroupoidPoint& p);
GroupoidPoint apply_theta(const RootSetData& rs, const GroupoidPoint& p);

struct SlocalMembership {
  bool fixed_route = false;
  bool direct_route = false;
  bool c_reality = false;
};

SlocalMembership slocal_membership(const RootSetData& rs, const GroupoidPoint& p, double tol);

/// ||B conj(B) - I||_max.
double c_reality_residual(const ComplexMatrix& b);

/// Tangent data (X, Y) at a point together with the parameter velocity of A.
struct PointVelocity {
  ComplexMatrix x;
  ComplexMatrix y;
  StokesParams sdot;
};

/// Exact differentials of the involutions: the velocity of sigma(p(t)) and
/// theta(p(t)) for a curve with the given velocity. For theta the result is
/// conjugate-linear in the input velocity.
PointVelocity sigma_differential(const RootSetData& rs, const GroupoidPoint& p, const PointVelocity& u);
PointVelocity theta_differential(const RootSetData& rs, const GroupoidPoint& p, const PointVelocity& u);

}  // namespace ucgl
