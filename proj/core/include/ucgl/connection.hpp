#pragma once

// Coefficient of the meromorphic connection form and its four symmetries.

#include <vector>

#include "ucgl/linalg.hpp"

namespace ucgl {

struct TodaInput {
  int n = 0;
  std::vector<double> w;  // diagonal of w, length n+1
  std::vector<double> v;  // stands for x * w_x, length n+1
  double x = 1.0;
  Complex zeta{1.0, 0.0};
};

enum class SymmetryKind { cyclic, anti, c_real, theta_real };

/// W = e^{-w} Pi e^{w}.
ComplexMatrix build_W(const std::vector<double>& w);

/// A(zeta) = -zeta^{-2} W^T - zeta^{-1} diag(v) + x^2 W. Throws pole-evaluation at zeta = 0.
ComplexMatrix alpha_coeff(const TodaInput& inp);

bool is_anti_symmetric(const TodaInput& inp, double tol = 1e-14);

/// Max-abs residual of one coefficient-level symmetry identity, Jacobian
/// factor of the zeta substitution included. Requires anti-symmetric w, v.
double alpha_symmetry_residual(SymmetryKind kind, const TodaInput& inp);

/// Same identity without the anti-symmetry precondition.
double alpha_symmetry_residual_unchecked(SymmetryKind kind, const TodaInput& inp);

}  // namespace ucgl
