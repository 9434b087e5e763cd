#pragma once

// A minimal Bondal groupoid: pairs (B, A) with A unipotent upper triangular
// and B^{-T} A B^{-1} again unipotent upper triangular.

#include <optional>
#include <vector>

#include "ucgl/involutions.hpp"

namespace ucgl {

struct BondalPoint {
  ComplexMatrix b;
  ComplexMatrix a;
};

bool is_unipotent_upper(const ComplexMatrix& m, double tol);

bool bondal_membership(const BondalPoint& p, double tol = 1e-9);

/// Validated constructor; throws invalid-point for non-members.
BondalPoint bondal_point(ComplexMatrix b, ComplexMatrix a, double tol = 1e-9);

ComplexMatrix bondal_source(const BondalPoint& p);
ComplexMatrix bondal_target(const BondalPoint& p);
BondalPoint bondal_unit(const ComplexMatrix& a);
BondalPoint bondal_inverse(const BondalPoint& p);

/// (B1 B2, A2); requires A1 = B2^{-T} A2 B2^{-1}, else throws not-composable.
BondalPoint bondal_compose(const BondalPoint& p, const BondalPoint& q, double tol = 1e-9);

/// (B, S_1(s)^{-T}) for a point of S^local.
BondalPoint embed_slocal(const RootSetData& rs, const GroupoidPoint& p);

/// Permutation P (as an index map) with P M P^T unipotent upper triangular,
/// found by exhaustive search; empty when none exists.
std::optional<std::vector<int>> triangularizing_permutation(const ComplexMatrix& m, double tol = 1e-9);

}  // namespace ucgl
