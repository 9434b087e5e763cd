#include "ucgl/bondal.hpp"

#include <algorithm>
#include <numeric>

#include "ucgl/error.hpp"

namespace ucgl {

bool is_unipotent_upper(const ComplexMatrix& m, double tol) {
  for (std::size_t i = 0; i < m.dim(); ++i) {
    if (std::abs(m(i, i) - 1.0) >= tol) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(m(i, j)) >= tol) return false;
  }
  return true;
}

bool bondal_membership(const BondalPoint& p, double tol) {
  if (p.b.dim() != p.a.dim() || !is_unipotent_upper(p.a, tol)) return false;
  if (std::abs(determinant(p.b)) <= 1e-12) return false;
  return is_unipotent_upper(bondal_target(p), tol);
}

BondalPoint bondal_point(ComplexMatrix b, ComplexMatrix a, double tol) {
  BondalPoint p{std::move(b), std::move(a)};
  if (!bondal_membership(p, tol)) throw Error(ErrorKind::invalid_point, "not a point of the Bondal groupoid");
  return p;
}

ComplexMatrix bondal_source(const BondalPoint& p) { return p.a; }

ComplexMatrix bondal_target(const BondalPoint& p) {
  const ComplexMatrix b_inv = inverse(p.b);
  return b_inv.transpose() * p.a * b_inv;
}

BondalPoint bondal_unit(const ComplexMatrix& a) { return BondalPoint{ComplexMatrix::identity(a.dim()), a}; }

BondalPoint bondal_inverse(const BondalPoint& p) { return BondalPoint{inverse(p.b), bondal_target(p)}; }

BondalPoint bondal_compose(const BondalPoint& p, const BondalPoint& q, double tol) {
  const ComplexMatrix tq = bondal_target(q);
  if (max_abs_diff(p.a, tq) >= tol * std::max(1.0, tq.max_abs())) {
    throw Error(ErrorKind::not_composable, "source of the first arrow differs from the target of the second");
  }
  return BondalPoint{p.b * q.b, q.a};
}

BondalPoint embed_slocal(const RootSetData& rs, const GroupoidPoint& p) {
  return BondalPoint{p.b, inverse(build_S(rs, 1, p.s)).transpose()};
}

std::optional<std::vector<int>> triangularizing_permutation(const ComplexMatrix& m, double tol) {
  std::vector<int> perm(m.dim());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    ComplexMatrix permuted(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
      for (std::size_t j = 0; j < m.dim(); ++j)
        permuted(i, j) = m(static_cast<std::size_t>(perm[i]), static_cast<std::size_t>(perm[j]));
    if (is_unipotent_upper(permuted, tol)) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

}  // namespace ucgl
