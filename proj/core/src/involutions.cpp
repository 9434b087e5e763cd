#include "ucgl/involutions.hpp"

#include <algorithm>

#include "ucgl/error.hpp"

namespace ucgl {

namespace {

ComplexMatrix inverse_transpose(const ComplexMatrix& m) { return inverse(m).transpose(); }

// d/dt of F Z F^{-1} given F, Fdot, Z, Zdot.
ComplexMatrix conjugation_rate(const ComplexMatrix& f, const ComplexMatrix& fdot, const ComplexMatrix& z,
                               const ComplexMatrix& zdot) {
  const ComplexMatrix finv = inverse(f);
  const ComplexMatrix conjugated = f * z * finv;
  return fdot * z * finv + f * zdot * finv - conjugated * fdot * finv;
}

ComplexMatrix f_sigma_direction(const RootSetData& rs, const StokesParams& s, const StokesParams& sdot) {
  if (rs.parity() == Parity::odd) return ComplexMatrix(static_cast<std::size_t>(rs.size()));
  return build_S_direction(rs, 1, s, sdot).transpose();
}

ComplexMatrix f_theta_direction(const RootSetData& rs, const StokesParams& sdot) {
  if (rs.parity() == Parity::even) return ComplexMatrix(static_cast<std::size_t>(rs.size()));
  const auto st = structural_matrices(rs.n);
  return st.c_tilde * build_Q_direction(rs, SectorIndex{rs.n}, sdot).conj();
}

}  // namespace

GroupoidPoint make_point(ComplexMatrix b, ComplexMatrix a) {
  StokesParams s = stokes_params_of(a);
  return GroupoidPoint{std::move(b), std::move(a), std::move(s)};
}

double point_distance(const GroupoidPoint& p, const GroupoidPoint& q) {
  return std::max(max_abs_diff(p.b, q.b), max_abs_diff(p.a, q.a));
}

ComplexMatrix f_sigma(const RootSetData& rs, const StokesParams& s) {
  if (rs.parity() == Parity::odd) {
    const auto st = structural_matrices(rs.n);
    return power(st.pi_hat, rs.size() / 2);
  }
  return build_S(rs, 1, s).transpose();
}

ComplexMatrix f_theta(const RootSetData& rs, const StokesParams& s) {
  const auto st = structural_matrices(rs.n);
  if (rs.parity() == Parity::even) return st.c;
  return st.c_tilde * build_Q(rs, SectorIndex{rs.n}, s).conj();
}

ComplexMatrix sigma0(const RootSetData& rs, const ComplexMatrix& a) {
  return ad(f_sigma(rs, stokes_params_of(a)), inverse_transpose(a));
}

ComplexMatrix theta0(const RootSetData& rs, const ComplexMatrix& a) {
  return ad(f_theta(rs, stokes_params_of(a)), inverse(a.conj()));
}

GroupoidPoint apply_sigma(const RootSetData& rs, const GroupoidPoint& p) {
  const ComplexMatrix f = f_sigma(rs, p.s);
  return make_point(ad(f, inverse_transpose(p.b)), ad(f, inverse_transpose(p.a)));
}

GroupoidPoint apply_theta(const RootSetData& rs, const GroupoidPoint& p) {
  const ComplexMatrix f = f_theta(rs, p.s);
  return make_point(ad(f, p.b.conj()), ad(f, inverse(p.a.conj())));
}

double c_reality_residual(const ComplexMatrix& b) {
  return max_abs_diff(b * b.conj(), ComplexMatrix::identity(b.dim()));
}

SlocalMembership slocal_membership(const RootSetData& rs, const GroupoidPoint& p, double tol) {
  SlocalMembership out;
  try {
    out.fixed_route = point_distance(apply_sigma(rs, p), p) < tol && point_distance(apply_theta(rs, p), p) < tol;

    // The anti-symmetry and theta-reality conditions written out on B and A.
    const auto st = structural_matrices(rs.n);
    bool ok = true;
    if (rs.parity() == Parity::odd) {
      const ComplexMatrix h = power(st.pi_hat, rs.size() / 2);
      const ComplexMatrix h_inv = power(st.pi_hat, -(rs.size() / 2));
      ok = ok && max_abs_diff(p.b, h * inverse(p.b).transpose() * h_inv) < tol;
      ok = ok && max_abs_diff(p.a, h * inverse(p.a).transpose() * h_inv) < tol;
      const ComplexMatrix g = (st.c_tilde * build_Q(rs, SectorIndex{rs.n}, p.s)).conj();
      const ComplexMatrix g_inv = inverse(g);
      ok = ok && max_abs_diff(p.b, g * p.b.conj() * g_inv) < tol;
      ok = ok && max_abs_diff(p.a, g * inverse(p.a.conj()) * g_inv) < tol;
    } else {
      const ComplexMatrix s1 = build_S(rs, 1, p.s);
      const ComplexMatrix s1_inv_t = inverse(s1).transpose();
      ok = ok && max_abs_diff(p.b, s1.transpose() * inverse(p.b).transpose() * s1_inv_t) < tol;
      ok = ok && max_abs_diff(p.a, s1.transpose() * inverse(p.a).transpose() * s1_inv_t) < tol;
      ok = ok && max_abs_diff(p.b, st.c * p.b.conj() * inverse(st.c)) < tol;
      ok = ok && max_abs_diff(p.a, st.c * inverse(p.a.conj()) * inverse(st.c)) < tol;
    }
    out.direct_route = ok;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::singular_input) throw;
  }
  out.c_reality = c_reality_residual(p.b) < tol;
  return out;
}

PointVelocity sigma_differential(const RootSetData& rs, const GroupoidPoint& p, const PointVelocity& u) {
  const ComplexMatrix f = f_sigma(rs, p.s);
  const ComplexMatrix fdot = f_sigma_direction(rs, p.s, u.sdot);
  const ComplexMatrix b_it = inverse_transpose(p.b);
  const ComplexMatrix a_it = inverse_transpose(p.a);
  const ComplexMatrix b_it_dot = -(b_it * u.x.transpose() * b_it);
  const ComplexMatrix a_it_dot = -(a_it * u.y.transpose() * a_it);
  return PointVelocity{conjugation_rate(f, fdot, b_it, b_it_dot), conjugation_rate(f, fdot, a_it, a_it_dot),
                       reversed(u.sdot)};
}

PointVelocity theta_differential(const RootSetData& rs, const GroupoidPoint& p, const PointVelocity& u) {
  const ComplexMatrix f = f_theta(rs, p.s);
  const ComplexMatrix fdot = f_theta_direction(rs, u.sdot);
  const ComplexMatrix b_bar = p.b.conj();
  const ComplexMatrix a_bar_inv = inverse(p.a.conj());
  const ComplexMatrix a_dot = -(a_bar_inv * u.y.conj() * a_bar_inv);
  return PointVelocity{conjugation_rate(f, fdot, b_bar, u.x.conj()), conjugation_rate(f, fdot, a_bar_inv, a_dot),
                       conj_reversed(u.sdot)};
}

}  // namespace ucgl
