#include "ucgl/connection.hpp"

#include <cmath>

#include "ucgl/error.hpp"

namespace ucgl {

namespace {

void require_length(const TodaInput& inp) {
  const auto size = static_cast<std::size_t>(inp.n + 1);
  if (inp.n < 1 || inp.w.size() != size || inp.v.size() != size) {
    throw Error(ErrorKind::invalid_dimension, "w and v must have length n+1");
  }
}

ComplexMatrix real_diagonal(const std::vector<double>& values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

TodaInput at_zeta(TodaInput inp, Complex zeta) {
  inp.zeta = zeta;
  return inp;
}

}  // namespace

ComplexMatrix build_W(const std::vector<double>& w) {
  if (w.size() < 2) throw Error(ErrorKind::invalid_dimension, "w needs length >= 2");
  const auto st = structural_matrices(static_cast<int>(w.size()) - 1);
  ComplexMatrix out = st.pi;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j)
      if (out(i, j) != Complex{}) out(i, j) *= std::exp(w[j] - w[i]);
  return out;
}

ComplexMatrix alpha_coeff(const TodaInput& inp) {
  require_length(inp);
  if (inp.zeta == Complex{}) throw Error(ErrorKind::pole_evaluation, "zeta = 0 is a pole of the connection form");
  const ComplexMatrix w = build_W(inp.w);
  const Complex inv = 1.0 / inp.zeta;
  return -(inv * inv) * w.transpose() - inv * real_diagonal(inp.v) + (inp.x * inp.x) * w;
}

bool is_anti_symmetric(const TodaInput& inp, double tol) {
  require_length(inp);
  const auto n = static_cast<std::size_t>(inp.n);
  for (std::size_t i = 0; i <= n; ++i) {
    if (std::abs(inp.w[i] + inp.w[n - i]) > tol) return false;
    if (std::abs(inp.v[i] + inp.v[n - i]) > tol) return false;
  }
  return true;
}

double alpha_symmetry_residual(SymmetryKind kind, const TodaInput& inp) {
  if (!is_anti_symmetric(inp)) {
    throw Error(ErrorKind::precondition_violation, "w and v must satisfy w_i + w_{n-i} = 0");
  }
  return alpha_symmetry_residual_unchecked(kind, inp);
}

double alpha_symmetry_residual_unchecked(SymmetryKind kind, const TodaInput& inp) {
  require_length(inp);
  const auto st = structural_matrices(inp.n);
  const ComplexMatrix a = alpha_coeff(inp);
  const Complex z = inp.zeta;
  switch (kind) {
    case SymmetryKind::cyclic: {
      const ComplexMatrix lhs = inverse(st.d) * a * st.d;
      return max_abs_diff(lhs, st.omega_root * alpha_coeff(at_zeta(inp, st.omega_root * z)));
    }
    case SymmetryKind::anti: {
      const ComplexMatrix lhs = -(st.delta * a.transpose() * st.delta);
      return max_abs_diff(lhs, -alpha_coeff(at_zeta(inp, -z)));
    }
    case SymmetryKind::c_real: {
      const double x2 = inp.x * inp.x;
      const Complex zbar = std::conj(z);
      const ComplexMatrix lhs = st.delta * a.conj() * st.delta;
      const Complex jac = -1.0 / (x2 * zbar * zbar);
      return max_abs_diff(lhs, jac * alpha_coeff(at_zeta(inp, 1.0 / (x2 * zbar))));
    }
    case SymmetryKind::theta_real:
      return max_abs_diff(a.conj(), alpha_coeff(at_zeta(inp, std::conj(z))));
  }
  return 0.0;
}

}  // namespace ucgl
