#include "ucgl/symplectic.hpp"

#include <algorithm>
#include <cmath>

#include "ucgl/error.hpp"

namespace ucgl {

namespace {

TangentVector zero_tangent(std::size_t size, std::size_t n) {
  return TangentVector{ComplexMatrix(size), ComplexMatrix(size), StokesParams(n), TangentKind::general};
}

bool is_tagged(const TangentVector& u) {
  return u.kind == TangentKind::fiber || u.kind == TangentKind::horizontal;
}

// Chart (s, c_1..c_n) -> Z with c_0 held fixed; B = det(P)^{-1/(n+1)} P for
// P = sum c_j A(s)^j.
struct Chart {
  const RootSetData& rs;
  StokesParams s0;
  std::vector<Complex> c0;

  struct Sample {
    GroupoidPoint point;
    std::vector<TangentVector> complex_dirs;  // d/ds_1..d/ds_n, d/dc_1..d/dc_n
  };

  Sample at(const std::vector<double>& x) const {
    const auto n = static_cast<std::size_t>(rs.n);
    const auto size = n + 1;
    StokesParams s = s0;
    std::vector<Complex> c = c0;
    for (std::size_t i = 0; i < n; ++i) {
      s[i] += Complex(x[2 * i], x[2 * i + 1]);
      c[i + 1] += Complex(x[2 * n + 2 * i], x[2 * n + 2 * i + 1]);
    }
    const ComplexMatrix a = build_M(rs, s);
    const auto partials = build_M_partials(rs, s);

    std::vector<ComplexMatrix> powers{ComplexMatrix::identity(size)};
    for (std::size_t j = 1; j < size; ++j) powers.push_back(powers.back() * a);
    ComplexMatrix p(size);
    for (std::size_t j = 0; j < size; ++j) p += c[j] * powers[j];
    const Complex det = determinant(p);
    if (std::abs(det) < 1e-10) throw Error(ErrorKind::degenerate_chart, "chart leaves invertible elements");
    const Complex lambda = std::exp(-std::log(det) / static_cast<double>(size));
    const ComplexMatrix p_inv = inverse(p);

    auto normalize = [&](const ComplexMatrix& dp) {
      const Complex rate = trace_form(p_inv, dp) / static_cast<double>(size);
      return lambda * (dp - rate * p);
    };

    Sample out{make_point(lambda * p, a), {}};
    for (std::size_t i = 0; i < n; ++i) {
      ComplexMatrix dp(size);
      for (std::size_t j = 1; j < size; ++j) {
        ComplexMatrix dpow(size);
        for (std::size_t k = 0; k < j; ++k) dpow += powers[k] * partials[i] * powers[j - 1 - k];
        dp += c[j] * dpow;
      }
      StokesParams sdot(n);
      sdot[i] = 1.0;
      out.complex_dirs.push_back(TangentVector{normalize(dp), partials[i], sdot, TangentKind::general});
    }
    for (std::size_t j = 1; j < size; ++j) {
      out.complex_dirs.push_back(TangentVector{normalize(powers[j]), ComplexMatrix(size), StokesParams(n),
                                               TangentKind::general});
    }
    return out;
  }

  // Gram of the 2-form over the real coordinate vectors at x.
  std::vector<std::vector<Complex>> real_gram(const std::vector<double>& x) const {
    const auto sample = at(x);
    std::vector<TangentVector> real_dirs;
    for (const auto& d : sample.complex_dirs) {
      real_dirs.push_back(d);
      real_dirs.push_back(scaled(d, Complex(0.0, 1.0)));
    }
    // Coordinate order: (Re s_i, Im s_i) then (Re c_j, Im c_j).
    const std::size_t m = real_dirs.size();
    std::vector<std::vector<Complex>> g(m, std::vector<Complex>(m));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b) {
        g[a][b] = omega(sample.point, real_dirs[a], real_dirs[b]);
        g[b][a] = -g[a][b];
      }
    return g;
  }
};

std::vector<Complex> stack(const TangentVector& u) {
  auto out = flatten(u.x);
  const auto y = flatten(u.y);
  out.insert(out.end(), y.begin(), y.end());
  out.insert(out.end(), u.sdot.begin(), u.sdot.end());
  return out;
}

double min_singular_value(const DenseMatrix& m) {
  const auto svd = jacobi_svd(m);
  return svd.singular_values.empty() ? 0.0 : svd.singular_values.back();
}

TangentVector apply_differential(const RootSetData& rs, InvolutionKind kind, const GroupoidPoint& p,
                                 const TangentVector& u) {
  const PointVelocity in{u.x, u.y, u.sdot};
  const PointVelocity out =
      kind == InvolutionKind::sigma ? sigma_differential(rs, p, in) : theta_differential(rs, p, in);
  return TangentVector{out.x, out.y, out.sdot, TangentKind::general};
}

GroupoidPoint apply_involution(const RootSetData& rs, InvolutionKind kind, const GroupoidPoint& p) {
  return kind == InvolutionKind::sigma ? apply_sigma(rs, p) : apply_theta(rs, p);
}

}  // namespace

Complex omega_at(const ComplexMatrix& g, const ComplexMatrix& a, const ComplexMatrix& xu, const ComplexMatrix& yu,
                 const ComplexMatrix& xv, const ComplexMatrix& yv) {
  const ComplexMatrix g_inv = inverse(g);
  const ComplexMatrix a_inv = inverse(a);
  const ComplexMatrix u = g_inv * xu;
  const ComplexMatrix v = g_inv * xv;
  const Complex t1 = trace_form(a * u * a_inv, v);
  const Complex t2 = trace_form(a * v * a_inv, u);
  const Complex t3 = trace_form(u, a_inv * yv + yv * a_inv);
  const Complex t4 = trace_form(v, a_inv * yu + yu * a_inv);
  return 0.5 * (t1 - t2 + t3 - t4);
}

Complex omega(const GroupoidPoint& p, const TangentVector& u, const TangentVector& v) {
  return omega_at(p.b, p.a, u.x, u.y, v.x, v.y);
}

TangentVector unit_fiber_vector(const ComplexMatrix& xi) {
  return TangentVector{xi, ComplexMatrix(xi.dim()), StokesParams(xi.dim() - 1), TangentKind::fiber};
}

TangentVector unit_horizontal_vector(const ComplexMatrix& a, const ComplexMatrix& rho) {
  return TangentVector{ComplexMatrix(a.dim()), a * rho, StokesParams(a.dim() - 1), TangentKind::horizontal};
}

Complex unit_block_value(const ComplexMatrix& a, const TangentVector& u, const TangentVector& v) {
  if (!is_tagged(u) || !is_tagged(v)) {
    throw Error(ErrorKind::invalid_tangent_kind, "unit blocks need fibre or horizontal tags");
  }
  if (u.kind == v.kind) return 0.0;
  const ComplexMatrix a_inv = inverse(a);
  if (u.kind == TangentKind::horizontal) return -trace_form(v.x, a_inv * u.y);
  return trace_form(u.x, a_inv * v.y);
}

TangentVector multiply_tangent(const GroupoidPoint& p, const GroupoidPoint& q, const PairTangent& u) {
  return TangentVector{u.first.x * q.b + p.b * u.second.x, u.first.y, u.first.sdot, TangentKind::general};
}

double multiplicativity_residual(const GroupoidPoint& p, const GroupoidPoint& q, const PairTangent& u,
                                 const PairTangent& v) {
  const GroupoidPoint m = compose(p, q);
  const Complex lhs = omega(m, multiply_tangent(p, q, u), multiply_tangent(p, q, v));
  const Complex rhs = omega(p, u.first, v.first) + omega(q, u.second, v.second);
  return std::abs(lhs - rhs);
}

std::vector<PairTangent> pair_tangent_basis(const RootSetData& rs, const GroupoidPoint& p, const GroupoidPoint& q) {
  if (max_abs_diff(p.a, q.a) >= 1e-10) throw Error(ErrorKind::not_composable, "bases of the two arrows differ");
  const auto tp = tangent_space(rs, p);
  const auto tq = tangent_space(rs, q);
  const auto n = static_cast<std::size_t>(rs.n);
  const auto size = n + 1;
  std::vector<PairTangent> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back({tp[k], zero_tangent(size, n)});
  for (std::size_t k = 0; k < n; ++k) out.push_back({zero_tangent(size, n), tq[k]});
  for (std::size_t k = n; k < 2 * n; ++k) out.push_back({tp[k], tq[k]});
  return out;
}

double closedness_residual(const RootSetData& rs, const GroupoidPoint& p, const ClosednessOptions& opts) {
  const auto n = static_cast<std::size_t>(rs.n);
  const auto size = n + 1;
  const ComplexMatrix a = build_M(rs, p.s);
  DenseMatrix krylov(size * size, size);
  ComplexMatrix pw = ComplexMatrix::identity(size);
  for (std::size_t j = 0; j < size; ++j) {
    const auto flat = flatten(pw);
    for (std::size_t r = 0; r < flat.size(); ++r) krylov(r, j) = flat[r];
    pw = pw * a;
  }
  const auto c0 = least_squares(krylov, flatten(p.b), 1e-14);
  if (std::abs(c0[0]) < 1e-8) throw Error(ErrorKind::degenerate_chart, "constant coefficient vanishes");
  const Chart chart{rs, p.s, c0};

  const std::size_t dim = 4 * n;
  const std::vector<double> origin(dim, 0.0);
  {
    const auto sample = chart.at(origin);
    DenseMatrix jac(2 * size * size + n, 2 * n);
    for (std::size_t k = 0; k < 2 * n; ++k) {
      const auto col = stack(sample.complex_dirs[k]);
      for (std::size_t r = 0; r < col.size(); ++r) jac(r, k) = col[r];
    }
    if (numerical_rank(jac, 1e-10) != 2 * n) throw Error(ErrorKind::degenerate_chart, "chart is not immersive");
  }

  auto derivative = [&](std::size_t coord, double h) {
    std::vector<double> plus(dim, 0.0), minus(dim, 0.0);
    plus[coord] = h;
    minus[coord] = -h;
    const auto gp = chart.real_gram(plus);
    const auto gm = chart.real_gram(minus);
    std::vector<std::vector<Complex>> d(dim, std::vector<Complex>(dim));
    for (std::size_t b = 0; b < dim; ++b)
      for (std::size_t c = 0; c < dim; ++c) d[b][c] = (gp[b][c] - gm[b][c]) / (2.0 * h);
    return d;
  };

  std::vector<std::vector<std::vector<Complex>>> dg;  // dg[a][b][c] = d_a omega_bc
  for (std::size_t coord = 0; coord < dim; ++coord) {
    auto coarse = derivative(coord, opts.step);
    if (opts.richardson) {
      const auto fine = derivative(coord, 0.5 * opts.step);
      for (std::size_t b = 0; b < dim; ++b)
        for (std::size_t c = 0; c < dim; ++c) coarse[b][c] = (4.0 * fine[b][c] - coarse[b][c]) / 3.0;
    }
    dg.push_back(std::move(coarse));
  }

  double worst = 0.0;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j)
      for (std::size_t k = j + 1; k < dim; ++k) {
        const Complex d = dg[i][j][k] - dg[j][i][k] + dg[k][i][j];
        worst = std::max(worst, std::abs(d));
      }
  return worst;
}

TwoFormGram gram_matrix(const GroupoidPoint& p, const std::vector<TangentVector>& basis) {
  const std::size_t k = basis.size();
  TwoFormGram out;
  out.gram.assign(k, std::vector<Complex>(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) out.gram[a][b] = omega(p, basis[a], basis[b]);
  DenseMatrix real(2 * k, 2 * k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      const Complex g = out.gram[a][b];
      out.antisymmetry = std::max(out.antisymmetry, std::abs(g + out.gram[b][a]));
      real(a, b) = g.real();
      real(a, k + b) = -g.imag();
      real(k + a, b) = -g.imag();
      real(k + a, k + b) = -g.real();
    }
  out.min_singular = min_singular_value(real);
  return out;
}

TangentVector involution_differential(const RootSetData& rs, InvolutionKind kind, const GroupoidPoint& p,
                                      const TangentVector& u, DifferentialRoute route, double step) {
  if (route == DifferentialRoute::analytic) return apply_differential(rs, kind, p, u);

  auto image_at = [&](double t) {
    StokesParams s = p.s;
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += t * u.sdot[i];
    const GroupoidPoint moved = retract_to_z(rs, p.b + t * u.x, s);
    return apply_involution(rs, kind, moved);
  };
  auto central = [&](double h) {
    const GroupoidPoint fp = image_at(h);
    const GroupoidPoint fm = image_at(-h);
    return std::pair{(fp.b - fm.b) * (1.0 / (2.0 * h)), (fp.a - fm.a) * (1.0 / (2.0 * h))};
  };
  const auto [xc, yc] = central(step);
  const auto [xf, yf] = central(0.5 * step);
  const StokesParams sdot = kind == InvolutionKind::sigma ? reversed(u.sdot) : conj_reversed(u.sdot);
  return TangentVector{(4.0 * xf - xc) * (1.0 / 3.0), (4.0 * yf - yc) * (1.0 / 3.0), sdot, TangentKind::general};
}

double involution_pullback_residual(const RootSetData& rs, InvolutionKind kind, const GroupoidPoint& p,
                                    const std::vector<TangentVector>& basis, DifferentialRoute route, double step) {
  const GroupoidPoint image = apply_involution(rs, kind, p);
  std::vector<TangentVector> pushed;
  for (const auto& u : basis) pushed.push_back(involution_differential(rs, kind, p, u, route, step));
  double worst = 0.0;
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = a + 1; b < basis.size(); ++b) {
      const Complex before = omega(p, basis[a], basis[b]);
      const Complex after = omega(image, pushed[a], pushed[b]);
      const Complex defect = kind == InvolutionKind::sigma ? after - before : after + std::conj(before);
      worst = std::max(worst, std::abs(defect));
    }
  return worst;
}

std::vector<Complex> characters(const ComplexMatrix& a) {
  const auto c = char_poly(a).coefficients;
  const std::size_t size = a.dim();
  std::vector<Complex> chi(size - 1);
  for (std::size_t i = 1; i < size; ++i) chi[i - 1] = (i % 2 == 0 ? 1.0 : -1.0) * c[size - i];
  return chi;
}

CharacterSystem character_system(const RootSetData& rs, const StokesParams& s) {
  CharacterSystem out;
  out.values = characters(build_M(rs, s));
  const auto n = static_cast<std::size_t>(rs.n);
  constexpr double h = 1e-6;
  DenseMatrix jac(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    StokesParams sp = s, sm = s;
    sp[j] += h;
    sm[j] -= h;
    const auto fp = characters(build_M(rs, sp));
    const auto fm = characters(build_M(rs, sm));
    for (std::size_t i = 0; i < n; ++i) jac(i, j) = (fp[i] - fm[i]) / (2.0 * h);
  }
  out.jacobian_rank = numerical_rank(jac, 1e-8);
  return out;
}

double poisson_bracket_residual(const RootSetData& rs, std::size_t i, std::size_t j, const GroupoidPoint& p) {
  const auto n = static_cast<std::size_t>(rs.n);
  if (i < 1 || j < 1 || i > n || j > n) throw Error(ErrorKind::invalid_dimension, "character index out of range");
  const auto basis = tangent_space(rs, p);
  const auto g = gram_matrix(p, basis);
  double scale = 0.0;
  for (const auto& row : g.gram)
    for (const auto& x : row) scale = std::max(scale, std::abs(x));
  if (g.min_singular <= 1e-12 * std::max(1.0, scale)) throw Error(ErrorKind::degenerate_form, "singular Gram");

  const std::size_t k = basis.size();
  ComplexMatrix gt(k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) gt(a, b) = g.gram[b][a];
  const ComplexMatrix gt_inv = inverse(gt);

  constexpr double h = 1e-6;
  auto gradient = [&](std::size_t index) {
    std::vector<Complex> grad(k);
    for (std::size_t a = 0; a < k; ++a) {
      const auto fp = characters(p.a + h * basis[a].y);
      const auto fm = characters(p.a - h * basis[a].y);
      grad[a] = (fp[index - 1] - fm[index - 1]) / (2.0 * h);
    }
    return grad;
  };
  const auto df = gradient(i);
  const auto dg = gradient(j);
  Complex bracket = 0.0;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) bracket += df[a] * gt_inv(a, b) * dg[b];
  return std::abs(bracket);
}

RealFormReport real_form_check(const RootSetData& rs, const GroupoidPoint& p, bool theta_only) {
  if (point_distance(apply_theta(rs, p), p) > 1e-8 ||
      (!theta_only && point_distance(apply_sigma(rs, p), p) > 1e-8)) {
    throw Error(ErrorKind::precondition_violation, "point is not fixed by the involutions");
  }
  const auto basis = tangent_space(rs, p);
  const std::size_t k = basis.size();
  const std::size_t m = 2 * k;

  DenseMatrix frame(stack(basis.front()).size(), k);
  for (std::size_t c = 0; c < k; ++c) {
    const auto col = stack(basis[c]);
    for (std::size_t r = 0; r < col.size(); ++r) frame(r, c) = col[r];
  }

  // Real matrix of a differential in the real frame {u_c, i u_c}.
  auto real_matrix = [&](InvolutionKind kind) {
    DenseMatrix out(m, m);
    for (std::size_t c = 0; c < m; ++c) {
      const TangentVector in = c < k ? basis[c] : scaled(basis[c - k], Complex(0.0, 1.0));
      const TangentVector image = apply_differential(rs, kind, p, in);
      const auto target = stack(image);
      const auto coeffs = least_squares(frame, target, 1e-12);
      double defect = 0.0, scale = 1.0;
      for (std::size_t r = 0; r < target.size(); ++r) {
        Complex acc = 0.0;
        for (std::size_t q = 0; q < k; ++q) acc += frame(r, q) * coeffs[q];
        defect = std::max(defect, std::abs(acc - target[r]));
        scale = std::max(scale, std::abs(target[r]));
      }
      if (defect > 1e-6 * scale) throw Error(ErrorKind::projection_failure, "differential leaves the tangent space");
      for (std::size_t q = 0; q < k; ++q) {
        out(q, c) = coeffs[q].real();
        out(k + q, c) = coeffs[q].imag();
      }
    }
    for (std::size_t d = 0; d < m; ++d) out(d, d) -= 1.0;
    return out;
  };

  const DenseMatrix theta_defect = real_matrix(InvolutionKind::theta);
  DenseMatrix system = theta_defect;
  if (!theta_only) {
    const DenseMatrix sigma_defect = real_matrix(InvolutionKind::sigma);
    system = DenseMatrix(2 * m, m);
    for (std::size_t c = 0; c < m; ++c)
      for (std::size_t r = 0; r < m; ++r) {
        system(r, c) = theta_defect(r, c);
        system(m + r, c) = sigma_defect(r, c);
      }
  }
  const DenseMatrix fixed = null_space(system, 1e-8);

  std::vector<TangentVector> vectors;
  for (std::size_t c = 0; c < fixed.cols(); ++c) {
    std::vector<Complex> coeffs(k);
    for (std::size_t q = 0; q < k; ++q) coeffs[q] = Complex(fixed(q, c).real(), fixed(k + q, c).real());
    vectors.push_back(combine(basis, coeffs));
  }

  RealFormReport out;
  out.fixed_dimension = vectors.size();
  DenseMatrix im_gram(vectors.size(), vectors.size());
  for (std::size_t a = 0; a < vectors.size(); ++a)
    for (std::size_t b = 0; b < vectors.size(); ++b) {
      const Complex w = omega(p, vectors[a], vectors[b]);
      out.re_omega_max = std::max(out.re_omega_max, std::abs(w.real()));
      im_gram(a, b) = w.imag();
    }
  for (std::size_t a = 0; a < vectors.size(); ++a)
    for (std::size_t b = 0; b < vectors.size(); ++b)
      out.im_omega_antisymmetry = std::max(out.im_omega_antisymmetry, std::abs(im_gram(a, b) + im_gram(b, a)));
  out.im_omega_min_singular = vectors.empty() ? 0.0 : min_singular_value(im_gram);
  return out;
}

}  // namespace ucgl
