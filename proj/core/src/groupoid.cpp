#include "ucgl/groupoid.hpp"

#include <cmath>
#include <random>

#include "ucgl/error.hpp"

namespace ucgl {

namespace {

constexpr double kComposeTol = 1e-10;
constexpr int kSampleRetries = 16;

ComplexMatrix det_normalized(const ComplexMatrix& b0) {
  const Complex det = determinant(b0);
  if (std::abs(det) < 1e-8) throw Error(ErrorKind::degenerate_sample, "|det| of commuting sample below 1e-8");
  const double size = static_cast<double>(b0.dim());
  const Complex lambda = std::exp(-std::log(det) / size);
  return lambda * b0;
}

// Columns: vec(X_alg) entries then sdot; rows: vec of the linearized
// commutation defect g([X,a] + adot)g^{-1} - adot, then Tr X.
DenseMatrix constraint_matrix(const RootSetData& rs, const GroupoidPoint& p) {
  const auto size = static_cast<std::size_t>(rs.size());
  const auto n = static_cast<std::size_t>(rs.n);
  const ComplexMatrix g_inv = inverse(p.b);
  const auto partials = build_M_partials(rs, p.s);
  DenseMatrix k(size * size + 1, size * size + n);
  auto put = [&](std::size_t col, const ComplexMatrix& value, Complex trace_entry) {
    const auto flat = flatten(value);
    for (std::size_t r = 0; r < flat.size(); ++r) k(r, col) = flat[r];
    k(size * size, col) = trace_entry;
  };
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      const ComplexMatrix e = ComplexMatrix::unit(size, i, j);
      put(i * size + j, p.b * commutator(e, p.a) * g_inv, i == j ? 1.0 : 0.0);
    }
  }
  for (std::size_t i = 0; i < n; ++i) put(size * size + i, p.b * partials[i] * g_inv - partials[i], 0.0);
  return k;
}

// Fixed-point samples are products of several commuting factors and can be
// badly conditioned; redraw until cond(B) stays below a fixed bound.
constexpr double kFibreConditionBound = 1e2;
constexpr int kFibreRetries = 64;

template <class Build>
GroupoidPoint conditioned_fibre_sample(const ComplexMatrix& a, std::uint64_t seed, Build build) {
  for (int attempt = 0; attempt < kFibreRetries; ++attempt) {
    const auto c = sample_commuting(a, seed + 0x632be59bd9b4e019ull * static_cast<std::uint64_t>(attempt));
    GroupoidPoint p = build(c);
    if (p.b.max_abs() * inverse(p.b).max_abs() <= kFibreConditionBound) return p;
  }
  throw Error(ErrorKind::degenerate_sample, "no well-conditioned fibre sample within the retry budget");
}

}  // namespace

TangentVector scaled(const TangentVector& u, Complex c) {
  TangentVector out{c * u.x, c * u.y, u.sdot, u.kind};
  for (auto& x : out.sdot) x *= c;
  return out;
}

TangentVector combine(const std::vector<TangentVector>& basis, std::span<const Complex> coeffs) {
  if (basis.empty() || coeffs.size() != basis.size()) {
    throw Error(ErrorKind::invalid_dimension, "coefficient count must match basis size");
  }
  const std::size_t size = basis.front().x.dim();
  TangentVector out{ComplexMatrix(size), ComplexMatrix(size), StokesParams(basis.front().sdot.size()),
                    TangentKind::general};
  for (std::size_t k = 0; k < basis.size(); ++k) {
    out.x += coeffs[k] * basis[k].x;
    out.y += coeffs[k] * basis[k].y;
    for (std::size_t i = 0; i < out.sdot.size(); ++i) out.sdot[i] += coeffs[k] * basis[k].sdot[i];
  }
  return out;
}

bool z_membership(const RootSetData& rs, const ComplexMatrix& b, const ComplexMatrix& a, double tol) {
  if (b.dim() != a.dim() || static_cast<int>(a.dim()) != rs.size()) return false;
  if (max_abs_diff(b * a, a * b) >= tol) return false;
  if (std::abs(determinant(b) - 1.0) >= tol) return false;
  return section_membership(rs, a, tol).in_section;
}

GroupoidPoint unit_point(const ComplexMatrix& a) { return make_point(ComplexMatrix::identity(a.dim()), a); }

GroupoidPoint inverse_point(const GroupoidPoint& p) { return GroupoidPoint{inverse(p.b), p.a, p.s}; }

GroupoidPoint compose(const GroupoidPoint& p, const GroupoidPoint& q) {
  if (p.a.dim() != q.a.dim() || max_abs_diff(p.a, q.a) >= kComposeTol) {
    throw Error(ErrorKind::not_composable, "bases of the two arrows differ");
  }
  return GroupoidPoint{p.b * q.b, q.a, q.s};
}

const ComplexMatrix& source(const GroupoidPoint& p) { return p.a; }
const ComplexMatrix& target(const GroupoidPoint& p) { return p.a; }

CentralizerBasis centralizer_basis(const ComplexMatrix& a) {
  if (!is_regular(a)) throw Error(ErrorKind::not_regular, "commutant basis needs a regular element");
  const std::size_t size = a.dim();
  const ComplexMatrix id = ComplexMatrix::identity(size);
  CentralizerBasis out;
  ComplexMatrix p = id;
  for (std::size_t j = 0; j < size; ++j) {
    out.commutant.push_back(p);
    if (j > 0) out.lie.push_back(p - (p.trace() / static_cast<double>(size)) * id);
    p = p * a;
  }
  return out;
}

std::vector<Complex> seeded_complex(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<Complex> out(count);
  for (auto& z : out) {
    const double re = unif(rng);
    z = Complex(re, unif(rng));
  }
  return out;
}

StokesParams random_params(int n, std::uint64_t seed) {
  return seeded_complex(seed ^ 0x9e3779b97f4a7c15ull, static_cast<std::size_t>(n));
}

StokesParams random_local_params(int n, std::uint64_t seed) {
  const auto raw = seeded_complex(seed ^ 0x51ed2701ull, static_cast<std::size_t>(n));
  StokesParams s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int mirror = n - 1 - i;
    const int lead = std::min(i, mirror);
    s[static_cast<std::size_t>(i)] = 2.0 * raw[static_cast<std::size_t>(lead)].real();
  }
  return s;
}

ComplexMatrix commuting_from_coefficients(const ComplexMatrix& a, std::span<const Complex> coeffs) {
  if (coeffs.size() != a.dim()) throw Error(ErrorKind::invalid_dimension, "need n+1 coefficients");
  ComplexMatrix sum(a.dim());
  ComplexMatrix p = ComplexMatrix::identity(a.dim());
  for (const auto& c : coeffs) {
    sum += c * p;
    p = p * a;
  }
  return det_normalized(sum);
}

ComplexMatrix sample_commuting(const ComplexMatrix& a, std::uint64_t seed) {
  if (!is_regular(a)) throw Error(ErrorKind::not_regular, "commuting samples need a regular element");
  for (int attempt = 0; attempt < kSampleRetries; ++attempt) {
    const auto coeffs = seeded_complex(seed * 1315423911ull + static_cast<std::uint64_t>(attempt), a.dim());
    try {
      return commuting_from_coefficients(a, coeffs);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::degenerate_sample) throw;
    }
  }
  throw Error(ErrorKind::degenerate_sample, "retries exhausted");
}

GroupoidPoint sample_z_point(const RootSetData& rs, std::uint64_t seed) {
  const ComplexMatrix a = build_M(rs, random_params(rs.n, seed));
  return make_point(sample_commuting(a, seed + 7), a);
}

GroupoidPoint slocal_from_commuting(const RootSetData& rs, const ComplexMatrix& a, const ComplexMatrix& c) {
  const StokesParams s = stokes_params_of(a);
  const ComplexMatrix fs = f_sigma(rs, s);
  const ComplexMatrix ft = f_theta(rs, s);
  const ComplexMatrix d = c * ad(fs, inverse(c).transpose());
  const ComplexMatrix b = d * ad(ft, d.conj());
  return make_point(b, a);
}

StokesParams random_theta_params(int n, std::uint64_t seed) {
  const auto raw = seeded_complex(seed ^ 0x7e7a0000ull, static_cast<std::size_t>(n));
  StokesParams s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int mirror = n - 1 - i;
    if (i < mirror) {
      s[static_cast<std::size_t>(i)] = raw[static_cast<std::size_t>(i)];
    } else if (i == mirror) {
      s[static_cast<std::size_t>(i)] = raw[static_cast<std::size_t>(i)].real();
    } else {
      s[static_cast<std::size_t>(i)] = std::conj(raw[static_cast<std::size_t>(mirror)]);
    }
  }
  return s;
}

GroupoidPoint theta_fixed_from_commuting(const RootSetData& rs, const ComplexMatrix& a, const ComplexMatrix& c) {
  const ComplexMatrix ft = f_theta(rs, stokes_params_of(a));
  return make_point(c * ad(ft, c.conj()), a);
}

GroupoidPoint sample_slocal_fiber(const RootSetData& rs, const ComplexMatrix& a, std::uint64_t seed) {
  if (!section_membership(rs, a, 1e-9).in_mlocal) {
    throw Error(ErrorKind::precondition_violation, "base point is not in M^local");
  }
  return conditioned_fibre_sample(a, seed, [&](const ComplexMatrix& c) { return slocal_from_commuting(rs, a, c); });
}

GroupoidPoint sample_theta_fixed_fiber(const RootSetData& rs, const ComplexMatrix& a, std::uint64_t seed) {
  const StokesParams s = stokes_params_of(a);
  const StokesParams mirrored = conj_reversed(s);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (std::abs(s[i] - mirrored[i]) > 1e-9) {
      throw Error(ErrorKind::precondition_violation, "base point is not fixed by theta_0");
    }
  }
  return conditioned_fibre_sample(a, seed,
                                  [&](const ComplexMatrix& c) { return theta_fixed_from_commuting(rs, a, c); });
}

double tangent_residual(const RootSetData& rs, const GroupoidPoint& p, const TangentVector& u) {
  const ComplexMatrix g_inv = inverse(p.b);
  const ComplexMatrix x_alg = g_inv * u.x;
  double res = max_abs_diff(p.b * (commutator(x_alg, p.a) + u.y) * g_inv, u.y);
  res = std::max(res, std::abs(x_alg.trace()));
  const auto partials = build_M_partials(rs, p.s);
  ComplexMatrix ydot(p.a.dim());
  for (std::size_t i = 0; i < partials.size(); ++i) ydot += u.sdot[i] * partials[i];
  return std::max(res, max_abs_diff(ydot, u.y));
}

std::size_t tangent_dimension(const RootSetData& rs, const GroupoidPoint& p, double tol) {
  return null_space(constraint_matrix(rs, p), tol).cols();
}

std::vector<TangentVector> tangent_space(const RootSetData& rs, const GroupoidPoint& p, double tol) {
  const auto size = static_cast<std::size_t>(rs.size());
  const auto n = static_cast<std::size_t>(rs.n);
  const DenseMatrix k = constraint_matrix(rs, p);
  if (null_space(k, tol).cols() != 2 * n) {
    throw Error(ErrorKind::degenerate_tangent, "kernel dimension differs from 2n");
  }
  const bool at_unit = max_abs_diff(p.b, ComplexMatrix::identity(size)) < 1e-14;
  const auto basis = centralizer_basis(p.a);
  const auto partials = build_M_partials(rs, p.s);

  std::vector<TangentVector> out;
  for (const auto& xi : basis.lie) {
    out.push_back(TangentVector{p.b * xi, ComplexMatrix(size), StokesParams(n), TangentKind::fiber});
  }

  // Lift each coordinate direction of s by holding the coefficients of B as
  // a polynomial in A fixed and differentiating, then restoring det B = 1.
  DenseMatrix krylov(size * size, size);
  std::vector<ComplexMatrix> powers{ComplexMatrix::identity(size)};
  for (std::size_t j = 1; j < size; ++j) powers.push_back(powers.back() * p.a);
  for (std::size_t j = 0; j < size; ++j) {
    const auto flat = flatten(powers[j]);
    for (std::size_t r = 0; r < flat.size(); ++r) krylov(r, j) = flat[r];
  }
  const auto coeffs = least_squares(krylov, flatten(p.b), 1e-14);
  const ComplexMatrix g_inv = inverse(p.b);
  for (std::size_t i = 0; i < n; ++i) {
    ComplexMatrix pdot(size);
    for (std::size_t k = 1; k < size; ++k) {
      ComplexMatrix dk(size);
      for (std::size_t j = 0; j < k; ++j) dk += powers[j] * partials[i] * powers[k - 1 - j];
      pdot += coeffs[k] * dk;
    }
    const Complex shift = (g_inv * pdot).trace() / static_cast<double>(size);
    StokesParams sdot(n);
    sdot[i] = 1.0;
    TangentVector u{at_unit ? ComplexMatrix(size) : pdot - shift * p.b, partials[i], sdot,
                    at_unit ? TangentKind::horizontal : TangentKind::general};
    const double scale =
        1.0 + p.b.max_abs() * g_inv.max_abs() * ((g_inv * u.x).max_abs() * p.a.max_abs() + partials[i].max_abs());
    if (tangent_residual(rs, p, u) > 1e-8 * scale) {
      throw Error(ErrorKind::degenerate_tangent, "coordinate direction does not lift to T Z");
    }
    out.push_back(std::move(u));
  }
  return out;
}

GroupoidPoint retract_to_z(const RootSetData& rs, const ComplexMatrix& b_guess, const StokesParams& s,
                           double max_rel) {
  const ComplexMatrix a = build_M(rs, s);
  const std::size_t size = a.dim();
  DenseMatrix krylov(size * size, size);
  ComplexMatrix pw = ComplexMatrix::identity(size);
  for (std::size_t j = 0; j < size; ++j) {
    const auto flat = flatten(pw);
    for (std::size_t r = 0; r < flat.size(); ++r) krylov(r, j) = flat[r];
    pw = pw * a;
  }
  const auto target_flat = flatten(b_guess);
  const auto coeffs = least_squares(krylov, target_flat, 1e-14);
  ComplexMatrix projected(size);
  pw = ComplexMatrix::identity(size);
  for (const auto& c : coeffs) {
    projected += c * pw;
    pw = pw * a;
  }
  const double rel = max_abs_diff(projected, b_guess) / std::max(1.0, b_guess.max_abs());
  if (rel > max_rel) throw Error(ErrorKind::projection_failure, "curve left the tube around Z");
  try {
    return make_point(det_normalized(projected), a);
  } catch (const Error&) {
    throw Error(ErrorKind::projection_failure, "retracted point is singular");
  }
}

}  // namespace ucgl
