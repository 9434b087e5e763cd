#include "ucgl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <utility>

#include "ucgl/error.hpp"

namespace ucgl {

namespace {

constexpr double kSingularDet = 1e-12;

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::invalid_dimension, "matrix sides differ: " + std::to_string(a.dim()) +
                                                  " vs " + std::to_string(b.dim()));
  }
}

// In-place LU with partial pivoting. Returns the determinant and leaves the
// factors in `lu` with row permutation `perm`.
Complex lu_decompose(ComplexMatrix& lu, std::vector<std::size_t>& perm) {
  const std::size_t n = lu.dim();
  perm.resize(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Complex det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu(i, k)) > best) {
        best = std::abs(lu(i, k));
        pivot = i;
      }
    }
    if (best == 0.0) return 0.0;
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(pivot, j));
      std::swap(perm[k], perm[pivot]);
      det = -det;
    }
    det *= lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      lu(i, k) /= lu(k, k);
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= lu(i, k) * lu(k, j);
    }
  }
  return det;
}

ComplexMatrix adjugate_inverse(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  if (n == 1) {
    if (std::abs(m(0, 0)) <= kSingularDet) throw Error(ErrorKind::singular_input, "|det| <= 1e-12");
    return ComplexMatrix(1, {1.0 / m(0, 0)});
  }
  if (n == 2) {
    const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    if (std::abs(det) <= kSingularDet) throw Error(ErrorKind::singular_input, "|det| <= 1e-12");
    return ComplexMatrix(2, {m(1, 1) / det, -m(0, 1) / det, -m(1, 0) / det, m(0, 0) / det});
  }
  // n == 3: transpose of the cofactor matrix.
  ComplexMatrix adj(3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const std::size_t r0 = (i + 1) % 3, r1 = (i + 2) % 3;
      const std::size_t c0 = (j + 1) % 3, c1 = (j + 2) % 3;
      adj(j, i) = m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0);
    }
  }
  const Complex det = m(0, 0) * adj(0, 0) + m(0, 1) * adj(1, 0) + m(0, 2) * adj(2, 0);
  if (std::abs(det) <= kSingularDet) throw Error(ErrorKind::singular_input, "|det| <= 1e-12");
  adj *= 1.0 / det;
  return adj;
}

struct JacobiState {
  DenseMatrix w;  // A V, columns mutually orthogonal on exit
  DenseMatrix v;
  std::vector<double> sigma;
};

JacobiState jacobi_core(const DenseMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t k = a.cols();
  JacobiState st{a, DenseMatrix(k, k), {}};
  for (std::size_t j = 0; j < k; ++j) st.v(j, j) = 1.0;

  constexpr double eps = 1e-15;
  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < k; ++p) {
      for (std::size_t q = p + 1; q < k; ++q) {
        double alpha = 0.0, beta = 0.0;
        Complex gamma = 0.0;
        for (std::size_t r = 0; r < m; ++r) {
          alpha += std::norm(st.w(r, p));
          beta += std::norm(st.w(r, q));
          gamma += std::conj(st.w(r, p)) * st.w(r, q);
        }
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= eps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Complex phase = std::conj(gamma / g);
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t r = 0; r < m; ++r) {
          const Complex x = st.w(r, p);
          const Complex y = st.w(r, q) * phase;
          st.w(r, p) = c * x - s * y;
          st.w(r, q) = s * x + c * y;
        }
        for (std::size_t r = 0; r < k; ++r) {
          const Complex x = st.v(r, p);
          const Complex y = st.v(r, q) * phase;
          st.v(r, p) = c * x - s * y;
          st.v(r, q) = s * x + c * y;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> norms(k);
  for (std::size_t j = 0; j < k; ++j) {
    double acc = 0.0;
    for (std::size_t r = 0; r < m; ++r) acc += std::norm(st.w(r, j));
    norms[j] = std::sqrt(acc);
  }
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });
  JacobiState sorted{DenseMatrix(m, k), DenseMatrix(k, k), std::vector<double>(k)};
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t src = order[j];
    sorted.sigma[j] = norms[src];
    for (std::size_t r = 0; r < m; ++r) sorted.w(r, j) = st.w(r, src);
    for (std::size_t r = 0; r < k; ++r) sorted.v(r, j) = st.v(r, src);
  }
  return sorted;
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, Complex{}) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), data_(std::move(entries)) {
  if (data_.size() != dim_ * dim_) {
    throw Error(ErrorKind::invalid_dimension, "entry count does not match side " + std::to_string(dim));
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
  data_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) throw Error(ErrorKind::invalid_dimension, "matrix literal is not square");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::unit(std::size_t dim, std::size_t i, std::size_t j) {
  ComplexMatrix m(dim);
  m(i, j) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (auto& x : data_) x *= scalar;
  return *this;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix t(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix c(*this);
  for (auto& x : c.data_) x = std::conj(x);
  return c;
}

ComplexMatrix ComplexMatrix::adjoint() const { return transpose().conj(); }

Complex ComplexMatrix::trace() const {
  Complex acc = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) acc += (*this)(i, i);
  return acc;
}

double ComplexMatrix::max_abs() const {
  double best = 0.0;
  for (const auto& x : data_) best = std::max(best, std::abs(x));
  return best;
}

double ComplexMatrix::frobenius_norm() const {
  double acc = 0.0;
  for (const auto& x : data_) acc += std::norm(x);
  return std::sqrt(acc);
}

bool ComplexMatrix::is_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Complex& x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  const std::size_t n = a.dim();
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

ComplexMatrix operator*(Complex scalar, ComplexMatrix a) { return a *= scalar; }
ComplexMatrix operator*(ComplexMatrix a, Complex scalar) { return a *= scalar; }

Complex determinant(const ComplexMatrix& m) {
  ComplexMatrix lu(m);
  std::vector<std::size_t> perm;
  return lu_decompose(lu, perm);
}

ComplexMatrix inverse(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  if (n == 0) throw Error(ErrorKind::invalid_dimension, "empty matrix");
  if (n <= 3) return adjugate_inverse(m);

  ComplexMatrix lu(m);
  std::vector<std::size_t> perm;
  const Complex det = lu_decompose(lu, perm);
  if (std::abs(det) <= kSingularDet) throw Error(ErrorKind::singular_input, "|det| <= 1e-12");

  ComplexMatrix inv(n);
  std::vector<Complex> col(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < n; ++i) col[i] = (perm[i] == c) ? 1.0 : 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < i; ++k) col[i] -= lu(i, k) * col[k];
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t k = i + 1; k < n; ++k) col[i] -= lu(i, k) * col[k];
      col[i] /= lu(i, i);
    }
    for (std::size_t i = 0; i < n; ++i) inv(i, c) = col[i];
  }
  return inv;
}

ComplexMatrix ad(const ComplexMatrix& g, const ComplexMatrix& x) { return g * x * inverse(g); }

ComplexMatrix commutator(const ComplexMatrix& x, const ComplexMatrix& y) { return x * y - y * x; }

ComplexMatrix power(const ComplexMatrix& m, int exponent) {
  ComplexMatrix base = exponent < 0 ? inverse(m) : m;
  unsigned e = static_cast<unsigned>(exponent < 0 ? -exponent : exponent);
  ComplexMatrix result = ComplexMatrix::identity(m.dim());
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  double best = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) best = std::max(best, std::abs(a(i, j) - b(i, j)));
  return best;
}

Complex trace_form(const ComplexMatrix& x, const ComplexMatrix& y) {
  require_same_dim(x, y);
  Complex acc = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i)
    for (std::size_t k = 0; k < x.dim(); ++k) acc += x(i, k) * y(k, i);
  return acc;
}

// ---------------------------------------------------------------------------
// Polynomials

Complex Polynomial::operator()(Complex x) const {
  Complex acc = 0.0;
  for (std::size_t i = coefficients.size(); i-- > 0;) acc = acc * x + coefficients[i];
  return acc;
}

std::vector<Complex> Polynomial::roots() const {
  const int d = degree();
  if (d < 1) return {};
  const Complex lead = coefficients.back();
  std::vector<Complex> monic(coefficients.size());
  for (std::size_t i = 0; i < monic.size(); ++i) monic[i] = coefficients[i] / lead;
  Polynomial p{monic};

  double radius = 0.0;
  for (int i = 0; i < d; ++i) radius = std::max(radius, std::abs(monic[static_cast<std::size_t>(i)]));
  radius += 1.0;

  std::vector<Complex> z(static_cast<std::size_t>(d));
  const Complex seed(0.4, 0.9);
  Complex acc = 1.0;
  for (auto& zi : z) {
    acc *= seed;
    zi = radius * acc / std::abs(acc) * 0.5 + acc;
  }
  for (int iter = 0; iter < 2000; ++iter) {
    double change = 0.0;
    for (std::size_t k = 0; k < z.size(); ++k) {
      Complex denom = 1.0;
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != k) denom *= (z[k] - z[j]);
      if (denom == Complex{}) denom = 1e-300;
      const Complex step = p(z[k]) / denom;
      z[k] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-15 * radius) break;
  }
  return z;
}

Polynomial char_poly(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  std::vector<Complex> c(n + 1, Complex{});
  c[n] = 1.0;
  ComplexMatrix mk(n);
  const ComplexMatrix id = ComplexMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk + c[n - k + 1] * id;
    c[n - k] = -trace_form(m, mk) / static_cast<double>(k);
  }
  return Polynomial{std::move(c)};
}

double eigenvalue_gap(const ComplexMatrix& m) {
  const auto z = char_poly(m).roots();
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j) gap = std::min(gap, std::abs(z[i] - z[j]));
  return gap;
}

bool is_regular(const ComplexMatrix& m, double tol) {
  const std::size_t n = m.dim();
  DenseMatrix krylov(n * n, n);
  ComplexMatrix p = ComplexMatrix::identity(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double norm = p.frobenius_norm();
    if (norm == 0.0) return false;
    const auto flat = flatten(p);
    for (std::size_t r = 0; r < flat.size(); ++r) krylov(r, j) = flat[r] / norm;
    p = p * m;
  }
  return numerical_rank(krylov, tol) == n;
}

// ---------------------------------------------------------------------------
// Structural matrices

StructuralSet structural_matrices(int n) {
  if (n < 1) throw Error(ErrorKind::invalid_dimension, "n must be >= 1, got " + std::to_string(n));
  const std::size_t size = static_cast<std::size_t>(n) + 1;
  const double step = 2.0 * std::numbers::pi / static_cast<double>(size);

  StructuralSet st;
  st.n = n;
  st.rank = n;
  st.omega_root = std::polar(1.0, step);

  st.pi = ComplexMatrix(size);
  for (std::size_t i = 0; i + 1 < size; ++i) st.pi(i, i + 1) = 1.0;
  st.pi(size - 1, 0) = 1.0;

  std::vector<Complex> signs(size, 1.0);
  signs.back() = -1.0;
  st.pi_hat = ComplexMatrix::diagonal(signs) * st.pi;

  st.omega = ComplexMatrix(size);
  std::vector<Complex> d(size), d_half(size);
  for (std::size_t i = 0; i < size; ++i) {
    d[i] = std::polar(1.0, step * static_cast<double>(i));
    d_half[i] = std::polar(1.0, 0.5 * step * static_cast<double>(i));
    for (std::size_t j = 0; j < size; ++j) {
      st.omega(i, j) = std::polar(1.0, step * static_cast<double>((i * j) % size));
    }
  }
  st.d = ComplexMatrix::diagonal(d);
  st.d_half = ComplexMatrix::diagonal(d_half);

  st.delta = ComplexMatrix(size);
  for (std::size_t i = 0; i < size; ++i) st.delta(i, size - 1 - i) = 1.0;

  st.c = ComplexMatrix(size);
  st.c(0, 0) = 1.0;
  for (std::size_t i = 1; i < size; ++i) st.c(i, size - i) = 1.0;

  std::vector<Complex> c_signs(size, -1.0);
  c_signs.front() = 1.0;
  st.c_tilde = ComplexMatrix::diagonal(c_signs) * st.c;

  st.delta_perm.resize(size);
  for (std::size_t i = 0; i < size; ++i) st.delta_perm[i] = static_cast<int>((i + size - 1) % size);
  return st;
}

// ---------------------------------------------------------------------------
// Rectangular numerics

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{}) {}

SvdResult jacobi_svd(const DenseMatrix& a) {
  auto st = jacobi_core(a);
  return SvdResult{std::move(st.sigma), std::move(st.v)};
}

std::size_t numerical_rank(const DenseMatrix& a, double rel_tol) {
  const auto svd = jacobi_svd(a);
  if (svd.singular_values.empty() || svd.singular_values.front() == 0.0) return 0;
  const double cutoff = rel_tol * svd.singular_values.front();
  return static_cast<std::size_t>(std::count_if(svd.singular_values.begin(), svd.singular_values.end(),
                                                 [&](double s) { return s > cutoff; }));
}

DenseMatrix null_space(const DenseMatrix& a, double rel_tol) {
  const auto svd = jacobi_svd(a);
  const double cutoff = svd.singular_values.empty() ? 0.0 : rel_tol * svd.singular_values.front();
  std::vector<std::size_t> kernel;
  for (std::size_t j = 0; j < svd.singular_values.size(); ++j)
    if (svd.singular_values[j] <= cutoff) kernel.push_back(j);
  DenseMatrix basis(a.cols(), kernel.size());
  for (std::size_t c = 0; c < kernel.size(); ++c)
    for (std::size_t r = 0; r < a.cols(); ++r) basis(r, c) = svd.v(r, kernel[c]);
  return basis;
}

std::vector<Complex> least_squares(const DenseMatrix& a, std::span<const Complex> b, double rel_tol) {
  if (b.size() != a.rows()) throw Error(ErrorKind::invalid_dimension, "right-hand side length mismatch");
  const auto st = jacobi_core(a);
  const double cutoff = st.sigma.empty() ? 0.0 : rel_tol * st.sigma.front();
  std::vector<Complex> x(a.cols(), Complex{});
  for (std::size_t j = 0; j < st.sigma.size(); ++j) {
    const double s = st.sigma[j];
    if (s <= cutoff || s == 0.0) continue;
    // u_j = w_j / s, coefficient = u_j^H b / s
    Complex proj = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r) proj += std::conj(st.w(r, j)) * b[r];
    proj /= s * s;
    for (std::size_t r = 0; r < a.cols(); ++r) x[r] += st.v(r, j) * proj;
  }
  return x;
}

std::vector<Complex> flatten(const ComplexMatrix& m) {
  return {m.entries().begin(), m.entries().end()};
}

}  // namespace ucgl
