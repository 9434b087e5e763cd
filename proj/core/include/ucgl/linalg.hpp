#pragma once

// Dense complex linear algebra at desk scale: square matrices of side n+1,
// the fixed structural matrices of the A_n setting, characteristic
// polynomials, and a one-sided Jacobi SVD for numerical ranks and kernels.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ucgl {

using Complex = std::complex<double>;

/// Square complex matrix stored row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix unit(std::size_t dim, std::size_t i, std::size_t j);
  static ComplexMatrix diagonal(std::span<const Complex> diag);

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

  std::span<const Complex> entries() const noexcept { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar);

  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  ComplexMatrix adjoint() const;
  Complex trace() const;
  double max_abs() const;
  double frobenius_norm() const;
  bool is_finite() const;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scalar, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, Complex scalar);

/// Determinant by partial-pivot LU.
Complex determinant(const ComplexMatrix& m);

/// Inverse: adjugate for side <= 3, partial-pivot LU above.
/// Throws singular-input when |det| <= 1e-12.
ComplexMatrix inverse(const ComplexMatrix& m);

/// Ad_g X = g X g^{-1}.
ComplexMatrix ad(const ComplexMatrix& g, const ComplexMatrix& x);
ComplexMatrix commutator(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix power(const ComplexMatrix& m, int exponent);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tr(XY), the Ad-invariant form used for the 2-form.
Complex trace_form(const ComplexMatrix& x, const ComplexMatrix& y);

/// Polynomial with ascending-degree coefficients.
struct Polynomial {
  std::vector<Complex> coefficients;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  Complex operator()(Complex x) const;
  /// All complex roots (Durand-Kerner), for monic polynomials of degree >= 1.
  std::vector<Complex> roots() const;
};

/// Monic characteristic polynomial det(mu I - M) via Faddeev-LeVerrier.
Polynomial char_poly(const ComplexMatrix& m);

/// Minimum pairwise distance between roots of the characteristic polynomial.
double eigenvalue_gap(const ComplexMatrix& m);

/// True iff {I, M, ..., M^n} has full numerical rank n+1.
bool is_regular(const ComplexMatrix& m, double tol = 1e-10);

/// The fixed matrices of the cyclic A_n setting.
struct StructuralSet {
  int n = 0;
  Complex omega_root;
  ComplexMatrix pi;        // cyclic shift, ones on superdiagonal and (n,0)
  ComplexMatrix pi_hat;    // diag(1,...,1,-1) * pi
  ComplexMatrix omega;     // (omega^{ij})
  ComplexMatrix d;         // diag(1, omega, ..., omega^n)
  ComplexMatrix d_half;    // diag(1, omega^{1/2}, ..., omega^{n/2}), principal branch
  ComplexMatrix delta;     // anti-diagonal ones
  ComplexMatrix c;         // 1 (+) anti-diagonal ones
  ComplexMatrix c_tilde;   // diag(1,-1,...,-1) * c
  std::vector<int> delta_perm;  // Coxeter shift i -> i-1 mod n+1
  int rank = 0;

  int size() const { return n + 1; }
  /// pi_hat for odd n, pi for even n.
  const ComplexMatrix& coxeter() const { return n % 2 == 1 ? pi_hat : pi; }
};

StructuralSet structural_matrices(int n);

/// Rectangular complex matrix (column-major) for numerical rank work.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Complex& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }
  std::span<Complex> column(std::size_t j) { return {data_.data() + j * rows_, rows_}; }
  std::span<const Complex> column(std::size_t j) const { return {data_.data() + j * rows_, rows_}; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

struct SvdResult {
  std::vector<double> singular_values;  // descending
  DenseMatrix v;                        // right singular vectors as columns, same order
};

/// One-sided (Hestenes) Jacobi SVD.
SvdResult jacobi_svd(const DenseMatrix& a);

/// Number of singular values above rel_tol * sigma_max.
std::size_t numerical_rank(const DenseMatrix& a, double rel_tol);

/// Orthonormal basis of the numerical kernel (columns).
DenseMatrix null_space(const DenseMatrix& a, double rel_tol);

/// Minimum-norm least-squares solution through the SVD pseudo-inverse.
std::vector<Complex> least_squares(const DenseMatrix& a, std::span<const Complex> b,
                                   double rel_tol = 1e-13);

/// Stacks matrix entries row-major as one column.
std::vector<Complex> flatten(const ComplexMatrix& m);

}  // namespace ucgl
