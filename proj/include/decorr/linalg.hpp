#pragma once

#include <complex>
#include <vector>

namespace decorr {

using cplx = std::complex<double>;

// Dense complex matrix, row-major storage. Sizes in this project stay small
// (4x4 operators, 16x16 superoperators, 256x256 Gram matrices), so every
// operation favors clarity and determinism over asymptotic tricks.
class CMat {
public:
  CMat() : rows_(0), cols_(0) {}
  CMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static CMat identity(int n);
  static CMat zero(int rows, int cols) { return CMat(rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  CMat operator+(const CMat& o) const;
  CMat operator-(const CMat& o) const;
  CMat operator*(const CMat& o) const;
  CMat operator*(cplx s) const;
  CMat& operator+=(const CMat& o);
  CMat& operator-=(const CMat& o);

  CMat dagger() const;
  CMat transpose() const;
  CMat conjugate() const;

  cplx trace() const;
  double max_abs() const;
  double frobenius() const;
  bool is_hermitian(double tol = 1e-12) const;

private:
  int rows_, cols_;
  std::vector<cplx> a_;
};

CMat operator*(cplx s, const CMat& m);

// Kronecker product, (A x B)(i*rb+k, j*cb+l) = A(i,j) B(k,l).
CMat kron(const CMat& a, const CMat& b);

// Column-stacking vectorization: vec(X)[j*rows + i] = X(i,j), so that
// vec(A X B) = (B^T x A) vec(X).
CMat vec(const CMat& m);
CMat unvec(const CMat& v, int rows, int cols);

// Partial traces of an operator on a (da x db)-dimensional tensor product.
CMat partial_trace_first(const CMat& m, int da, int db);
CMat partial_trace_second(const CMat& m, int da, int db);

struct EigResult {
  std::vector<double> values;  // ascending
  CMat vectors;                // column k is the eigenvector for values[k]
};

// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
// Converges when the off-diagonal Frobenius norm falls below
// 1e-13 * max(1, ||H||_F). Deterministic; throws if the input is not
// Hermitian to within 1e-9.
EigResult hermitian_eigs(const CMat& h);

// Singular values of an arbitrary matrix, descending, computed as the
// square roots of the eigenvalues of L^dag L.
std::vector<double> singular_values(const CMat& l);

// Orthonormal basis (as columns) of the right nullspace of L. A singular
// value counts as zero when it is at most tol * max(1, sigma_max).
CMat nullspace(const CMat& l, double tol);

// Solves A x = b by Gaussian elimination with partial pivoting.
CMat solve_linear(const CMat& a, const CMat& b);

// Dense real matrix, row-major; mirrors the small subset of CMat needed for
// covariance-matrix work.
class RMat {
public:
  RMat() : rows_(0), cols_(0) {}
  RMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static RMat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const double& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  RMat operator+(const RMat& o) const;
  RMat operator-(const RMat& o) const;
  RMat operator*(const RMat& o) const;
  RMat operator*(double s) const;

  RMat transpose() const;
  double max_abs() const;

  CMat to_cmat() const;

private:
  int rows_, cols_;
  std::vector<double> a_;
};

RMat operator*(double s, const RMat& m);

// Eigenvalues of a real symmetric matrix, ascending.
std::vector<double> symmetric_eigs(const RMat& m);

// Inverse of a small real matrix via Gaussian elimination; throws on
// singular input.
RMat inverse(const RMat& m);

}  // namespace decorr
