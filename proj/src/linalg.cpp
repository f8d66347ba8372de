#include "decorr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace decorr {

namespace {

void check_same_shape(const CMat& a, const CMat& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument(std::string(what) + ": shape mismatch");
}

}  // namespace

CMat CMat::identity(int n) {
  CMat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMat CMat::operator+(const CMat& o) const {
  check_same_shape(*this, o, "CMat::operator+");
  CMat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

CMat CMat::operator-(const CMat& o) const {
  check_same_shape(*this, o, "CMat::operator-");
  CMat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

CMat CMat::operator*(const CMat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("CMat::operator*: inner dimension mismatch");
  CMat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const cplx aik = (*this)(i, k);
      if (aik == 0.0) continue;
      const cplx* brow = &o.a_[static_cast<size_t>(k) * o.cols_];
      cplx* rrow = &r.a_[static_cast<size_t>(i) * o.cols_];
      for (int j = 0; j < o.cols_; ++j) rrow[j] += aik * brow[j];
    }
  }
  return r;
}

CMat CMat::operator*(cplx s) const {
  CMat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
  return r;
}

CMat& CMat::operator+=(const CMat& o) {
  check_same_shape(*this, o, "CMat::operator+=");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

CMat& CMat::operator-=(const CMat& o) {
  check_same_shape(*this, o, "CMat::operator-=");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

CMat CMat::dagger() const {
  CMat r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

CMat CMat::transpose() const {
  CMat r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

CMat CMat::conjugate() const {
  CMat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = std::conj(a_[i]);
  return r;
}

cplx CMat::trace() const {
  if (rows_ != cols_) throw std::invalid_argument("CMat::trace: matrix not square");
  cplx t = 0.0;
  for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double CMat::max_abs() const {
  double m = 0.0;
  for (const cplx& v : a_) m = std::max(m, std::abs(v));
  return m;
}

double CMat::frobenius() const {
  double s = 0.0;
  for (const cplx& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

bool CMat::is_hermitian(double tol) const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i; j < cols_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
  return true;
}

CMat operator*(cplx s, const CMat& m) { return m * s; }

CMat kron(const CMat& a, const CMat& b) {
  CMat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == 0.0) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return r;
}

CMat vec(const CMat& m) {
  CMat v(m.rows() * m.cols(), 1);
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i) v(j * m.rows() + i, 0) = m(i, j);
  return v;
}

CMat unvec(const CMat& v, int rows, int cols) {
  if (v.rows() != rows * cols || v.cols() != 1)
    throw std::invalid_argument("unvec: vector length does not match target shape");
  CMat m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = v(j * rows + i, 0);
  return m;
}

CMat partial_trace_first(const CMat& m, int da, int db) {
  if (m.rows() != da * db || m.cols() != da * db)
    throw std::invalid_argument("partial_trace_first: dimension mismatch");
  CMat r(db, db);
  for (int k = 0; k < db; ++k)
    for (int l = 0; l < db; ++l) {
      cplx s = 0.0;
      for (int i = 0; i < da; ++i) s += m(i * db + k, i * db + l);
      r(k, l) = s;
    }
  return r;
}

CMat partial_trace_second(const CMat& m, int da, int db) {
  if (m.rows() != da * db || m.cols() != da * db)
    throw std::invalid_argument("partial_trace_second: dimension mismatch");
  CMat r(da, da);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < db; ++k) s += m(i * db + k, j * db + k);
      r(i, j) = s;
    }
  return r;
}

namespace {

double offdiag_frobenius(const CMat& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

EigResult hermitian_eigs(const CMat& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("hermitian_eigs: matrix not square");
  if (!h.is_hermitian(1e-9)) throw std::invalid_argument("hermitian_eigs: matrix not Hermitian");

  const int n = h.rows();
  CMat a = (h + h.dagger()) * 0.5;  // exact Hermitian symmetrization
  CMat v = CMat::identity(n);
  const double conv = 1e-13 * std::max(1.0, a.frobenius());
  const int max_sweeps = 100;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (offdiag_frobenius(a) <= conv) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double babs = std::abs(apq);
        if (babs <= conv / (static_cast<double>(n) * n)) continue;

        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const cplx u = apq / babs;  // phase of the pivot entry
        const double theta = (app - aqq) / (2.0 * babs);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 1.0 / (2.0 * theta);
        } else {
          const double sgn = theta >= 0.0 ? 1.0 : -1.0;
          t = sgn / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // Right multiply by the plane rotation, then left multiply by its
        // adjoint; only rows/columns p and q change.
        for (int i = 0; i < n; ++i) {
          const cplx aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip + s * std::conj(u) * aiq;
          a(i, q) = -s * u * aip + c * aiq;
        }
        for (int j = 0; j < n; ++j) {
          const cplx apj = a(p, j), aqj = a(q, j);
          a(p, j) = c * apj + s * u * aqj;
          a(q, j) = -s * std::conj(u) * apj + c * aqj;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();

        for (int i = 0; i < n; ++i) {
          const cplx vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip + s * std::conj(u) * viq;
          v(i, q) = -s * u * vip + c * viq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = a(i, i).real();
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return diag[x] < diag[y]; });

  EigResult res;
  res.values.resize(n);
  res.vectors = CMat(n, n);
  for (int k = 0; k < n; ++k) {
    res.values[k] = diag[order[k]];
    for (int i = 0; i < n; ++i) res.vectors(i, k) = v(i, order[k]);
  }
  return res;
}

std::vector<double> singular_values(const CMat& l) {
  const CMat g = l.dagger() * l;
  EigResult e = hermitian_eigs(g);
  std::vector<double> s(e.values.size());
  for (size_t i = 0; i < s.size(); ++i)
    s[i] = std::sqrt(std::max(0.0, e.values[e.values.size() - 1 - i]));
  return s;
}

CMat nullspace(const CMat& l, double tol) {
  const CMat g = l.dagger() * l;
  EigResult e = hermitian_eigs(g);
  const int n = g.rows();
  const double smax = std::sqrt(std::max(0.0, e.values[n - 1]));
  const double thr = tol * std::max(1.0, smax);

  int dim = 0;
  for (int k = 0; k < n; ++k)
    if (std::sqrt(std::max(0.0, e.values[k])) <= thr) ++dim;

  CMat basis(n, dim);
  for (int k = 0; k < dim; ++k)
    for (int i = 0; i < n; ++i) basis(i, k) = e.vectors(i, k);
  return basis;
}

CMat solve_linear(const CMat& a, const CMat& b) {
  if (a.rows() != a.cols()) throw std::invalid_argument("solve_linear: matrix not square");
  if (a.rows() != b.rows()) throw std::invalid_argument("solve_linear: rhs dimension mismatch");
  const int n = a.rows();
  CMat m = a;
  CMat x = b;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(m(col, col));
    for (int i = col + 1; i < n; ++i)
      if (std::abs(m(i, col)) > best) {
        best = std::abs(m(i, col));
        piv = i;
      }
    if (best < 1e-300) throw std::runtime_error("solve_linear: singular matrix");
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(m(col, j), m(piv, j));
      for (int j = 0; j < x.cols(); ++j) std::swap(x(col, j), x(piv, j));
    }
    const cplx d = m(col, col);
    for (int i = col + 1; i < n; ++i) {
      const cplx f = m(i, col) / d;
      if (f == 0.0) continue;
      for (int j = col; j < n; ++j) m(i, j) -= f * m(col, j);
      for (int j = 0; j < x.cols(); ++j) x(i, j) -= f * x(col, j);
    }
  }
  for (int col = n - 1; col >= 0; --col) {
    for (int j = 0; j < x.cols(); ++j) {
      cplx s = x(col, j);
      for (int k = col + 1; k < n; ++k) s -= m(col, k) * x(k, j);
      x(col, j) = s / m(col, col);
    }
  }
  return x;
}

RMat RMat::identity(int n) {
  RMat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

RMat RMat::operator+(const RMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("RMat::operator+: shape mismatch");
  RMat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

RMat RMat::operator-(const RMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("RMat::operator-: shape mismatch");
  RMat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

RMat RMat::operator*(const RMat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("RMat::operator*: inner dimension mismatch");
  RMat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const double aik = (*this)(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
    }
  return r;
}

RMat RMat::operator*(double s) const {
  RMat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
  return r;
}

RMat RMat::transpose() const {
  RMat r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

double RMat::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

CMat RMat::to_cmat() const {
  CMat r(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
  return r;
}

RMat operator*(double s, const RMat& m) { return m * s; }

std::vector<double> symmetric_eigs(const RMat& m) {
  return hermitian_eigs(m.to_cmat()).values;
}

RMat inverse(const RMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
  const CMat x = solve_linear(m.to_cmat(), CMat::identity(m.rows()));
  RMat r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = x(i, j).real();
  return r;
}

}  // namespace decorr
