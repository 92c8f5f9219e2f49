#include "realfunm/cmatrix.hpp"

#include <cmath>
#include <stdexcept>

namespace realfunm {

namespace {

void require_same_shape(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("CMatrix: shape mismatch");
}

}  // namespace

CMatrix::CMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("CMatrix: non-positive dimension");
  a_.assign(static_cast<size_t>(rows) * cols, Complex(0.0, 0.0));
}

CMatrix CMatrix::identity(int n) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.a_[static_cast<size_t>(i) * n + i] = 1.0;
  return m;
}

bool CMatrix::check_upper_triangular() const {
  if (rows_ != cols_) return false;
  for (int i = 1; i < rows_; ++i)
    for (int j = 0; j < i; ++j)
      if (at(i, j) != Complex(0.0, 0.0)) return false;
  return true;
}

void CMatrix::set_upper_triangular() {
  if (!check_upper_triangular())
    throw std::logic_error("CMatrix: triangular flag requested on a non-triangular matrix");
  upper_ = true;
}

CMatrix CMatrix::adjoint() const {
  CMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = std::conj(at(i, j));
  return r;
}

CMatrix CMatrix::shifted(Complex s) const {
  if (!square()) throw std::invalid_argument("CMatrix::shifted: not square");
  CMatrix r(*this);
  r.upper_ = false;
  for (int i = 0; i < rows_; ++i) r.at(i, i) += s;
  return r;
}

CMatrix CMatrix::block(int r0, int c0, int nrows, int ncols) const {
  if (r0 < 0 || c0 < 0 || nrows <= 0 || ncols <= 0 || r0 + nrows > rows_ || c0 + ncols > cols_)
    throw std::invalid_argument("CMatrix::block: range out of bounds");
  CMatrix r(nrows, ncols);
  for (int i = 0; i < nrows; ++i)
    for (int j = 0; j < ncols; ++j) r.at(i, j) = at(r0 + i, c0 + j);
  return r;
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b);
  CMatrix r(a.rows(), a.cols());
  for (size_t k = 0; k < r.a_.size(); ++k) r.a_[k] = a.a_[k] + b.a_[k];
  return r;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b);
  CMatrix r(a.rows(), a.cols());
  for (size_t k = 0; k < r.a_.size(); ++k) r.a_[k] = a.a_[k] - b.a_[k];
  return r;
}

CMatrix operator*(Complex s, const CMatrix& a) {
  CMatrix r(a.rows(), a.cols());
  for (size_t k = 0; k < r.a_.size(); ++k) r.a_[k] = s * a.a_[k];
  return r;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b, MulCounter& ctr) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: inner dimension mismatch");
  CMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Complex aik = a.at(i, k);
      if (aik == Complex(0.0, 0.0)) continue;
      for (int j = 0; j < b.cols(); ++j) c.at(i, j) += aik * b.at(k, j);
    }
  ctr.add();
  return c;
}

double norm_one_induced(const CMatrix& a) {
  double best = 0.0;
  for (int j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i) s += std::abs(a.at(i, j));
    if (s > best) best = s;
  }
  return best;
}

double norm_frobenius(const CMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s += std::norm(a.at(i, j));
  return std::sqrt(s);
}

double norm_max_abs(const CMatrix& a) {
  double best = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) best = std::max(best, std::abs(a.at(i, j)));
  return best;
}

// Largest singular value by power iteration on A*A with a fixed
// pseudo-random start vector; deterministic across runs.
double norm_two_estimate(const CMatrix& a) {
  const int n = a.cols(), m = a.rows();
  if (norm_max_abs(a) == 0.0) return 0.0;

  std::vector<Complex> v(n), av(m), w(n);
  std::uint64_t s = 0x9E3779B97F4A7C15ull;
  auto chip = [&s]() {
    s += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53 - 0.5;
  };
  for (int j = 0; j < n; ++j) v[j] = Complex(1.0 + chip(), chip());

  double prev = 0.0;
  for (int iter = 0; iter < 2000; ++iter) {
    // av = A v
    for (int i = 0; i < m; ++i) {
      Complex t = 0.0;
      for (int j = 0; j < n; ++j) t += a.at(i, j) * v[j];
      av[i] = t;
    }
    double num = 0.0;
    for (int i = 0; i < m; ++i) num += std::norm(av[i]);
    double den = 0.0;
    for (int j = 0; j < n; ++j) den += std::norm(v[j]);
    if (den == 0.0) return 0.0;
    double est = std::sqrt(num / den);
    if (iter > 2 && std::abs(est - prev) <= 1e-7 * est) return est;
    prev = est;
    // w = A^* av, then v = w normalized
    for (int j = 0; j < n; ++j) {
      Complex t = 0.0;
      for (int i = 0; i < m; ++i) t += std::conj(a.at(i, j)) * av[i];
      w[j] = t;
    }
    double wn = 0.0;
    for (int j = 0; j < n; ++j) wn += std::norm(w[j]);
    wn = std::sqrt(wn);
    if (wn == 0.0) return est;
    for (int j = 0; j < n; ++j) v[j] = w[j] / wn;
  }
  return prev;
}

MatrixNorms norms(const CMatrix& a) {
  return MatrixNorms{norm_one_induced(a), norm_frobenius(a), norm_max_abs(a),
                     norm_two_estimate(a)};
}

}  // namespace realfunm
