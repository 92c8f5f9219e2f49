#include "realfunm/xmatrix.hpp"

#include <cmath>
#include <stdexcept>

namespace realfunm {

XMatrix::XMatrix(int rows, int cols, int digits) : rows_(rows), cols_(cols), digits_(digits) {
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("XMatrix: non-positive dimension");
  a_.assign(static_cast<size_t>(rows) * cols, XScalar(digits));
}

XMatrix XMatrix::identity(int n, int digits) {
  XMatrix m(n, n, digits);
  for (int i = 0; i < n; ++i) m.at(i, i) = XScalar(1L, digits);
  return m;
}

CMatrix XMatrix::rounded() const {
  CMatrix r(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(i, j) = Complex(at(i, j).to_double(), 0.0);
  return r;
}

XMatrix matmul_hp(const XMatrix& a, const XMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul_hp: inner dimension mismatch");
  const int digits = a.digits() > b.digits() ? a.digits() : b.digits();
  XMatrix c(a.rows(), b.cols(), digits);
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const XScalar& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < b.cols(); ++j) c.at(i, j) = c.at(i, j) + aik * b.at(k, j);
    }
  return c;
}

XMatrix unit_upper_inverse_hp(const XMatrix& s) {
  const int n = s.rows();
  if (s.cols() != n) throw std::invalid_argument("unit_upper_inverse_hp: not square");
  const XScalar one(1L, s.digits());
  for (int i = 0; i < n; ++i) {
    if (!(s.at(i, i) == one))
      throw std::invalid_argument("unit_upper_inverse_hp: non-unit diagonal");
    for (int j = 0; j < i; ++j)
      if (!s.at(i, j).is_zero())
        throw std::invalid_argument("unit_upper_inverse_hp: nonzero below the diagonal");
  }

  XMatrix x = XMatrix::identity(n, s.digits());
  // Solve S X = I; X is unit upper-triangular as well.
  for (int j = 1; j < n; ++j)
    for (int i = j - 1; i >= 0; --i) {
      XScalar acc(s.digits());
      for (int k = i + 1; k <= j; ++k) acc = acc + s.at(i, k) * x.at(k, j);
      x.at(i, j) = -acc;
    }
  return x;
}

double identity_residual_hp(const XMatrix& m) {
  double best = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      XScalar d = (i == j) ? m.at(i, j) - 1L : m.at(i, j);
      best = std::max(best, std::abs(d.to_double()));
    }
  return best;
}

}  // namespace realfunm
