#pragma once

#include <vector>

#include "realfunm/cmatrix.hpp"
#include "realfunm/xscalar.hpp"

namespace realfunm {

// Dense real matrix of extended-precision scalars. Used for reference
// constructions (T = S D S^-1 and its function values) and for
// interpolation grids; all entries share one decimal precision.
class XMatrix {
 public:
  XMatrix() = default;
  XMatrix(int rows, int cols, int digits);  // zeros
  static XMatrix identity(int n, int digits);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int digits() const { return digits_; }

  XScalar& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const XScalar& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  CMatrix rounded() const;  // nearest working-precision matrix (real entries)

 private:
  int rows_ = 0, cols_ = 0, digits_ = XScalar::min_digits;
  std::vector<XScalar> a_;
};

XMatrix matmul_hp(const XMatrix& a, const XMatrix& b);

// Inverse of a unit upper-triangular matrix by back substitution;
// throws std::invalid_argument if the input is not unit upper-triangular.
XMatrix unit_upper_inverse_hp(const XMatrix& s);

// max |M - I| entrywise, as a double; residual check for inverses.
double identity_residual_hp(const XMatrix& m);

}  // namespace realfunm
