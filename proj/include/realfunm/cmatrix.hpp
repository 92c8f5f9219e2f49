#pragma once

#include <atomic>
#include <complex>
#include <cstdint>
#include <vector>

namespace realfunm {

using Complex = std::complex<double>;

// Counts matrix-matrix multiplications, the cost unit everything is
// instrumented in. Scalar-matrix products and additions do not count.
class MulCounter {
 public:
  void add(std::uint64_t n = 1) { n_.fetch_add(n, std::memory_order_relaxed); }
  std::uint64_t count() const { return n_.load(std::memory_order_relaxed); }
  void reset() { n_.store(0, std::memory_order_relaxed); }

 private:
  std::atomic<std::uint64_t> n_{0};
};

// Dense complex matrix at working (double) precision, row-major. The
// upper-triangular flag is only ever set after verifying that everything
// strictly below the diagonal is exactly zero; writing through at()
// clears it again.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(int rows, int cols);
  static CMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_ && rows_ > 0; }

  Complex& at(int i, int j) {
    upper_ = false;
    return a_[static_cast<size_t>(i) * cols_ + j];
  }
  const Complex& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  bool upper_triangular() const { return upper_; }
  void set_upper_triangular();          // verifies, throws std::logic_error
  bool check_upper_triangular() const;  // exact-zero test below the diagonal

  CMatrix adjoint() const;
  CMatrix shifted(Complex s) const;  // *this + s*I
  CMatrix block(int r0, int c0, int nrows, int ncols) const;

  friend CMatrix operator+(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator-(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator*(Complex s, const CMatrix& a);

 private:
  int rows_ = 0, cols_ = 0;
  bool upper_ = false;
  std::vector<Complex> a_;
};

CMatrix matmul(const CMatrix& a, const CMatrix& b, MulCounter& ctr);

double norm_one_induced(const CMatrix& a);  // max column sum
double norm_frobenius(const CMatrix& a);
double norm_max_abs(const CMatrix& a);
double norm_two_estimate(const CMatrix& a);  // power iteration on A*A

struct MatrixNorms {
  double one_induced;
  double frobenius;
  double max_abs;
  double two_induced_estimate;
};

MatrixNorms norms(const CMatrix& a);

}  // namespace realfunm
