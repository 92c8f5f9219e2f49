#include "realfunm/schur.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace realfunm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_square(const CMatrix& a, const char* who) {
  if (!a.square()) throw std::invalid_argument(std::string(who) + ": matrix not square");
}

// Givens rotation G = [[c, s], [-conj(s), c]] with real c >= 0 such that
// G * (x, y)^T has a zero second component.
void make_givens(Complex x, Complex y, double& c, Complex& s) {
  if (y == Complex(0.0, 0.0)) {
    c = 1.0;
    s = 0.0;
    return;
  }
  if (x == Complex(0.0, 0.0)) {
    c = 0.0;
    s = std::conj(y) / std::abs(y);
    return;
  }
  const double ax = std::abs(x), ay = std::abs(y);
  const double r = std::hypot(ax, ay);
  c = ax / r;
  s = (x / ax) * (std::conj(y) / r);
}

// One implicitly shifted QR sweep plus deflation bookkeeping happens in
// qr_iterate; rotations are applied across full rows/columns, which
// preserves exact zeros outside the active pattern and keeps the code
// free of bulge index arithmetic.
void rotate_rows(CMatrix& h, int k, double c, Complex s) {
  const int n = h.cols();
  for (int j = 0; j < n; ++j) {
    const Complex a = h.at(k, j), b = h.at(k + 1, j);
    h.at(k, j) = c * a + s * b;
    h.at(k + 1, j) = -std::conj(s) * a + c * b;
  }
}

void rotate_cols(CMatrix& h, int k, double c, Complex s) {
  const int n = h.rows();
  for (int i = 0; i < n; ++i) {
    const Complex a = h.at(i, k), b = h.at(i, k + 1);
    h.at(i, k) = c * a + std::conj(s) * b;
    h.at(i, k + 1) = -s * a + c * b;
  }
}

Complex wilkinson_shift(const CMatrix& h, int hi) {
  const Complex a = h.at(hi - 1, hi - 1), b = h.at(hi - 1, hi);
  const Complex c = h.at(hi, hi - 1), d = h.at(hi, hi);
  const Complex tr = a + d;
  const Complex disc = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
  const Complex m1 = 0.5 * (tr + disc), m2 = 0.5 * (tr - disc);
  return std::abs(m1 - d) < std::abs(m2 - d) ? m1 : m2;
}

// Reduces an upper Hessenberg matrix to triangular form, accumulating
// the rotations into q. Throws on non-convergence.
void qr_iterate(CMatrix& h, CMatrix& q) {
  const int n = h.rows();
  int hi = n - 1;
  int sweeps = 0, stuck = 0;
  const int max_sweeps = 30 * n + 30;

  while (hi > 0) {
    // deflate negligible subdiagonals
    for (int i = 1; i <= hi; ++i) {
      double tst = std::abs(h.at(i - 1, i - 1)) + std::abs(h.at(i, i));
      if (tst == 0.0) tst = norm_one_induced(h);
      if (std::abs(h.at(i, i - 1)) <= kEps * tst) h.at(i, i - 1) = 0.0;
    }
    if (h.at(hi, hi - 1) == Complex(0.0, 0.0)) {
      --hi;
      stuck = 0;
      continue;
    }
    int lo = hi;
    while (lo > 0 && h.at(lo, lo - 1) != Complex(0.0, 0.0)) --lo;

    if (++sweeps > max_sweeps)
      throw std::runtime_error("schur: QR iteration failed to converge after " +
                               std::to_string(max_sweeps) + " sweeps");
    Complex mu = wilkinson_shift(h, hi);
    if (++stuck % 12 == 0)  // rare stagnation: perturb the shift
      mu = h.at(hi, hi) + Complex(0.75 * std::abs(h.at(hi, hi - 1)), 0.0);

    Complex x = h.at(lo, lo) - mu;
    Complex y = h.at(lo + 1, lo);
    for (int k = lo; k < hi; ++k) {
      double c;
      Complex s;
      make_givens(x, y, c, s);
      rotate_rows(h, k, c, s);
      rotate_cols(h, k, c, s);
      rotate_cols(q, k, c, s);
      if (k + 1 < hi) {
        x = h.at(k + 1, k);
        y = h.at(k + 2, k);
      }
    }
  }
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j) h.at(i, j) = 0.0;
}

}  // namespace

std::pair<CMatrix, CMatrix> hessenberg(const CMatrix& a) {
  require_square(a, "hessenberg");
  const int n = a.rows();
  CMatrix h = a;
  CMatrix q = CMatrix::identity(n);

  std::vector<Complex> v(n);
  for (int k = 0; k + 2 < n; ++k) {
    // Householder vector for column k below the diagonal; a column whose
    // below-subdiagonal part is already zero needs no reflector (and must
    // not get one, so Hessenberg inputs pass through unchanged)
    const int len = n - k - 1;
    double tail = 0.0;
    for (int r = 1; r < len; ++r) tail += std::norm(h.at(k + 1 + r, k));
    if (tail == 0.0) continue;
    const double xnorm = std::sqrt(tail + std::norm(h.at(k + 1, k)));

    const Complex x0 = h.at(k + 1, k);
    const Complex phase = (x0 == Complex(0.0, 0.0)) ? Complex(1.0, 0.0) : x0 / std::abs(x0);
    const Complex beta = -phase * xnorm;
    for (int r = 0; r < len; ++r) v[r] = h.at(k + 1 + r, k);
    v[0] -= beta;
    double vnorm2 = 0.0;
    for (int r = 0; r < len; ++r) vnorm2 += std::norm(v[r]);
    if (vnorm2 == 0.0) continue;
    const double coef = 2.0 / vnorm2;

    // H <- P H, rows k+1..n-1 (columns below k are already zero there)
    for (int j = k; j < n; ++j) {
      Complex w = 0.0;
      for (int r = 0; r < len; ++r) w += std::conj(v[r]) * h.at(k + 1 + r, j);
      w *= coef;
      for (int r = 0; r < len; ++r) h.at(k + 1 + r, j) -= w * v[r];
    }
    // H <- H P and Q <- Q P, columns k+1..n-1
    for (int i = 0; i < n; ++i) {
      Complex w = 0.0;
      for (int r = 0; r < len; ++r) w += h.at(i, k + 1 + r) * v[r];
      w *= coef;
      for (int r = 0; r < len; ++r) h.at(i, k + 1 + r) -= w * std::conj(v[r]);
    }
    for (int i = 0; i < n; ++i) {
      Complex w = 0.0;
      for (int r = 0; r < len; ++r) w += q.at(i, k + 1 + r) * v[r];
      w *= coef;
      for (int r = 0; r < len; ++r) q.at(i, k + 1 + r) -= w * std::conj(v[r]);
    }
    h.at(k + 1, k) = beta;
    for (int r = k + 2; r < n; ++r) h.at(r, k) = 0.0;
  }
  return {h, q};
}

double swap_adjacent(CMatrix& t, CMatrix& q, int i) {
  require_square(t, "swap_adjacent");
  const int n = t.rows();
  if (i < 1 || i >= n) throw std::invalid_argument("swap_adjacent: index out of range");

  const Complex t11 = t.at(i - 1, i - 1), t12 = t.at(i - 1, i), t22 = t.at(i, i);
  const Complex diff = t11 - t22;
  if (diff == Complex(0.0, 0.0))
    throw std::invalid_argument("swap_adjacent: equal diagonal entries cannot be swapped");

  // 2x2 unitary [[e^{-ia} cos v, -sin v], [sin v, e^{ia} cos v]] with
  // a = arg t12 - arg(t11 - t22), cos v = |t12| / r, sin v = |t11-t22| / r.
  const double r = std::hypot(std::abs(t12), std::abs(diff));
  const double cv = std::abs(t12) / r;
  const double sv = std::abs(diff) / r;
  const double alpha = std::arg(t12) - std::arg(diff);  // arg(0) = 0
  const Complex eia = std::polar(1.0, alpha);
  const Complex u11 = std::conj(eia) * cv, u12 = Complex(-sv, 0.0);
  const Complex u21 = Complex(sv, 0.0), u22 = eia * cv;

  // T <- U T U^H on rows/cols i-1, i; Q <- Q U^H on cols i-1, i.
  for (int j = 0; j < n; ++j) {
    const Complex a = t.at(i - 1, j), b = t.at(i, j);
    t.at(i - 1, j) = u11 * a + u12 * b;
    t.at(i, j) = u21 * a + u22 * b;
  }
  for (int row = 0; row < n; ++row) {
    const Complex a = t.at(row, i - 1), b = t.at(row, i);
    t.at(row, i - 1) = a * std::conj(u11) + b * std::conj(u12);
    t.at(row, i) = a * std::conj(u21) + b * std::conj(u22);
  }
  for (int row = 0; row < q.rows(); ++row) {
    const Complex a = q.at(row, i - 1), b = q.at(row, i);
    q.at(row, i - 1) = a * std::conj(u11) + b * std::conj(u12);
    q.at(row, i) = a * std::conj(u21) + b * std::conj(u22);
  }

  const double resid = std::abs(t.at(i, i - 1));
  const double bound = 1e-12 * std::max(1.0, norm_one_induced(t));
  if (resid > bound)
    throw std::logic_error("swap_adjacent: rotated subdiagonal " + std::to_string(resid) +
                           " exceeds the similarity bound");
  t.at(i, i - 1) = 0.0;
  return resid;
}

int sort_diagonal(CMatrix& t, CMatrix& q, double* max_swap_residual) {
  require_square(t, "sort_diagonal");
  const int n = t.rows();
  int swaps = 0;
  double worst = 0.0;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i = 1; i < n; ++i)
      if (t.at(i, i).real() < t.at(i - 1, i - 1).real()) {
        worst = std::max(worst, swap_adjacent(t, q, i));
        ++swaps;
        moved = true;
      }
  }
  if (max_swap_residual) *max_swap_residual = worst;
  return swaps;
}

std::vector<double> validate_real_spectrum(CMatrix& t, double tol) {
  require_square(t, "validate_real_spectrum");
  const int n = t.rows();
  const double scale = 1.0 + norm_one_induced(t);
  int worst = 0;
  double worst_im = 0.0;
  for (int i = 0; i < n; ++i) {
    const double im = std::abs(t.at(i, i).imag());
    if (im > worst_im) {
      worst_im = im;
      worst = i;
    }
  }
  if (worst_im > tol * scale)
    throw std::domain_error("spectrum not real: |Im| = " + std::to_string(worst_im) +
                            " at diagonal entry " + std::to_string(worst));
  std::vector<double> d(n);
  for (int i = 0; i < n; ++i) {
    t.at(i, i) = Complex(t.at(i, i).real(), 0.0);
    d[i] = t.at(i, i).real();
  }
  return d;
}

SchurForm schur_ascending(const CMatrix& r, double real_tol) {
  require_square(r, "schur_ascending");
  const int n = r.rows();
  SchurForm out;

  bool fast = r.check_upper_triangular();
  if (fast)
    for (int i = 0; i < n && fast; ++i)
      if (std::abs(r.at(i, i).imag()) > real_tol * (1.0 + norm_one_induced(r))) fast = false;

  if (fast) {
    out.T = r;
    out.Q = CMatrix::identity(n);
    out.used_qr = false;
  } else {
    // Shifted QR tends to leave the diagonal in roughly descending
    // magnitude order. Running it on alpha*I - R flips the spectrum, so
    // the original eigenvalues come out roughly ascending and the sort
    // below stays cheap; alpha = ||R||_1 + 1 keeps the flip positive.
    const double alpha = norm_one_induced(r) + 1.0;
    CMatrix r1 = Complex(-1.0, 0.0) * r;
    r1 = r1.shifted(alpha);
    auto [h, q] = hessenberg(r1);
    qr_iterate(h, q);
    // undo the flip: T = alpha*I - T1
    CMatrix t = Complex(-1.0, 0.0) * h;
    t = t.shifted(alpha);
    for (int i = 1; i < n; ++i)
      for (int j = 0; j < i; ++j) t.at(i, j) = 0.0;
    out.T = t;
    out.Q = q;
    out.used_qr = true;
  }

  validate_real_spectrum(out.T, real_tol);
  out.swap_count = sort_diagonal(out.T, out.Q, &out.max_swap_residual);
  out.T.set_upper_triangular();

  MulCounter scratch;
  const CMatrix recon = matmul(matmul(out.Q, out.T, scratch), out.Q.adjoint(), scratch);
  const double denom = norm_frobenius(r);
  out.residual = denom == 0.0 ? norm_frobenius(recon - r) : norm_frobenius(recon - r) / denom;
  out.unitarity = norm_max_abs(matmul(out.Q.adjoint(), out.Q, scratch) - CMatrix::identity(n));
  return out;
}

}  // namespace realfunm
