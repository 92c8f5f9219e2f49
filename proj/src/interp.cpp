#include "realfunm/interp.hpp"

#include <stdexcept>
#include <string>

#include "realfunm/scalarfun.hpp"

namespace realfunm {

NodeSet NodeSet::scaled(const XScalar& factor) const {
  NodeSet r;
  r.nodes.reserve(nodes.size());
  for (const XScalar& z : nodes) r.nodes.push_back(z * factor);
  r.lo = lo * factor;
  r.hi = hi * factor;
  if (r.lo > r.hi) std::swap(r.lo, r.hi);
  return r;
}

NodeSet chebyshev_nodes(int count, const XScalar& lo, const XScalar& hi) {
  if (count < 1) throw std::invalid_argument("chebyshev_nodes: count must be positive");
  if (!(lo < hi) && !(lo == hi))
    throw std::invalid_argument("chebyshev_nodes: endpoints out of order");
  const int digits = lo.digits() > hi.digits() ? lo.digits() : hi.digits();

  // cos((2i-1)pi/(2m)) for i = 1..m, i and m+1-i being exact negatives.
  std::vector<XScalar> c(count, XScalar(digits));
  const XScalar pi = XScalar::pi(digits);
  for (int i = 1; 2 * i <= count; ++i) {
    XScalar angle = pi * static_cast<long>(2 * i - 1) / static_cast<long>(2 * count);
    c[i - 1] = cos(angle);
    c[count - i] = -c[i - 1];
  }
  // odd count: the middle angle is pi/2 exactly

  const XScalar mid = (lo + hi) / 2L;
  const XScalar half = (hi - lo) / 2L;
  NodeSet r;
  r.nodes.reserve(count);
  for (int i = 0; i < count; ++i) r.nodes.push_back(mid + half * c[i]);
  r.lo = lo.with_digits(digits);
  r.hi = hi.with_digits(digits);
  return r;
}

NodeSet chebyshev_nodes(int count, double lo, double hi, int digits) {
  return chebyshev_nodes(count, XScalar(lo, digits), XScalar(hi, digits));
}

XScalar lebesgue_constant(int count, int digits) {
  if (count < 1) throw std::invalid_argument("lebesgue_constant: count must be positive");
  const XScalar pi = XScalar::pi(digits);
  XScalar sum(digits);
  for (int i = 1; i <= count; ++i) {
    XScalar angle = pi * static_cast<long>(2 * i - 1) / static_cast<long>(4 * count);
    sum = sum + cos(angle) / sin(angle);
  }
  return sum / static_cast<long>(count);
}

std::vector<XScalar> divided_differences(const std::vector<XScalar>& centers,
                                         const std::vector<XScalar>& values) {
  const size_t n = values.size();
  if (n == 0) throw std::invalid_argument("divided_differences: no values");
  if (centers.size() < n) throw std::invalid_argument("divided_differences: too few centers");

  std::vector<XScalar> d = values;
  for (size_t j = 1; j < n; ++j)
    for (size_t i = n - 1; i >= j; --i) {
      XScalar dz = centers[i] - centers[i - j];
      if (dz.is_zero())
        throw std::domain_error("divided_differences: coincident nodes at indices " +
                                std::to_string(i - j) + "," + std::to_string(i));
      d[i] = (d[i] - d[i - 1]) / dz;
    }
  return d;
}

std::vector<XScalar> divided_differences(const NodeSet& nodes,
                                         const std::vector<XScalar>& values) {
  if (nodes.nodes.size() != values.size())
    throw std::invalid_argument("divided_differences: node/value count mismatch");
  return divided_differences(nodes.nodes, values);
}

XScalar MonomialPoly::eval(const XScalar& x) const {
  if (coeffs.empty()) throw std::invalid_argument("MonomialPoly: empty");
  XScalar acc = coeffs.back();
  for (size_t i = coeffs.size() - 1; i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

std::vector<double> MonomialPoly::rounded() const {
  std::vector<double> r;
  r.reserve(coeffs.size());
  for (const XScalar& c : coeffs) r.push_back(c.to_double());
  return r;
}

MonomialPoly newton_to_monomial(const std::vector<XScalar>& centers,
                                const std::vector<XScalar>& newton_coeffs) {
  const size_t m = newton_coeffs.size();
  if (m == 0) throw std::invalid_argument("newton_to_monomial: no coefficients");
  if (centers.size() + 1 < m) throw std::invalid_argument("newton_to_monomial: too few centers");
  const int digits = newton_coeffs[0].digits();

  MonomialPoly p;
  p.coeffs.assign(m, XScalar(digits));
  p.coeffs[0] = newton_coeffs[m - 1];
  size_t deg = 0;
  for (size_t k = m - 1; k-- > 0;) {
    // multiply by (x - centers[k]), then absorb coefficient k
    for (size_t r = deg + 1; r >= 1; --r)
      p.coeffs[r] = (r <= deg ? p.coeffs[r - 1] - centers[k] * p.coeffs[r]
                              : XScalar(p.coeffs[r - 1]));
    p.coeffs[0] = newton_coeffs[k] - centers[k] * p.coeffs[0];
    ++deg;
  }
  return p;
}

XScalar scalar_divdiff(const AnalyticFunction& f, const XScalar& x, const XScalar& y) {
  const int digits = x.digits() > y.digits() ? x.digits() : y.digits();
  const XScalar diff = x - y;
  const XScalar thresh = XScalar::parse("1e-" + std::to_string(digits / 2), digits);
  if (abs(diff) > thresh) return (f.eval(x) - f.eval(y)) / diff;
  return f.deriv(x, 1);
}

XScalar BivariatePoly::eval(const XScalar& x, const XScalar& y) const {
  const int digits = coeffs.digits();
  XScalar acc(digits);
  for (int i = coeffs.rows(); i-- > 0;) {
    XScalar row(digits);
    for (int j = coeffs.cols(); j-- > 0;) row = row * y + coeffs.at(i, j);
    acc = acc * x + row;
  }
  return acc;
}

XMatrix newton_grid_to_monomial_x(const XMatrix& g, const std::vector<XScalar>& xcenters) {
  const int m = g.rows(), w = g.cols();
  if (static_cast<int>(xcenters.size()) + 1 < m)
    throw std::invalid_argument("newton_grid_to_monomial_x: too few centers");

  XMatrix acc(m, w, g.digits());
  for (int j = 0; j < w; ++j) acc.at(0, j) = g.at(m - 1, j);
  int deg = 0;
  for (int k = m - 1; k-- > 0;) {
    // acc <- acc * (x - xcenters[k]) + row k of g
    for (int r = deg; r >= 0; --r)
      for (int j = 0; j < w; ++j) {
        acc.at(r + 1, j) = acc.at(r + 1, j) + acc.at(r, j);
        acc.at(r, j) = -(xcenters[k] * acc.at(r, j));
      }
    ++deg;
    for (int j = 0; j < w; ++j) acc.at(0, j) = acc.at(0, j) + g.at(k, j);
  }
  return acc;
}

BivariatePoly bivariate_interpolation(const XMatrix& values, const NodeSet& xnodes,
                                      const NodeSet& ynodes, bool verify) {
  const int m1 = xnodes.count(), m2 = ynodes.count();
  if (values.rows() != m1 || values.cols() != m2)
    throw std::invalid_argument("bivariate_interpolation: grid shape mismatch");
  const int digits = values.digits();

  // Divided differences down each column (x direction).
  XMatrix d(m1, m2, digits);
  {
    std::vector<XScalar> col(m1, XScalar(digits));
    for (int j = 0; j < m2; ++j) {
      for (int i = 0; i < m1; ++i) col[i] = values.at(i, j);
      std::vector<XScalar> dd = divided_differences(xnodes, col);
      for (int i = 0; i < m1; ++i) d.at(i, j) = dd[i];
    }
  }

  // Divided differences across each row (y direction), then monomial
  // form in y.
  XMatrix rows_mono(m1, m2, digits);
  {
    std::vector<XScalar> row(m2, XScalar(digits));
    for (int i = 0; i < m1; ++i) {
      for (int j = 0; j < m2; ++j) row[j] = d.at(i, j);
      MonomialPoly p = newton_to_monomial(ynodes.nodes, divided_differences(ynodes, row));
      for (int j = 0; j < m2; ++j) rows_mono.at(i, j) = p.coeffs[j];
    }
  }

  BivariatePoly p;
  p.coeffs = newton_grid_to_monomial_x(rows_mono, xnodes.nodes);

  if (verify) {
    XScalar scale(1L, digits);
    for (int i = 0; i < m1; ++i)
      for (int j = 0; j < m2; ++j) {
        XScalar a = abs(values.at(i, j));
        if (a > scale) scale = a;
      }
    const XScalar tol = XScalar::parse("1e-" + std::to_string(digits - 6), digits) * scale;
    for (int i = 0; i < m1; ++i)
      for (int j = 0; j < m2; ++j) {
        XScalar err = abs(p.eval(xnodes.nodes[i], ynodes.nodes[j]) - values.at(i, j));
        if (err > tol)
          throw std::runtime_error("bivariate_interpolation: verification failed at node (" +
                                   std::to_string(i) + "," + std::to_string(j) +
                                   "), residual " + err.str(3));
      }
  }
  return p;
}

}  // namespace realfunm
