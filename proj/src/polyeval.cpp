#include "realfunm/polyeval.hpp"

#include <cmath>
#include <stdexcept>

namespace realfunm {

PowerCache::PowerCache(const CMatrix& a, int max_power, MulCounter& ctr) {
  if (!a.square()) throw std::invalid_argument("PowerCache: matrix not square");
  if (max_power < 1) throw std::invalid_argument("PowerCache: max_power must be positive");
  pow_.reserve(max_power);
  pow_.push_back(a);
  for (int k = 2; k <= max_power; ++k) pow_.push_back(matmul(pow_.back(), a, ctr));
}

const CMatrix& PowerCache::power(int k) const {
  if (k < 1 || k > max_power()) throw std::invalid_argument("PowerCache: power out of range");
  return pow_[k - 1];
}

int ps_block_size(int degree) {
  if (degree < 0) throw std::invalid_argument("ps_block_size: negative degree");
  return static_cast<int>(std::ceil(std::sqrt(static_cast<double>(degree + 1))));
}

namespace {

// Shared core: group the coefficients in runs of s, evaluate each group
// with the cached powers (no multiplications), then Horner over A^s.
CMatrix ps_eval_grouped(const std::vector<double>& c, const PowerCache& cache, int s,
                        MulCounter& ctr) {
  const int n = cache.dim();
  const int m1 = static_cast<int>(c.size());  // m + 1 coefficients
  const int groups = (m1 + s - 1) / s;

  auto group = [&](int t) {
    CMatrix g(n, n);
    const int base = t * s;
    for (int i = 0; i < n; ++i) g.at(i, i) = c[base];
    for (int k = 1; k < s && base + k < m1; ++k) {
      const double ck = c[base + k];
      const CMatrix& ak = cache.power(k);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.at(i, j) += ck * ak.at(i, j);
    }
    return g;
  };

  CMatrix acc = group(groups - 1);
  const CMatrix& as = cache.power(s);
  for (int t = groups - 2; t >= 0; --t) acc = matmul(acc, as, ctr) + group(t);
  return acc;
}

}  // namespace

CMatrix ps_eval(const MonomialPoly& p, const CMatrix& a, MulCounter& ctr) {
  if (!a.square()) throw std::invalid_argument("ps_eval: matrix not square");
  const std::vector<double> c = p.rounded();
  const int s = ps_block_size(p.degree());
  if (p.degree() == 0) {
    CMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i) r.at(i, i) = c[0];
    return r;
  }
  PowerCache cache(a, s, ctr);
  return ps_eval_grouped(c, cache, s, ctr);
}

CMatrix ps_eval(const MonomialPoly& p, const PowerCache& cache, MulCounter& ctr) {
  const std::vector<double> c = p.rounded();
  if (p.degree() == 0) {
    const int n = cache.dim();
    CMatrix r(n, n);
    for (int i = 0; i < n; ++i) r.at(i, i) = c[0];
    return r;
  }
  const int s = ps_block_size(p.degree());
  if (s > cache.max_power())
    throw std::invalid_argument("ps_eval: cache too shallow for this degree");
  return ps_eval_grouped(c, cache, s, ctr);
}

CMatrix horner_matrix_coeffs(const std::vector<CMatrix>& coeffs, const CMatrix& b,
                             MulCounter& ctr) {
  if (coeffs.empty()) throw std::invalid_argument("horner_matrix_coeffs: no coefficients");
  if (!b.square()) throw std::invalid_argument("horner_matrix_coeffs: matrix not square");
  CMatrix acc = coeffs.back();
  for (size_t t = coeffs.size() - 1; t-- > 0;) acc = matmul(acc, b, ctr) + coeffs[t];
  return acc;
}

CMatrix bivariate_apply(const BivariatePoly& p, const CMatrix& a, const CMatrix& h,
                        const CMatrix& b, MulCounter& ctr) {
  if (!a.square() || !b.square()) throw std::invalid_argument("bivariate_apply: blocks not square");
  if (h.rows() != a.rows() || h.cols() != b.rows())
    throw std::invalid_argument("bivariate_apply: coupling block shape mismatch");

  const int m1 = p.xcount(), m2 = p.ycount();
  const int s = ps_block_size(m1 - 1);
  PowerCache cache(a, s, ctr);

  // column j of the grid is a polynomial in A; applied to H it becomes
  // the B^j coefficient of the Horner pass
  std::vector<CMatrix> applied;
  applied.reserve(m2);
  MonomialPoly col;
  col.coeffs.assign(m1, XScalar(p.coeffs.digits()));
  for (int j = 0; j < m2; ++j) {
    for (int i = 0; i < m1; ++i) col.coeffs[i] = p.coeffs.at(i, j);
    applied.push_back(matmul(ps_eval(col, cache, ctr), h, ctr));
  }
  return horner_matrix_coeffs(applied, b, ctr);
}

}  // namespace realfunm
