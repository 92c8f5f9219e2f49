#pragma once

#include <vector>

#include "realfunm/cmatrix.hpp"
#include "realfunm/interp.hpp"

namespace realfunm {

// Powers A^1..A^max_power, built once (max_power - 1 multiplications)
// and shared by every polynomial evaluation against the same block.
class PowerCache {
 public:
  PowerCache(const CMatrix& a, int max_power, MulCounter& ctr);

  const CMatrix& power(int k) const;  // k in 1..max_power
  int max_power() const { return static_cast<int>(pow_.size()); }
  int dim() const { return pow_[0].rows(); }

 private:
  std::vector<CMatrix> pow_;
};

// Block size ceil(sqrt(m+1)) for a polynomial of degree m; degree 15
// gives 4, the grouping the evaluation scheme is built around.
int ps_block_size(int degree);

// Paterson-Stockmeyer evaluation of p(A). Coefficients are rounded from
// extended to working precision on entry. The cold form builds its own
// powers (6 multiplications at degree 15); the warm form reuses a cache
// (3 at degree 15) and requires cache.max_power() >= ps_block_size.
// Both are structure-blind: counts depend on the degree only.
CMatrix ps_eval(const MonomialPoly& p, const CMatrix& a, MulCounter& ctr);
CMatrix ps_eval(const MonomialPoly& p, const PowerCache& cache, MulCounter& ctr);

// Horner evaluation sum_t C_t B^t with matrix coefficients, consuming
// |coeffs| - 1 multiplications.
CMatrix horner_matrix_coeffs(const std::vector<CMatrix>& coeffs, const CMatrix& b,
                             MulCounter& ctr);

// sum_{i,j} c_ij A^i H B^j, evaluated as a Horner pass in B over the
// inner polynomials-in-A applied to H. For a 16x16 coefficient grid this
// costs 3 + 4*16 + 15 = 82 multiplications.
CMatrix bivariate_apply(const BivariatePoly& p, const CMatrix& a, const CMatrix& h,
                        const CMatrix& b, MulCounter& ctr);

}  // namespace realfunm
