#pragma once

#include <vector>

#include "realfunm/xmatrix.hpp"
#include "realfunm/xscalar.hpp"

namespace realfunm {

class AnalyticFunction;

// Interpolation nodes on [lo, hi], kept in the order of the defining
// cosine formula (descending). All entries share one decimal precision.
struct NodeSet {
  std::vector<XScalar> nodes;
  XScalar lo, hi;

  int count() const { return static_cast<int>(nodes.size()); }
  int digits() const { return lo.digits(); }

  // Multiplies every node and both endpoints by `factor`; maps the
  // [-1,1] reference set onto [-factor, factor].
  NodeSet scaled(const XScalar& factor) const;
};

// Chebyshev points of the first kind for the given count, at the
// precision of the endpoints. The cosine values are computed for the
// upper half and mirrored by exact negation, so a symmetric interval
// yields a node set exactly closed under negation.
NodeSet chebyshev_nodes(int count, const XScalar& lo, const XScalar& hi);
NodeSet chebyshev_nodes(int count, double lo, double hi, int digits);

// Lebesgue constant of Chebyshev interpolation with `count` nodes.
XScalar lebesgue_constant(int count, int digits);

// Newton divided-difference coefficients of `values` over `centers`
// (coefficient i belongs to the product of the first i center factors).
// Exactly coincident centers are rejected.
std::vector<XScalar> divided_differences(const std::vector<XScalar>& centers,
                                         const std::vector<XScalar>& values);
std::vector<XScalar> divided_differences(const NodeSet& nodes,
                                         const std::vector<XScalar>& values);

// Polynomial in the monomial basis, ascending powers, extended precision.
struct MonomialPoly {
  std::vector<XScalar> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  XScalar eval(const XScalar& x) const;
  std::vector<double> rounded() const;
};

// Expands a Newton-form polynomial into the monomial basis. Requires
// |centers| >= |newton_coeffs| - 1; the trailing center is never used.
MonomialPoly newton_to_monomial(const std::vector<XScalar>& centers,
                                const std::vector<XScalar>& newton_coeffs);

// Divided difference (f(x) - f(y)) / (x - y), switching to f'(x) when
// the arguments are closer than 10^(-precision/2); the extended working
// precision keeps the difference quotient fully accurate above that.
XScalar scalar_divdiff(const AnalyticFunction& f, const XScalar& x, const XScalar& y);

// Polynomial in two variables, coeffs.at(i, j) multiplying x^i y^j.
struct BivariatePoly {
  XMatrix coeffs;

  int xcount() const { return coeffs.rows(); }
  int ycount() const { return coeffs.cols(); }
  XScalar eval(const XScalar& x, const XScalar& y) const;
};

// Grid Horner expansion: row i of `g` holds the coefficient vector (over
// some second-variable basis) attached to the i-th Newton basis product
// in x. Returns the grid re-expressed over x-monomial powers.
XMatrix newton_grid_to_monomial_x(const XMatrix& g, const std::vector<XScalar>& xcenters);

// Coefficient grid of the polynomial interpolating `values` on the node
// grid xnodes x ynodes: divided differences down each column, divided
// differences across each row, then expansion to monomial form in both
// variables. With verify set, the result is evaluated back on the grid
// and must reproduce `values` to within 10^(6 - digits) relative to the
// grid scale.
BivariatePoly bivariate_interpolation(const XMatrix& values, const NodeSet& xnodes,
                                      const NodeSet& ynodes, bool verify = true);

}  // namespace realfunm
