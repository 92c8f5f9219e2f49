#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "realfunm/interp.hpp"
#include "realfunm/scalarfun.hpp"
#include "realfunm/xmatrix.hpp"

using realfunm::AnalyticFunction;
using realfunm::BivariatePoly;
using realfunm::MonomialPoly;
using realfunm::NodeSet;
using realfunm::XMatrix;
using realfunm::XScalar;
using realfunm::chebyshev_nodes;
using realfunm::divided_differences;
using realfunm::lebesgue_constant;
using realfunm::newton_to_monomial;
using realfunm::scalar_divdiff;

namespace {

std::uint64_t mix(std::uint64_t& s) {
  s += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double unit(std::uint64_t& s) { return static_cast<double>(mix(s) >> 11) * 0x1.0p-53; }

// Newton-form evaluation, independent of the monomial conversion.
XScalar eval_newton(const std::vector<XScalar>& centers, const std::vector<XScalar>& coef,
                    const XScalar& x) {
  XScalar acc = coef.back();
  for (size_t k = coef.size() - 1; k-- > 0;) acc = acc * (x - centers[k]) + coef[k];
  return acc;
}

// Degree-m exp interpolant on [-1,1] in monomial form at `digits` digits.
MonomialPoly exp_interpolant(int degree, int digits) {
  const NodeSet nodes = chebyshev_nodes(degree + 1, -1.0, 1.0, digits);
  std::vector<XScalar> values;
  values.reserve(nodes.count());
  for (const XScalar& z : nodes.nodes) values.push_back(exp(z));
  return newton_to_monomial(nodes.nodes, divided_differences(nodes, values));
}

// Max of |e^x - p(x)| over `samples` equispaced points of [-1,1].
XScalar exp_interp_error(const MonomialPoly& p, int samples, int digits) {
  XScalar worst(digits);
  for (int k = 0; k < samples; ++k) {
    const XScalar x = XScalar(2L * k, digits) / static_cast<long>(samples - 1) - 1L;
    const XScalar err = abs(exp(x) - p.eval(x));
    if (err > worst) worst = err;
  }
  return worst;
}

// Brute-force Lebesgue constant: max over a fine grid of the sum of absolute
// Lagrange basis values.  For first-kind nodes the max sits at the interval
// ends, which the grid hits exactly, so double precision gives ~12 digits.
double lebesgue_scan(int m) {
  std::vector<double> nodes(m);
  for (int i = 0; i < m; ++i) nodes[i] = std::cos((2.0 * i + 1.0) * M_PI / (2.0 * m));
  double best = 0.0;
  const int grid = 20000;
  for (int g = 0; g <= grid; ++g) {
    const double x = -1.0 + 2.0 * static_cast<double>(g) / grid;
    double sum = 0.0;
    for (int i = 0; i < m; ++i) {
      double li = 1.0;
      for (int j = 0; j < m; ++j)
        if (j != i) li *= (x - nodes[j]) / (nodes[i] - nodes[j]);
      sum += std::abs(li);
    }
    best = std::max(best, sum);
  }
  return best;
}

XMatrix expdd_grid(const NodeSet& xs, const NodeSet& ys, int digits) {
  const auto f = realfunm::catalog_get("exp");
  XMatrix g(xs.count(), ys.count(), digits);
  for (int i = 0; i < xs.count(); ++i)
    for (int j = 0; j < ys.count(); ++j)
      g.at(i, j) = scalar_divdiff(*f, xs.nodes[i], ys.nodes[j]);
  return g;
}

class SquareFn final : public AnalyticFunction {
 public:
  std::string name() const override { return "square"; }
  XScalar eval(const XScalar& x) const override { return x * x; }
  XScalar deriv(const XScalar& x, int order) const override {
    check_order(order);
    if (order == 0) return x * x;
    if (order == 1) return x * 2L;
    return XScalar(order == 2 ? 2L : 0L, x.digits());
  }
};

}  // namespace

TEST_CASE("single node is the exact midpoint") {
  const NodeSet n = chebyshev_nodes(1, -1.0, 1.0, 30);
  REQUIRE(n.count() == 1);
  CHECK(n.nodes[0].is_zero());
  const NodeSet m = chebyshev_nodes(1, 1.0, 3.0, 30);
  CHECK(m.nodes[0] == XScalar(2L, 30));
}

TEST_CASE("two nodes are +-sqrt(2)/2") {
  const NodeSet n = chebyshev_nodes(2, -1.0, 1.0, 30);
  REQUIRE(n.count() == 2);
  const XScalar r = sqrt(XScalar(2L, 30)) / 2L;
  CHECK(abs(n.nodes[0] - r) <= XScalar::parse("2e-29", 30));
  CHECK(n.nodes[1] == -n.nodes[0]);
}

TEST_CASE("nodes are descending, strictly inside, and negation-symmetric") {
  for (int m : {2, 5, 16}) {
    const NodeSet n = chebyshev_nodes(m, -1.0, 1.0, 30);
    for (int i = 1; i < m; ++i) CHECK(n.nodes[i] < n.nodes[i - 1]);
    for (int i = 0; i < m; ++i) {
      CHECK(n.nodes[i] < n.hi);
      CHECK(n.nodes[i] > n.lo);
      CHECK(n.nodes[i] == -n.nodes[m - 1 - i]);  // exact at the scalar level
    }
  }
}

TEST_CASE("largest of 16 nodes equals the nested radical to 28 digits") {
  const NodeSet n = chebyshev_nodes(16, -1.0, 1.0, 30);
  const XScalar two(2L, 40);
  const XScalar radical = sqrt(two + sqrt(two + sqrt(two + sqrt(two)))) / 2L;
  CHECK(abs(n.nodes[0] - radical) < XScalar::parse("1e-28", 40));
}

TEST_CASE("scaled node set maps [-1,1] onto [-delta,delta]") {
  const NodeSet ref = chebyshev_nodes(16, -1.0, 1.0, 30);
  const XScalar d = XScalar::parse("0.35", 30);
  const NodeSet s = ref.scaled(d);
  CHECK(s.lo == -d);
  CHECK(s.hi == d);
  for (int i = 0; i < 16; ++i) CHECK(s.nodes[i] == ref.nodes[i] * d);
}

TEST_CASE("Lebesgue constant small cases") {
  CHECK(abs(lebesgue_constant(1, 30) - XScalar(1L, 30)) < XScalar::parse("1e-28", 30));
  CHECK(abs(lebesgue_constant(2, 30) - sqrt(XScalar(2L, 30))) < XScalar::parse("1e-28", 30));
}

TEST_CASE("Lebesgue constant matches a brute-force scan") {
  for (int m : {3, 8, 15, 16})
    CHECK(lebesgue_constant(m, 30).to_double() == doctest::Approx(lebesgue_scan(m)).epsilon(1e-9));
}

TEST_CASE("Lebesgue constant values and logarithmic growth") {
  // The often-quoted "about 2.69" is the 15-node constant; 16 nodes give
  // 2.7278.  Both the brute-force scan above and the closed form agree.
  CHECK(lebesgue_constant(15, 30).to_double() == doctest::Approx(2.6867148815654).epsilon(1e-10));
  CHECK(lebesgue_constant(16, 30).to_double() == doctest::Approx(2.7277779364183).epsilon(1e-10));
  for (int m = 1; m <= 16; ++m)
    CHECK(lebesgue_constant(m, 30).to_double() <= 2.0 / M_PI * std::log(m) + 1.0);
}

TEST_CASE("divided differences of a constant") {
  const NodeSet n = chebyshev_nodes(5, -1.0, 1.0, 30);
  const std::vector<XScalar> vals(5, XScalar(7L, 30));
  const std::vector<XScalar> d = divided_differences(n, vals);
  CHECK(d[0] == XScalar(7L, 30));
  for (int i = 1; i < 5; ++i) CHECK(d[i].is_zero());
}

TEST_CASE("divided differences of z^2 over 0,1,2") {
  const std::vector<XScalar> centers{XScalar(30), XScalar(1L, 30), XScalar(2L, 30)};
  const std::vector<XScalar> values{XScalar(30), XScalar(1L, 30), XScalar(4L, 30)};
  const std::vector<XScalar> d = divided_differences(centers, values);
  CHECK(d[0].is_zero());
  CHECK(d[1] == XScalar(1L, 30));
  CHECK(d[2] == XScalar(1L, 30));
}

TEST_CASE("coincident nodes are rejected") {
  const std::vector<XScalar> centers{XScalar(1L, 30), XScalar(1L, 30)};
  const std::vector<XScalar> values{XScalar(1L, 30), XScalar(2L, 30)};
  CHECK_THROWS_AS(divided_differences(centers, values), std::domain_error);
}

TEST_CASE("Newton interpolant of exp hits exp at random points") {
  const NodeSet n = chebyshev_nodes(16, -1.0, 1.0, 30);
  std::vector<XScalar> vals;
  for (const XScalar& z : n.nodes) vals.push_back(exp(z));
  const std::vector<XScalar> coef = divided_differences(n, vals);
  std::uint64_t s = 31;
  for (int t = 0; t < 100; ++t) {
    const XScalar x(unit(s) * 2.0 - 1.0, 30);
    CHECK(abs(eval_newton(n.nodes, coef, x) - exp(x)) < XScalar::parse("1e-15", 30));
  }
}

TEST_CASE("newton_to_monomial base cases") {
  const std::vector<XScalar> centers{XScalar(1L, 30), XScalar(2L, 30)};
  const MonomialPoly single = newton_to_monomial(centers, {XScalar(5L, 30)});
  REQUIRE(single.degree() == 0);
  CHECK(single.coeffs[0] == XScalar(5L, 30));

  // (z-1)(z-2) + (z-1) = z^2 - 2z + 1
  const std::vector<XScalar> newton{XScalar(30), XScalar(1L, 30), XScalar(1L, 30)};
  const MonomialPoly p = newton_to_monomial(centers, newton);
  REQUIRE(p.degree() == 2);
  CHECK(p.coeffs[0] == XScalar(1L, 30));
  CHECK(p.coeffs[1] == XScalar(-2L, 30));
  CHECK(p.coeffs[2] == XScalar(1L, 30));
}

TEST_CASE("monomial and Newton forms agree pointwise") {
  const NodeSet n = chebyshev_nodes(16, -1.0, 1.0, 30);
  std::vector<XScalar> vals;
  for (const XScalar& z : n.nodes) vals.push_back(exp(z));
  const std::vector<XScalar> coef = divided_differences(n, vals);
  const MonomialPoly p = newton_to_monomial(n.nodes, coef);
  std::uint64_t s = 32;
  for (int t = 0; t < 1000; ++t) {
    const XScalar x(unit(s) * 2.0 - 1.0, 30);
    const XScalar a = eval_newton(n.nodes, coef, x);
    CHECK(abs(p.eval(x) - a) <= abs(a) * XScalar::parse("1e-16", 30));
  }
}

TEST_CASE("interpolant reproduces the function at its own nodes") {
  const auto f = realfunm::catalog_get("exp");
  const NodeSet n = chebyshev_nodes(10, -2.0, 0.0, 30);
  std::vector<XScalar> vals;
  XScalar scale(30);
  for (const XScalar& z : n.nodes) {
    vals.push_back(f->eval(z));
    if (abs(vals.back()) > scale) scale = abs(vals.back());
  }
  const MonomialPoly p = newton_to_monomial(n.nodes, divided_differences(n, vals));
  for (int i = 0; i < n.count(); ++i)
    CHECK(abs(p.eval(n.nodes[i]) - vals[i]) <= scale * XScalar::parse("1e-26", 30));
}

TEST_CASE("scalar divided difference branches") {
  const auto f = realfunm::catalog_get("exp");
  const XScalar zero(30), one(1L, 30);
  CHECK(scalar_divdiff(*f, zero, zero) == one);  // derivative branch, exp'(0) = 1

  const SquareFn sq;
  CHECK(abs(scalar_divdiff(sq, XScalar(3L, 30), XScalar(5L, 30)) - XScalar(8L, 30)) <
        XScalar::parse("1e-28", 30));

  const XScalar em1 = exp(one) - one;
  CHECK(abs(scalar_divdiff(*f, one, zero) - em1) < XScalar::parse("1e-28", 30));

  // near-coincident arguments fall through to the derivative
  const XScalar eps = XScalar::parse("1e-20", 30);
  const XScalar dd = scalar_divdiff(*f, one, one + eps);
  CHECK(abs(dd - exp(one)) < XScalar::parse("1e-19", 30));
}

TEST_CASE("exp interpolation error matches the known per-degree values") {
  // degree 7 ~ 2.07e-7, degree 13 ~ 1.46e-15, degree 15 ~ 1.51e-18,
  // all within a factor of 10 (2001-point scan; the acceptance run uses
  // the full 10^4 grid)
  struct Row {
    int degree;
    double expected;
  };
  for (const Row row : {Row{7, 2.07e-7}, Row{13, 1.46e-15}, Row{15, 1.51e-18}}) {
    const MonomialPoly p = exp_interpolant(row.degree, 30);
    const double got = exp_interp_error(p, 2001, 30).to_double();
    CHECK(got > row.expected / 10.0);
    CHECK(got < row.expected * 10.0);
  }
}

TEST_CASE("node precision bounds the coefficient error") {
  // 16-node exp interpolant on [-1,1]: working at d digits must leave no
  // more than ~1e(7-d) of absolute error in the monomial coefficients.
  // (Guard bits make the actual error a few orders smaller; the budgets
  // below are the guaranteed ceilings, and the ratio check pins the
  // ten-per-digit scaling between the two precisions.)
  const MonomialPoly ref = exp_interpolant(15, 45);
  auto max_coeff_err = [&](int digits) {
    const MonomialPoly p = exp_interpolant(15, digits);
    XScalar worst(45);
    for (int i = 0; i <= 15; ++i) {
      const XScalar e = abs(p.coeffs[i].with_digits(45) - ref.coeffs[i]);
      if (e > worst) worst = e;
    }
    return worst.to_double();
  };
  const double e23 = max_coeff_err(23);
  CHECK(e23 < 1e-16);
  const double e30 = max_coeff_err(30);
  CHECK(e30 < 1e-23);
  REQUIRE(e30 > 0.0);
  const double ratio = e23 / e30;
  CHECK(ratio > 1e5);
  CHECK(ratio < 1e9);
}

TEST_CASE("bivariate interpolation of a constant grid") {
  const NodeSet xs = chebyshev_nodes(4, -1.0, 1.0, 30);
  const NodeSet ys = chebyshev_nodes(4, 2.0, 3.0, 30);
  XMatrix g(4, 4, 30);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g.at(i, j) = XScalar(9L, 30);
  const BivariatePoly p = bivariate_interpolation(g, xs, ys);
  const XScalar tiny = XScalar::parse("1e-25", 30);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == 0 && j == 0)
        CHECK(abs(p.coeffs.at(0, 0) - XScalar(9L, 30)) < tiny);
      else
        CHECK(abs(p.coeffs.at(i, j)) < tiny);
    }
}

TEST_CASE("bivariate interpolation reproduces x + y exactly") {
  const NodeSet xs = chebyshev_nodes(2, -3.0, -1.0, 30);
  const NodeSet ys = chebyshev_nodes(2, -1.0, 1.0, 30);
  XMatrix g(2, 2, 30);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g.at(i, j) = xs.nodes[i] + ys.nodes[j];
  const BivariatePoly p = bivariate_interpolation(g, xs, ys);
  const XScalar tiny = XScalar::parse("1e-26", 30);
  CHECK(abs(p.coeffs.at(0, 0)) < tiny);
  CHECK(abs(p.coeffs.at(1, 0) - XScalar(1L, 30)) < tiny);
  CHECK(abs(p.coeffs.at(0, 1) - XScalar(1L, 30)) < tiny);
  CHECK(abs(p.coeffs.at(1, 1)) < tiny);
}

TEST_CASE("column-first and row-first constructions agree") {
  // Swapping the variable roles must give the transposed coefficient
  // matrix.  On a 16x16 grid the Newton->monomial conversion amplifies
  // roundoff by ~1e12, so coefficients agree to ~1e-17 while the
  // polynomials themselves (where the amplification cancels) agree to
  // full working precision.
  const NodeSet xs = chebyshev_nodes(16, -3.0, -1.0, 30);
  const NodeSet ys = chebyshev_nodes(16, -1.0, 1.0, 30);
  const XMatrix g = expdd_grid(xs, ys, 30);
  const BivariatePoly p = bivariate_interpolation(g, xs, ys);

  XMatrix gt(16, 16, 30);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) gt.at(j, i) = g.at(i, j);
  const BivariatePoly q = bivariate_interpolation(gt, ys, xs);

  XScalar scale(30), worst(30);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      const XScalar e = abs(p.coeffs.at(i, j) - q.coeffs.at(j, i));
      if (e > worst) worst = e;
      if (abs(p.coeffs.at(i, j)) > scale) scale = abs(p.coeffs.at(i, j));
    }
  CHECK(worst <= scale * XScalar::parse("1e-17", 30));

  std::uint64_t s = 77;
  XScalar eworst(30);
  for (int t = 0; t < 40; ++t) {
    const XScalar x = XScalar(-3.0 + 2.0 * unit(s), 30);
    const XScalar y = XScalar(-1.0 + 2.0 * unit(s), 30);
    const XScalar e = abs(p.eval(x, y) - q.eval(y, x));
    if (e > eworst) eworst = e;
  }
  CHECK(eworst <= XScalar::parse("1e-24", 30));

  // on a small grid the amplification is negligible and even the
  // coefficients match tightly
  const NodeSet xs4 = chebyshev_nodes(4, -3.0, -1.0, 30);
  const NodeSet ys4 = chebyshev_nodes(4, -1.0, 1.0, 30);
  const XMatrix g4 = expdd_grid(xs4, ys4, 30);
  XMatrix g4t(4, 4, 30);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g4t.at(j, i) = g4.at(i, j);
  const BivariatePoly p4 = bivariate_interpolation(g4, xs4, ys4);
  const BivariatePoly q4 = bivariate_interpolation(g4t, ys4, xs4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(abs(p4.coeffs.at(i, j) - q4.coeffs.at(j, i)) <= XScalar::parse("1e-26", 30));
}

TEST_CASE("bivariate coefficient error at 30 digits stays under 3e-16") {
  // digit budget: 30-digit nodes leave at most ~1e-16 of absolute error
  // in the exp divided-difference coefficients on [-3,-1] x [-1,1];
  // recomputation at 60 digits serves as reference
  const NodeSet xs60 = chebyshev_nodes(16, -3.0, -1.0, 60);
  const NodeSet ys60 = chebyshev_nodes(16, -1.0, 1.0, 60);
  const BivariatePoly ref = bivariate_interpolation(expdd_grid(xs60, ys60, 60), xs60, ys60);

  const NodeSet xs = chebyshev_nodes(16, -3.0, -1.0, 30);
  const NodeSet ys = chebyshev_nodes(16, -1.0, 1.0, 30);
  const BivariatePoly p = bivariate_interpolation(expdd_grid(xs, ys, 30), xs, ys);

  XScalar worst(60);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      const XScalar e = abs(p.coeffs.at(i, j).with_digits(60) - ref.coeffs.at(i, j));
      if (e > worst) worst = e;
    }
  CHECK(worst.to_double() <= 3e-16);
}

TEST_CASE("bivariate grid shape mismatch is rejected") {
  const NodeSet xs = chebyshev_nodes(3, -1.0, 1.0, 30);
  const NodeSet ys = chebyshev_nodes(4, -1.0, 1.0, 30);
  CHECK_THROWS_AS(bivariate_interpolation(XMatrix(3, 3, 30), xs, ys), std::invalid_argument);
}
