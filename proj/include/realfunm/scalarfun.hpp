#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "realfunm/interp.hpp"
#include "realfunm/xscalar.hpp"

namespace realfunm {

// A scalar analytic function with derivatives, evaluated at whatever
// precision the argument carries. Derivative orders are supported up to
// order 32; user-defined functions enter through this same interface.
class AnalyticFunction {
 public:
  static constexpr int max_deriv_order = 32;

  virtual ~AnalyticFunction() = default;
  virtual std::string name() const = 0;
  virtual XScalar eval(const XScalar& x) const = 0;
  // order >= 1; order 0 is eval.
  virtual XScalar deriv(const XScalar& x, int order) const = 0;

 protected:
  static void check_order(int order);
};

// Builds a catalog entry: "exp", "cos", "sin", "identity", or "exp_t:<t>"
// with a decimal parameter (e.g. "exp_t:2.5"). Unknown names throw.
std::unique_ptr<AnalyticFunction> catalog_get(std::string_view name);
std::vector<std::string> catalog_names();

// Taylor coefficients f^(i)(center)/i! for i = 0..degree, degree <= 32.
MonomialPoly taylor_coeffs(const AnalyticFunction& f, const XScalar& center, int degree);

}  // namespace realfunm
