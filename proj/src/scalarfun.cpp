#include "realfunm/scalarfun.hpp"

#include <charconv>
#include <stdexcept>

namespace realfunm {

void AnalyticFunction::check_order(int order) {
  if (order < 0 || order > max_deriv_order)
    throw std::domain_error("AnalyticFunction: derivative order unsupported");
}

namespace {

class ExpFn final : public AnalyticFunction {
 public:
  std::string name() const override { return "exp"; }
  XScalar eval(const XScalar& x) const override { return exp(x); }
  XScalar deriv(const XScalar& x, int order) const override {
    check_order(order);
    return exp(x);
  }
};

class CosFn final : public AnalyticFunction {
 public:
  std::string name() const override { return "cos"; }
  XScalar eval(const XScalar& x) const override { return cos(x); }
  XScalar deriv(const XScalar& x, int order) const override {
    check_order(order);
    switch (order % 4) {
      case 0: return cos(x);
      case 1: return -sin(x);
      case 2: return -cos(x);
      default: return sin(x);
    }
  }
};

class SinFn final : public AnalyticFunction {
 public:
  std::string name() const override { return "sin"; }
  XScalar eval(const XScalar& x) const override { return sin(x); }
  XScalar deriv(const XScalar& x, int order) const override {
    check_order(order);
    switch (order % 4) {
      case 0: return sin(x);
      case 1: return cos(x);
      case 2: return -sin(x);
      default: return -cos(x);
    }
  }
};

class IdFn final : public AnalyticFunction {
 public:
  std::string name() const override { return "identity"; }
  XScalar eval(const XScalar& x) const override { return x; }
  XScalar deriv(const XScalar& x, int order) const override {
    check_order(order);
    if (order == 0) return x;
    return XScalar(order == 1 ? 1L : 0L, x.digits());
  }
};

// f(x) = exp(t*x); the scale parameter is a double and is widened
// exactly to the argument precision on every call.
class ExpScaledFn final : public AnalyticFunction {
 public:
  explicit ExpScaledFn(double t) : t_(t) {}
  std::string name() const override {
    XScalar t(t_, XScalar::min_digits + 1);
    return "exp_t:" + t.str(17);
  }
  XScalar eval(const XScalar& x) const override { return exp(x * XScalar(t_, x.digits())); }
  XScalar deriv(const XScalar& x, int order) const override {
    check_order(order);
    const XScalar t(t_, x.digits());
    XScalar r = exp(x * t);
    for (int k = 0; k < order; ++k) r = r * t;
    return r;
  }

 private:
  double t_;
};

}  // namespace

std::unique_ptr<AnalyticFunction> catalog_get(std::string_view name) {
  if (name == "exp") return std::make_unique<ExpFn>();
  if (name == "cos") return std::make_unique<CosFn>();
  if (name == "sin") return std::make_unique<SinFn>();
  if (name == "identity" || name == "id") return std::make_unique<IdFn>();
  constexpr std::string_view prefix = "exp_t:";
  if (name.substr(0, prefix.size()) == prefix) {
    std::string_view arg = name.substr(prefix.size());
    double t = 0.0;
    auto [p, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), t);
    if (ec != std::errc() || p != arg.data() + arg.size())
      throw std::invalid_argument("catalog_get: bad exp_t parameter \"" + std::string(arg) + "\"");
    return std::make_unique<ExpScaledFn>(t);
  }
  throw std::invalid_argument("catalog_get: unknown function \"" + std::string(name) + "\"");
}

std::vector<std::string> catalog_names() { return {"exp", "cos", "sin", "identity", "exp_t:<t>"}; }

MonomialPoly taylor_coeffs(const AnalyticFunction& f, const XScalar& center, int degree) {
  if (degree < 0 || degree > AnalyticFunction::max_deriv_order)
    throw std::domain_error("taylor_coeffs: degree out of range");
  MonomialPoly p;
  p.coeffs.reserve(degree + 1);
  p.coeffs.push_back(f.eval(center));
  XScalar fact(1L, center.digits());
  for (int i = 1; i <= degree; ++i) {
    fact = fact * static_cast<long>(i);
    p.coeffs.push_back(f.deriv(center, i) / fact);
  }
  return p;
}

}  // namespace realfunm
