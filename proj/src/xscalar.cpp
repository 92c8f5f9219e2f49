#include "realfunm/xscalar.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace realfunm {

namespace {

// log2(10) rounded up a little; 8 guard bits keep decimal rounding of
// results below half a unit in the last decimal digit.
mpfr_prec_t bits_for(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873626)) + 8;
}

int checked_digits(int digits) {
  if (digits < XScalar::min_digits)
    throw std::invalid_argument("XScalar: precision below 16 decimal digits");
  if (digits > 100000)
    throw std::invalid_argument("XScalar: unreasonable precision request");
  return digits;
}

}  // namespace

XScalar::XScalar(int digits) : digits_(checked_digits(digits)) {
  mpfr_init2(v_, bits_for(digits_));
  mpfr_set_zero(v_, 1);
}

XScalar::XScalar(double value, int digits) : digits_(checked_digits(digits)) {
  if (!std::isfinite(value))
    throw std::invalid_argument("XScalar: non-finite double");
  mpfr_init2(v_, bits_for(digits_));
  mpfr_set_d(v_, value, MPFR_RNDN);  // exact: precision always exceeds 53 bits
}

XScalar::XScalar(long value, int digits) : digits_(checked_digits(digits)) {
  mpfr_init2(v_, bits_for(digits_));
  mpfr_set_si(v_, value, MPFR_RNDN);
}

XScalar::XScalar(const XScalar& other) : digits_(other.digits_) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

XScalar::XScalar(XScalar&& other) noexcept : digits_(other.digits_) {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

XScalar& XScalar::operator=(const XScalar& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
    digits_ = other.digits_;
  }
  return *this;
}

XScalar& XScalar::operator=(XScalar&& other) noexcept {
  if (this != &other) {
    mpfr_swap(v_, other.v_);
    digits_ = other.digits_;
  }
  return *this;
}

XScalar::~XScalar() { mpfr_clear(v_); }

XScalar XScalar::parse(std::string_view text, int digits) {
  std::string buf(text);
  size_t b = 0, e = buf.size();
  while (b < e && std::isspace(static_cast<unsigned char>(buf[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(buf[e - 1]))) --e;
  if (b == e) throw std::invalid_argument("XScalar::parse: empty string");
  std::string body = buf.substr(b, e - b);

  XScalar r(digits);
  char* end = nullptr;
  mpfr_strtofr(r.v_, body.c_str(), &end, 10, MPFR_RNDN);
  if (end != body.c_str() + body.size())
    throw std::invalid_argument("XScalar::parse: bad number \"" + body + "\"");
  return r;
}

XScalar XScalar::pi(int digits) {
  XScalar r(digits);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

namespace {

// Decimal string of `value` with keep_digits significant digits, rounded
// in the requested direction, reparsed at the target precision.
XScalar directed(double value, int keep_digits, int digits, mpfr_rnd_t dir) {
  if (keep_digits < 1 || keep_digits > 30)
    throw std::invalid_argument("XScalar: directed rounding digit count");
  if (!std::isfinite(value))
    throw std::invalid_argument("XScalar: non-finite double");
  if (value == 0.0) return XScalar(digits);

  mpfr_t tmp;
  mpfr_init2(tmp, 64);
  mpfr_set_d(tmp, value, MPFR_RNDN);
  mpfr_exp_t dec_exp = 0;
  char* s = mpfr_get_str(nullptr, &dec_exp, 10, static_cast<size_t>(keep_digits), tmp, dir);
  mpfr_clear(tmp);
  if (s == nullptr) throw std::runtime_error("XScalar: mpfr_get_str failed");
  std::string mant(s);
  mpfr_free_str(s);

  // mant is the digit block (with optional leading '-'); the value is
  // 0.mant * 10^dec_exp.
  std::string text;
  if (!mant.empty() && mant[0] == '-') {
    text = "-0.";
    text += mant.substr(1);
  } else {
    text = "0.";
    text += mant;
  }
  text += "e" + std::to_string(static_cast<long>(dec_exp));
  return XScalar::parse(text, digits);
}

}  // namespace

XScalar XScalar::rounded_down(double value, int keep_digits, int digits) {
  return directed(value, keep_digits, digits, MPFR_RNDD);
}

XScalar XScalar::rounded_up(double value, int keep_digits, int digits) {
  return directed(value, keep_digits, digits, MPFR_RNDU);
}

XScalar XScalar::with_digits(int digits) const {
  XScalar r(digits);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

double XScalar::to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

namespace {

// n = 0 asks mpfr_get_str for the shortest digit string that reparses
// to the identical value.
std::string format_scientific(mpfr_srcptr v, size_t n) {
  if (mpfr_zero_p(v)) return "0";
  mpfr_exp_t dec_exp = 0;
  char* s = mpfr_get_str(nullptr, &dec_exp, 10, n, v, MPFR_RNDN);
  if (s == nullptr) throw std::runtime_error("XScalar: mpfr_get_str failed");
  std::string mant(s);
  mpfr_free_str(s);

  std::string out;
  size_t first = 0;
  if (mant[0] == '-') {
    out += '-';
    first = 1;
  }
  out += mant[first];
  if (mant.size() > first + 1) {
    out += '.';
    out += mant.substr(first + 1);
  }
  long e10 = static_cast<long>(dec_exp) - 1;
  out += 'e';
  if (e10 >= 0) out += '+';
  out += std::to_string(e10);
  return out;
}

}  // namespace

std::string XScalar::str() const { return format_scientific(v_, 0); }

std::string XScalar::str(int digits) const {
  if (digits < 1 || digits > 100000)
    throw std::invalid_argument("XScalar::str: digit count out of range");
  return format_scientific(v_, digits < 2 ? 2u : static_cast<size_t>(digits));
}

bool XScalar::is_zero() const { return mpfr_zero_p(v_) != 0; }

int XScalar::sign() const {
  int s = mpfr_sgn(v_);
  return (s > 0) - (s < 0);
}

XScalar XScalar::ulp() const {
  XScalar r(digits_);
  if (mpfr_zero_p(v_)) {
    mpfr_set_ui_2exp(r.v_, 1, -bits_for(digits_), MPFR_RNDN);
    return r;
  }
  mpfr_exp_t dec_exp = 0;
  char* s = mpfr_get_str(nullptr, &dec_exp, 10, 2, v_, MPFR_RNDN);
  mpfr_free_str(s);
  // value = 0.dd * 10^dec_exp, so the last retained digit has place
  // value 10^(dec_exp - digits).
  mpfr_set_si(r.v_, 10, MPFR_RNDN);
  mpfr_pow_si(r.v_, r.v_, static_cast<long>(dec_exp) - digits_, MPFR_RNDN);
  return r;
}

XScalar XScalar::operator-() const {
  XScalar r(*this);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

#define REALFUNM_XS_BINOP(op, fn)                                \
  XScalar operator op(const XScalar& a, const XScalar& b) {      \
    XScalar r(a.digits_ > b.digits_ ? a.digits_ : b.digits_);    \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                             \
    return r;                                                    \
  }

REALFUNM_XS_BINOP(+, mpfr_add)
REALFUNM_XS_BINOP(-, mpfr_sub)
REALFUNM_XS_BINOP(*, mpfr_mul)
#undef REALFUNM_XS_BINOP

XScalar operator/(const XScalar& a, const XScalar& b) {
  if (b.is_zero()) throw std::domain_error("XScalar: division by zero");
  XScalar r(a.digits_ > b.digits_ ? a.digits_ : b.digits_);
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

XScalar operator+(const XScalar& a, long b) {
  XScalar r(a.digits_);
  mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}

XScalar operator-(const XScalar& a, long b) {
  XScalar r(a.digits_);
  mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}

XScalar operator*(const XScalar& a, long b) {
  XScalar r(a.digits_);
  mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}

XScalar operator/(const XScalar& a, long b) {
  if (b == 0) throw std::domain_error("XScalar: division by zero");
  XScalar r(a.digits_);
  mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}

bool operator==(const XScalar& a, const XScalar& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

std::strong_ordering operator<=>(const XScalar& a, const XScalar& b) {
  int c = mpfr_cmp(a.v_, b.v_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

XScalar sqrt(const XScalar& a) {
  if (a.sign() < 0) throw std::domain_error("XScalar: sqrt of negative value");
  XScalar r(a.digits_);
  mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
  return r;
}

XScalar abs(const XScalar& a) {
  XScalar r(a);
  mpfr_abs(r.v_, r.v_, MPFR_RNDN);
  return r;
}

XScalar cos(const XScalar& a) {
  XScalar r(a.digits_);
  mpfr_cos(r.v_, a.v_, MPFR_RNDN);
  return r;
}

XScalar sin(const XScalar& a) {
  XScalar r(a.digits_);
  mpfr_sin(r.v_, a.v_, MPFR_RNDN);
  return r;
}

XScalar exp(const XScalar& a) {
  XScalar r(a.digits_);
  mpfr_exp(r.v_, a.v_, MPFR_RNDN);
  return r;
}

}  // namespace realfunm
