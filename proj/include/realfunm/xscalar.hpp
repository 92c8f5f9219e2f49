#pragma once

#include <mpfr.h>

#include <compare>
#include <string>
#include <string_view>

namespace realfunm {

// Extended-precision real scalar. Precision is a count of significant
// decimal digits (>= 16); storage is binary with enough bits that every
// operation is correct to well under one unit in the last retained
// decimal digit. Binary operations carry the wider operand's precision;
// narrowing only happens through an explicit with_digits().
//
// Values are immutable apart from assignment, and operations allocate
// fresh results, so distinct values may be used from concurrent threads.
class XScalar {
 public:
  static constexpr int min_digits = 16;

  XScalar() : XScalar(min_digits) {}
  explicit XScalar(int digits);  // zero at the given precision
  XScalar(double value, int digits);
  XScalar(long value, int digits);
  XScalar(const XScalar& other);
  XScalar(XScalar&& other) noexcept;
  XScalar& operator=(const XScalar& other);
  XScalar& operator=(XScalar&& other) noexcept;
  ~XScalar();

  // Decimal parse; accepts optional sign, point and exponent, rejects
  // anything with trailing junk.
  static XScalar parse(std::string_view text, int digits);
  static XScalar pi(int digits);

  // Round `value` in its keep_digits-th significant decimal digit toward
  // -inf / +inf and carry the result at `digits` digits. Used to turn
  // block spectral bounds into guaranteed enclosures.
  static XScalar rounded_down(double value, int keep_digits, int digits);
  static XScalar rounded_up(double value, int keep_digits, int digits);

  int digits() const { return digits_; }
  XScalar with_digits(int digits) const;
  double to_double() const;

  // Scientific decimal form, e.g. "-1.2345000e-6". str(digits) prints
  // the given number of significant digits; str() prints the shortest
  // string for which parse(str()) round-trips to the identical value.
  std::string str() const;
  std::string str(int digits) const;

  bool is_zero() const;
  int sign() const;  // -1, 0, +1

  // One unit in the last retained decimal digit (of a nonzero value).
  XScalar ulp() const;

  XScalar operator-() const;
  friend XScalar operator+(const XScalar& a, const XScalar& b);
  friend XScalar operator-(const XScalar& a, const XScalar& b);
  friend XScalar operator*(const XScalar& a, const XScalar& b);
  friend XScalar operator/(const XScalar& a, const XScalar& b);
  friend XScalar operator+(const XScalar& a, long b);
  friend XScalar operator-(const XScalar& a, long b);
  friend XScalar operator*(const XScalar& a, long b);
  friend XScalar operator/(const XScalar& a, long b);

  friend bool operator==(const XScalar& a, const XScalar& b);
  friend std::strong_ordering operator<=>(const XScalar& a, const XScalar& b);

  friend XScalar sqrt(const XScalar& a);  // domain error on negative
  friend XScalar abs(const XScalar& a);
  friend XScalar cos(const XScalar& a);
  friend XScalar sin(const XScalar& a);
  friend XScalar exp(const XScalar& a);

 private:
  mpfr_t v_;
  int digits_;
};

}  // namespace realfunm
