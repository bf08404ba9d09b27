#pragma once

#include <mpfr.h>

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

namespace cotes {

/// Number of binary digits needed to hold `digits` decimal digits.
mpfr_prec_t digits_to_bits(int digits);

/// Decimal digits representable with `bits` binary digits (rounded down).
int bits_to_digits(mpfr_prec_t bits);

/// Arbitrary-precision real scalar backed by an MPFR value.
///
/// Every value carries its own binary precision. Binary operations produce a
/// result at the larger precision of the two operands and always round to
/// nearest, so identical inputs give bit-identical outputs.
class BigReal {
 public:
  /// Zero at the minimal precision. Intended as a placeholder only.
  BigReal();
  BigReal(long value, int digits);
  /// Parses a decimal literal such as "1.1", "-2.5e-3". Throws
  /// std::invalid_argument when the whole string is not a number.
  BigReal(std::string_view decimal, int digits);

  static BigReal from_double(double value, int digits);
  static BigReal with_bits(long value, mpfr_prec_t bits);

  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  int digits() const { return bits_to_digits(bits()); }
  mpfr_prec_t bits() const { return mpfr_get_prec(value_); }

  /// Copy rounded (or widened) to the given decimal precision.
  BigReal rounded_to(int digits) const;

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  bool is_nan() const { return mpfr_nan_p(value_) != 0; }
  bool is_integer() const { return mpfr_integer_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Shortest `%g`-style rendering with `significant` digits; 0 means the
  /// value's own decimal precision.
  std::string to_string(int significant = 0) const;

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  BigReal operator-() const;
  BigReal& operator+=(const BigReal& rhs);
  BigReal& operator-=(const BigReal& rhs);
  BigReal& operator*=(const BigReal& rhs);
  BigReal& operator/=(const BigReal& rhs);

  friend BigReal operator+(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, const BigReal& b);
  friend BigReal operator/(const BigReal& a, const BigReal& b);

  friend BigReal operator+(const BigReal& a, long b);
  friend BigReal operator-(const BigReal& a, long b);
  friend BigReal operator*(const BigReal& a, long b);
  friend BigReal operator/(const BigReal& a, long b);
  friend BigReal operator*(long a, const BigReal& b) { return b * a; }
  friend BigReal operator+(long a, const BigReal& b) { return b + a; }
  friend BigReal operator-(long a, const BigReal& b);
  friend BigReal operator/(long a, const BigReal& b);

  friend bool operator==(const BigReal& a, const BigReal& b);
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b);
  friend bool operator==(const BigReal& a, long b);
  friend std::partial_ordering operator<=>(const BigReal& a, long b);

 private:
  explicit BigReal(mpfr_prec_t bits);
  mpfr_t value_;
};

std::ostream& operator<<(std::ostream& os, const BigReal& x);

BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal cbrt(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal log(const BigReal& x);
BigReal log10(const BigReal& x);
BigReal sin(const BigReal& x);
BigReal cos(const BigReal& x);
BigReal tan(const BigReal& x);
BigReal tanh(const BigReal& x);
BigReal sech(const BigReal& x);
BigReal pow(const BigReal& base, const BigReal& exponent);
BigReal pow(const BigReal& base, long exponent);
BigReal max(const BigReal& a, const BigReal& b);

BigReal pi(int digits);
BigReal euler_e(int digits);
/// 10^exponent at the given precision.
BigReal power_of_ten(long exponent, int digits);

}  // namespace cotes
