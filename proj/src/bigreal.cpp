#include "cotes/bigreal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace cotes {

namespace {

constexpr double kBitsPerDigit = 3.321928094887362;  // log2(10)
constexpr mpfr_rnd_t kRound = MPFR_RNDN;

mpfr_prec_t wider(const BigReal& a, const BigReal& b) {
  return std::max(a.bits(), b.bits());
}

template <typename Fn>
BigReal unary(const BigReal& x, Fn fn) {
  BigReal r = BigReal::with_bits(0, x.bits());
  fn(r.get(), x.get(), kRound);
  return r;
}

}  // namespace

mpfr_prec_t digits_to_bits(int digits) {
  if (digits < 1) throw std::invalid_argument("precision must be at least one digit");
  return static_cast<mpfr_prec_t>(std::ceil(digits * kBitsPerDigit)) + 2;
}

int bits_to_digits(mpfr_prec_t bits) {
  return std::max(1, static_cast<int>(std::floor((bits - 2) / kBitsPerDigit + 1e-9)));
}

BigReal::BigReal() : BigReal(static_cast<mpfr_prec_t>(MPFR_PREC_MIN)) {
  mpfr_set_zero(value_, 1);
}

BigReal::BigReal(mpfr_prec_t bits) { mpfr_init2(value_, bits); }

BigReal::BigReal(long value, int digits) : BigReal(digits_to_bits(digits)) {
  mpfr_set_si(value_, value, kRound);
}

BigReal::BigReal(std::string_view decimal, int digits) : BigReal(digits_to_bits(digits)) {
  std::string text(decimal);
  if (text.empty() || mpfr_set_str(value_, text.c_str(), 10, kRound) != 0) {
    throw std::invalid_argument("not a decimal number: '" + text + "'");
  }
}

BigReal BigReal::from_double(double value, int digits) {
  BigReal r(digits_to_bits(digits));
  mpfr_set_d(r.value_, value, kRound);
  return r;
}

BigReal BigReal::with_bits(long value, mpfr_prec_t bits) {
  BigReal r(bits);
  mpfr_set_si(r.value_, value, kRound);
  return r;
}

BigReal::BigReal(const BigReal& other) : BigReal(other.bits()) {
  mpfr_set(value_, other.value_, kRound);
}

BigReal::BigReal(BigReal&& other) noexcept : BigReal(static_cast<mpfr_prec_t>(MPFR_PREC_MIN)) {
  mpfr_swap(value_, other.value_);
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.bits());
    mpfr_set(value_, other.value_, kRound);
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigReal::~BigReal() { mpfr_clear(value_); }

BigReal BigReal::rounded_to(int digits) const {
  BigReal r(digits_to_bits(digits));
  mpfr_set(r.value_, value_, kRound);
  return r;
}

std::string BigReal::to_string(int significant) const {
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return sign() < 0 ? "-inf" : "inf";
  const int n = significant > 0 ? significant : digits();
  char* buffer = nullptr;
  if (mpfr_asprintf(&buffer, "%.*Rg", n, value_) < 0 || buffer == nullptr) {
    throw std::runtime_error("mpfr_asprintf failed");
  }
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

BigReal BigReal::operator-() const { return unary(*this, mpfr_neg); }

BigReal& BigReal::operator+=(const BigReal& rhs) { return *this = *this + rhs; }
BigReal& BigReal::operator-=(const BigReal& rhs) { return *this = *this - rhs; }
BigReal& BigReal::operator*=(const BigReal& rhs) { return *this = *this * rhs; }
BigReal& BigReal::operator/=(const BigReal& rhs) { return *this = *this / rhs; }

BigReal operator+(const BigReal& a, const BigReal& b) {
  BigReal r(wider(a, b));
  mpfr_add(r.value_, a.value_, b.value_, kRound);
  return r;
}
BigReal operator-(const BigReal& a, const BigReal& b) {
  BigReal r(wider(a, b));
  mpfr_sub(r.value_, a.value_, b.value_, kRound);
  return r;
}
BigReal operator*(const BigReal& a, const BigReal& b) {
  BigReal r(wider(a, b));
  mpfr_mul(r.value_, a.value_, b.value_, kRound);
  return r;
}
BigReal operator/(const BigReal& a, const BigReal& b) {
  BigReal r(wider(a, b));
  mpfr_div(r.value_, a.value_, b.value_, kRound);
  return r;
}

BigReal operator+(const BigReal& a, long b) {
  BigReal r(a.bits());
  mpfr_add_si(r.value_, a.value_, b, kRound);
  return r;
}
BigReal operator-(const BigReal& a, long b) {
  BigReal r(a.bits());
  mpfr_sub_si(r.value_, a.value_, b, kRound);
  return r;
}
BigReal operator-(long a, const BigReal& b) {
  BigReal r(b.bits());
  mpfr_si_sub(r.value_, a, b.value_, kRound);
  return r;
}
BigReal operator*(const BigReal& a, long b) {
  BigReal r(a.bits());
  mpfr_mul_si(r.value_, a.value_, b, kRound);
  return r;
}
BigReal operator/(const BigReal& a, long b) {
  BigReal r(a.bits());
  mpfr_div_si(r.value_, a.value_, b, kRound);
  return r;
}
BigReal operator/(long a, const BigReal& b) {
  BigReal r(b.bits());
  mpfr_si_div(r.value_, a, b.value_, kRound);
  return r;
}

bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

bool operator==(const BigReal& a, long b) { return !a.is_nan() && mpfr_cmp_si(a.value_, b) == 0; }

std::partial_ordering operator<=>(const BigReal& a, long b) {
  if (a.is_nan()) return std::partial_ordering::unordered;
  const int c = mpfr_cmp_si(a.value_, b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::ostream& operator<<(std::ostream& os, const BigReal& x) { return os << x.to_string(); }

BigReal abs(const BigReal& x) { return unary(x, mpfr_abs); }
BigReal sqrt(const BigReal& x) { return unary(x, mpfr_sqrt); }
BigReal cbrt(const BigReal& x) { return unary(x, mpfr_cbrt); }
BigReal exp(const BigReal& x) { return unary(x, mpfr_exp); }
BigReal log(const BigReal& x) { return unary(x, mpfr_log); }
BigReal log10(const BigReal& x) { return unary(x, mpfr_log10); }
BigReal sin(const BigReal& x) { return unary(x, mpfr_sin); }
BigReal cos(const BigReal& x) { return unary(x, mpfr_cos); }
BigReal tan(const BigReal& x) { return unary(x, mpfr_tan); }
BigReal tanh(const BigReal& x) { return unary(x, mpfr_tanh); }
BigReal sech(const BigReal& x) { return unary(x, mpfr_sech); }

BigReal pow(const BigReal& base, const BigReal& exponent) {
  BigReal r = BigReal::with_bits(0, wider(base, exponent));
  mpfr_pow(r.get(), base.get(), exponent.get(), kRound);
  return r;
}

BigReal pow(const BigReal& base, long exponent) {
  BigReal r = BigReal::with_bits(0, base.bits());
  mpfr_pow_si(r.get(), base.get(), exponent, kRound);
  return r;
}

BigReal max(const BigReal& a, const BigReal& b) { return a < b ? b : a; }

BigReal pi(int digits) {
  BigReal r(0, digits);
  mpfr_const_pi(r.get(), kRound);
  return r;
}

BigReal euler_e(int digits) {
  BigReal one(1, digits);
  return exp(one);
}

BigReal power_of_ten(long exponent, int digits) {
  BigReal r(10, digits);
  return pow(r, exponent);
}

}  // namespace cotes
