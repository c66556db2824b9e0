#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace hillshare {

/// Exact fraction of arbitrary-precision integers, always in lowest terms with
/// a positive denominator. Every share value, boundary test and bundle load in
/// the library is a Rational; doubles only appear at output time.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t numerator, std::int64_t denominator);
  explicit Rational(mpq_class value);
  Rational(const mpz_class& numerator, const mpz_class& denominator);

  /// Accepts integers ("3"), fractions ("7/20"), and decimals with an optional
  /// exponent ("0.35", "1.5e-2"). Decimals are read exactly: "0.35" is 7/20.
  static Rational parse(std::string_view text);

  /// Exact value of a finite double (a dyadic rational).
  static Rational from_double(double value);

  const mpq_class& raw() const { return value_; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  mpz_class floor() const;
  mpz_class ceil() const;
  /// floor()/ceil() narrowed to int64; throws std::overflow_error if it does not fit.
  std::int64_t floor_int() const;
  std::int64_t ceil_int() const;

  double to_double() const { return value_.get_d(); }

  /// "p/q", or "p" when the denominator is 1.
  std::string str() const;
  /// Decimal rounded half away from zero to `places` digits, trailing zeros trimmed.
  std::string decimal(int places = 12) const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  friend Rational operator-(const Rational& x) { return Rational(mpq_class(-x.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  mpq_class value_{0};
};

/// Fraction string followed by the rounded decimal, e.g. "2/3 (0.666666666667)".
std::string fraction_and_decimal(const Rational& r);

}  // namespace hillshare
