#include "hillshare/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace hillshare {
namespace {

mpz_class to_mpz(std::int64_t v) { return mpz_class(static_cast<long>(v)); }

std::int64_t narrow(const mpz_class& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits: " + z.get_str());
  return static_cast<std::int64_t>(z.get_si());
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

[[noreturn]] void bad_number(std::string_view text) {
  throw std::invalid_argument("not a number: '" + std::string(text) + "'");
}

// Unsigned decimal with optional fraction part and exponent.
mpq_class parse_decimal(std::string_view text, std::string_view original) {
  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    std::string_view exp_part = text.substr(e + 1);
    bool negative = false;
    if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
      negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) bad_number(original);
    exponent = std::stol(std::string(exp_part));
    if (negative) exponent = -exponent;
  }
  std::string_view int_part = mantissa;
  std::string_view frac_part;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    int_part = mantissa.substr(0, dot);
    frac_part = mantissa.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) bad_number(original);
  if (!int_part.empty() && !all_digits(int_part)) bad_number(original);
  if (!frac_part.empty() && !all_digits(frac_part)) bad_number(original);

  std::string digits = std::string(int_part) + std::string(frac_part);
  mpz_class num(digits.empty() ? std::string("0") : digits, 10);
  long scale = static_cast<long>(frac_part.size()) - exponent;
  mpq_class q;
  if (scale >= 0) {
    q = mpq_class(num, pow10(static_cast<unsigned long>(scale)));
  } else {
    q = mpq_class(num * pow10(static_cast<unsigned long>(-scale)));
  }
  q.canonicalize();
  return q;
}

}  // namespace

Rational::Rational(std::int64_t value) : value_(to_mpz(value)) {}

Rational::Rational(std::int64_t numerator, std::int64_t denominator)
    : Rational(to_mpz(numerator), to_mpz(denominator)) {}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational::Rational(const mpz_class& numerator, const mpz_class& denominator) {
  if (denominator == 0) throw std::domain_error("zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const std::string_view original = text;
  text = trim(text);
  bool negative = false;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) bad_number(original);

  mpq_class q;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view p = trim(text.substr(0, slash));
    std::string_view d = trim(text.substr(slash + 1));
    if (!all_digits(p) || !all_digits(d)) bad_number(original);
    mpz_class den(std::string(d), 10);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(original) + "'");
    q = mpq_class(mpz_class(std::string(p), 10), den);
    q.canonicalize();
  } else {
    q = parse_decimal(text, original);
  }
  if (negative) q = -q;
  return Rational(std::move(q));
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite double");
  mpq_class q(value);  // exact conversion
  return Rational(std::move(q));
}

mpz_class Rational::floor() const {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return r;
}

mpz_class Rational::ceil() const {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return r;
}

std::int64_t Rational::floor_int() const { return narrow(floor()); }
std::int64_t Rational::ceil_int() const { return narrow(ceil()); }

std::string Rational::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::decimal(int places) const {
  if (places < 0) places = 0;
  const mpz_class scale = pow10(static_cast<unsigned long>(places));
  mpz_class num = abs(value_.get_num()) * scale;
  const mpz_class& den = value_.get_den();
  // round half away from zero: floor((2*num + den) / (2*den))
  mpz_class scaled = (2 * num + den) / (2 * den);
  std::string digits = scaled.get_str();
  if (static_cast<int>(digits.size()) <= places) {
    digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
  }
  std::string int_part = digits.substr(0, digits.size() - static_cast<std::size_t>(places));
  std::string frac_part = digits.substr(digits.size() - static_cast<std::size_t>(places));
  while (!frac_part.empty() && frac_part.back() == '0') frac_part.pop_back();
  std::string out;
  if (sign() < 0 && scaled != 0) out.push_back('-');
  out += int_part;
  if (!frac_part.empty()) out += "." + frac_part;
  return out;
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}
Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}
Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}
Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("division by zero");
  value_ /= rhs.value_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

std::string fraction_and_decimal(const Rational& r) { return r.str() + " (" + r.decimal(12) + ")"; }

}  // namespace hillshare
