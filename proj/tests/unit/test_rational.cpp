#include <doctest.h>

#include "hillshare/rational.hpp"

using hillshare::Rational;

TEST_SUITE("rational") {

TEST_CASE("parse integers, fractions and decimals exactly") {
  CHECK(Rational::parse("3") == Rational(3));
  CHECK(Rational::parse("7/20") == Rational(7, 20));
  CHECK(Rational::parse(" 14/40 ") == Rational(7, 20));
  CHECK(Rational::parse("0.35") == Rational(7, 20));
  CHECK(Rational::parse(".5") == Rational(1, 2));
  CHECK(Rational::parse("1.5e-2") == Rational(3, 200));
  CHECK(Rational::parse("2E3") == Rational(2000));
  CHECK(Rational::parse("-1/3") == Rational(-1, 3));
  CHECK(Rational::parse("+4") == Rational(4));
}

TEST_CASE("parse rejects junk") {
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/2/3"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("0.3x"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1e"), std::invalid_argument);
}

TEST_CASE("lowest terms and sign on the numerator") {
  Rational r(6, -8);
  CHECK(r.str() == "-3/4");
  CHECK(r.denominator() == 4);
  CHECK(Rational(10, 5).str() == "2");
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("arithmetic and ordering") {
  Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == b);
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(-a == Rational(-1, 3));
  CHECK(b < a);
  CHECK(a <= a);
  CHECK_THROWS_AS(a / Rational(0), std::domain_error);
}

TEST_CASE("floor and ceil") {
  CHECK(Rational(7, 2).floor_int() == 3);
  CHECK(Rational(7, 2).ceil_int() == 4);
  CHECK(Rational(-7, 2).floor_int() == -4);
  CHECK(Rational(-7, 2).ceil_int() == -3);
  CHECK(Rational(4).ceil_int() == 4);
  Rational huge(mpz_class("100000000000000000000000"), mpz_class(1));
  CHECK_THROWS_AS(huge.floor_int(), std::overflow_error);
}

TEST_CASE("decimal rendering rounds half away from zero and trims") {
  CHECK(Rational(2, 3).decimal() == "0.666666666667");
  CHECK(Rational(1, 2).decimal() == "0.5");
  CHECK(Rational(3).decimal() == "3");
  CHECK(Rational(-2, 3).decimal(3) == "-0.667");
  CHECK(Rational(1, 8).decimal(2) == "0.13");
  CHECK(Rational(-1, 1000).decimal(2) == "0");
  CHECK(hillshare::fraction_and_decimal(Rational(7, 15)) == "7/15 (0.466666666667)");
}

TEST_CASE("doubles convert exactly") {
  CHECK(Rational::from_double(0.5) == Rational(1, 2));
  CHECK(Rational::from_double(0.1) != Rational(1, 10));
  CHECK(Rational::from_double(0.1).to_double() == 0.1);
}

}
