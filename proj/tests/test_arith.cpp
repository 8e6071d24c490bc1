#include "ggl/arith.hpp"
#include "ggl/quad.hpp"

#include <doctest.h>

using namespace ggl;

TEST_SUITE("arith") {
  TEST_CASE("fundamental discriminants") {
    for (std::int64_t d : {5, 8, 12, 13, 17, 21, 24, 28, 40, 229, -3, -4, -7, -8, -20})
      CHECK(is_fundamental_discriminant(d));
    for (std::int64_t d : {1, 4, 9, 16, 20, 25, 32, 6, 7, -12, 0})
      CHECK_FALSE(is_fundamental_discriminant(d));
    CHECK(field_discriminant(-4) == -4);
    CHECK(field_discriminant(-3) == -3);
    CHECK(field_discriminant(-20) == -20);
    CHECK(field_discriminant(-32) == -8);
    CHECK(field_discriminant(-36) == -4);
    CHECK(field_discriminant(12) == 12);
  }

  TEST_CASE("parse_rational") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-2/6") == Rational(-1, 3));
    CHECK(parse_rational("0.05") == Rational(1, 20));
    CHECK(parse_rational(".5") == Rational(1, 2));
    CHECK(parse_rational("-1.25") == Rational(-5, 4));
    CHECK(parse_rational("7") == Rational(7));
    CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
    CHECK_THROWS_AS(parse_rational("abc"), DomainError);
    CHECK_THROWS_AS(parse_rational("1.2.3"), DomainError);
    CHECK_THROWS_AS(parse_rational(""), DomainError);
  }

  TEST_CASE("exact signs of surds") {
    CHECK(sign_quadratic(Rational(-2), Rational(1), 5) > 0);   // sqrt5 > 2
    CHECK(sign_quadratic(Rational(-3), Rational(1), 5) < 0);
    CHECK(sign_quadratic(Rational(7, 3), Rational(-1), 5) > 0);  // 7/3 > sqrt5
    CHECK(floor_surd(1, 1, 2, 5) == 1);
    CHECK(floor_surd(0, -1, 1, 5) == -3);
  }

  TEST_CASE("quadratic elements") {
    const QuadElem eps = QuadElem::half(5, 1, 1);
    CHECK(eps.norm() == -1);
    CHECK(eps.is_unit());
    CHECK((eps * eps).str() == "(3 + sqrt(5))/2");
    CHECK(QuadElem(5, 0, 1).str() == "sqrt(5)");
    CHECK(QuadElem(5, 0, -2).str() == "-2*sqrt(5)");
    CHECK_THROWS_AS(QuadElem(9, 1, 1), DomainError);
  }
}
