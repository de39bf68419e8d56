#include <doctest.h>

#include <cstdint>
#include <stdexcept>

#include "pcm/rational.hpp"

using pcm::Rational;

TEST_CASE("rationals are reduced with a positive denominator")
{
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(9, 2).str() == "9/2");
    CHECK(Rational(18, 2).str() == "9");
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("parse_rational accepts fractions, integers and decimals")
{
    CHECK(pcm::parse_rational("1/9") == Rational(1, 9));
    CHECK(pcm::parse_rational(" 9 / 5 ") == Rational(9, 5));
    CHECK(pcm::parse_rational("7") == Rational(7));
    CHECK(pcm::parse_rational("0.25") == Rational(1, 4));
    CHECK(pcm::parse_rational("2.5") == Rational(5, 2));
    CHECK_FALSE(pcm::parse_rational("abc"));
    CHECK_FALSE(pcm::parse_rational("1/0"));
    CHECK_FALSE(pcm::parse_rational("1e3"));
    CHECK_FALSE(pcm::parse_rational(""));
}

TEST_CASE("to_double is the correctly rounded quotient")
{
    CHECK(Rational(1, 3).to_double() == 1.0 / 3.0);
    CHECK(Rational(9, 5).to_double() == 9.0 / 5.0);
}

TEST_CASE("checked arithmetic reports overflow instead of wrapping")
{
    const Rational big(INT64_MAX / 2);
    CHECK_FALSE(pcm::checked_mul(big, Rational(3)));
    CHECK(pcm::checked_mul(Rational(2, 9), Rational(9, 2)) == Rational(1));
    CHECK(pcm::checked_div(Rational(1, 9), Rational(1, 9)) == Rational(1));
}

TEST_CASE("exact_root finds perfect powers only")
{
    CHECK(pcm::exact_root(Rational(9, 4), 2) == Rational(3, 2));
    CHECK(pcm::exact_root(Rational(1, 27), 3) == Rational(1, 3));
    CHECK_FALSE(pcm::exact_root(Rational(2), 2));
    CHECK(pcm::exact_root(Rational(5), 1) == Rational(5));
}
