#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tbcalc/errors.hpp"
#include "tbcalc/number.hpp"

#include <cmath>
#include <random>

using namespace tbcalc;

TEST_CASE("parse rationals exactly") {
    CHECK(*parse_rational("-0.5") == make_rational(-1, 2));
    CHECK(*parse_rational("3/4") == make_rational(3, 4));
    CHECK(*parse_rational("6/8") == make_rational(3, 4));
    CHECK(*parse_rational("+2") == make_rational(2));
    CHECK(*parse_rational(".25") == make_rational(1, 4));
    CHECK(*parse_rational("1.") == make_rational(1));
    CHECK_FALSE(parse_rational("1/0"));
    CHECK_FALSE(parse_rational("abc"));
    CHECK_FALSE(parse_rational("--1"));
    CHECK_FALSE(parse_rational(""));
}

TEST_CASE("floor and fractional part") {
    CHECK(floor_of(make_rational(-1, 2)) == make_rational(-1));
    CHECK(frac_of(make_rational(-1, 2)) == make_rational(1, 2));
    CHECK(floor_of(make_rational(7, 3)) == make_rational(2));
    CHECK(frac_of(make_rational(-3)) == make_rational(0));
}

TEST_CASE("overflow throws instead of wrapping") {
    Rational big = make_rational(INT64_MAX / 2);
    CHECK_THROWS(big * make_rational(4));
}

TEST_CASE("square roots are reduced to squarefree radicals") {
    Surd s = Surd::sqrt_of(make_rational(8));
    REQUIRE(s.terms().size() == 1);
    CHECK(s.terms()[0].rad == 2);
    CHECK(s.terms()[0].coef == make_rational(2));
    CHECK(Surd::sqrt_of(make_rational(9, 4)) == Surd(make_rational(3, 2)));
    Surd t = Surd::sqrt_of(make_rational(1, 3));
    CHECK(t.terms()[0].rad == 3);
    CHECK(t.terms()[0].coef == make_rational(1, 3));
    CHECK_THROWS_AS(Surd::sqrt_of(make_rational(-1)), DomainError);
}

TEST_CASE("surd arithmetic cancels exactly") {
    Surd a = Surd(1) + Surd::sqrt_of(make_rational(3));
    Surd b = Surd(1) - Surd::sqrt_of(make_rational(3));
    CHECK(a + b == Surd(2));
    CHECK((a - b).to_string() == "2*sqrt(3)");
    CHECK(a.to_string() == "1+sqrt(3)");
    CHECK(b.to_string() == "1-sqrt(3)");
    CHECK((-Surd::sqrt_of(make_rational(2))).to_string() == "-sqrt(2)");
    CHECK((a * make_rational(1, 2)).to_string() == "1/2+1/2*sqrt(3)");
}

TEST_CASE("surd ordering agrees with floating point") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> c(-20, 20), r(1, 30);
    for (int i = 0; i < 2000; ++i) {
        Surd x = Surd(make_rational(c(rng), 3)) + Surd::sqrt_of(make_rational(r(rng))) * make_rational(c(rng), 4);
        Surd y = Surd(make_rational(c(rng), 5)) + Surd::sqrt_of(make_rational(r(rng))) * make_rational(c(rng), 2);
        double dx = x.to_double(), dy = y.to_double();
        if (std::fabs(dx - dy) > 1e-9) CHECK((x < y) == (dx < dy));
        CHECK((x == y) == ((x <=> y) == 0));
    }
}

TEST_CASE("near-cancelling surds resolve sign in high precision") {
    // 99/70 approximates sqrt(2) from above to ~7e-5; 665857/470832 to ~1.6e-12.
    Surd s2 = Surd::sqrt_of(make_rational(2));
    CHECK((Surd(make_rational(665857, 470832)) - s2).sign() == 1);
    CHECK((s2 - Surd(make_rational(665857, 470832))).sign() == -1);
    CHECK((Surd(make_rational(99, 70)) - s2).sign() == 1);
}

TEST_CASE("extended reals treat nullopt as +infinity") {
    ExtSurd inf;
    CHECK(ext_less(Surd(3), inf));
    CHECK_FALSE(ext_less(inf, Surd(3)));
    CHECK(*ext_min(inf, Surd(2)) == Surd(2));
    CHECK_FALSE(ext_add(inf, Surd(2)).has_value());
    CHECK(ext_to_string(inf) == "inf");
}
