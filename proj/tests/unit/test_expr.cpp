#include "doctest.h"
#include "helpers.hpp"

using namespace test;

TEST_CASE("parser precedence and unary minus") {
    CHECK(F("1 + 2*3^2") == F("19"));
    CHECK(F("-t^2") == F("0 - t^2"));
    CHECK(F("2 - s^2/2", Q, "s") == F("(4 - s^2)/2", Q, "s"));
    CHECK(F("t^-2") == F("1/t^2"));
    CHECK(F("(t+1)^3") == F("t^3 + 3*t^2 + 3*t + 1"));
}

TEST_CASE("parser errors carry positions") {
    try {
        F("t^^2");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position() == 2);
    }
    CHECK_THROWS_AS(F("u + 1"), ParseError);
    CHECK_THROWS_AS(F("1/(t - t)"), ParseError);
    CHECK_THROWS_AS(F("(t + 1"), ParseError);
    CHECK_THROWS_AS(F(""), ParseError);
    CHECK_THROWS_AS(F("1/7", ConstantField::prime(7)), InputError);
}

TEST_CASE("printing round trips through the parser") {
    std::mt19937_64 rng(31);
    for (ConstantField k : {Q, ConstantField::prime(11)}) {
        for (int trial = 0; trial < 30; ++trial) {
            FieldElement f = random_element(rng, k, 3);
            CHECK(F(format_field_element(f, "s"), k, "s") == f);
        }
    }
    CHECK(format_polynomial(P("s^5 - 6*s^3 + 8*s", Q, "s"), "s") == "s^5 - 6*s^3 + 8*s");
    CHECK(format_field_element(F("-8/(s^5 - 6*s^3 + 8*s)", Q, "s"), "s") == "-8/(s^5 - 6*s^3 + 8*s)");
}
