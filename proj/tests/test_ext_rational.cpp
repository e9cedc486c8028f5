#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "padic/ext_rational.hpp"

using namespace padic;

TEST_CASE("construction normalizes") {
    CHECK(ExtRational(2, 4) == ExtRational(1, 2));
    CHECK(ExtRational(-2, -4) == ExtRational(1, 2));
    CHECK(ExtRational(3, -6) == ExtRational(-1, 2));
    CHECK(ExtRational(0, 7) == ExtRational(0));
    CHECK(ExtRational(1, 2).to_string() == "1/2");
    CHECK(ExtRational(-5).to_string() == "-5");
    CHECK_THROWS_AS(ExtRational(1, 0), IndeterminateForm);
}

TEST_CASE("ordering with infinities") {
    ExtRational ni = ExtRational::neg_inf(), pi = ExtRational::pos_inf();
    CHECK(ni < ExtRational(-1000000));
    CHECK(ExtRational(1000000) < pi);
    CHECK(ni < pi);
    CHECK(ExtRational(1, 3) < ExtRational(1, 2));
    CHECK(ExtRational(-1, 2) < ExtRational(-1, 3));
    CHECK(min(pi, ExtRational(3)) == ExtRational(3));
    CHECK(max(ni, ExtRational(3)) == ExtRational(3));
    CHECK(pi == pi);
    CHECK(ni != pi);
}

TEST_CASE("field operations") {
    CHECK(ExtRational(1, 2) + ExtRational(1, 3) == ExtRational(5, 6));
    CHECK(ExtRational(1, 2) - ExtRational(1, 2) == ExtRational(0));
    CHECK(ExtRational(2, 3) * ExtRational(3, 4) == ExtRational(1, 2));
    CHECK(ExtRational(5, 6) / 2 == ExtRational(5, 12));
    CHECK(-ExtRational(3, 7) == ExtRational(-3, 7));
}

TEST_CASE("infinite arithmetic") {
    ExtRational ni = ExtRational::neg_inf(), pi = ExtRational::pos_inf();
    CHECK((pi + ExtRational(5)).is_pos_inf());
    CHECK((ni - ExtRational(5)).is_neg_inf());
    CHECK((-pi).is_neg_inf());
    CHECK((pi * ExtRational(-2)).is_neg_inf());
    CHECK((ni / 3).is_neg_inf());
    CHECK((ni / -3).is_pos_inf());
    CHECK_THROWS_AS(pi + ni, IndeterminateForm);
    CHECK_THROWS_AS(pi - pi, IndeterminateForm);
    CHECK_THROWS_AS(pi * ExtRational(0), IndeterminateForm);
}

TEST_CASE("string and double rendering") {
    CHECK(ExtRational::pos_inf().to_string() == "inf");
    CHECK(ExtRational::neg_inf().to_string() == "-inf");
    CHECK(ExtRational(-1, 2).to_double() == doctest::Approx(-0.5));
    CHECK(ExtRational::pos_inf().to_double() > 1e300);
}
