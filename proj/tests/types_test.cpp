#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twostudy/types.hpp"

using namespace twostudy;

TEST_CASE("validate accepts in-range inputs") {
    TwoStudyPValues pvals;
    pvals.p1 = {0.5};
    pvals.p2 = {0.5};
    ProcedureConfig config;
    config.alpha = 0.05;
    config.c = 0.5;
    config.lambda = 0.05;
    CHECK_NOTHROW(validate(pvals, config));
}

TEST_CASE("validate rejects out-of-range p-values") {
    TwoStudyPValues pvals;
    pvals.p1 = {1.2};
    pvals.p2 = {0.5};
    CHECK_THROWS_WITH_AS(validate(pvals, ProcedureConfig{}),
                         doctest::Contains("p-value out of range"), std::invalid_argument);
}

TEST_CASE("validate rejects boundary config parameters") {
    TwoStudyPValues pvals;
    pvals.p1 = {0.5};
    pvals.p2 = {0.5};
    ProcedureConfig config;
    config.c = 0.0;
    CHECK_THROWS_WITH_AS(validate(pvals, config), doctest::Contains("c must be in (0,1)"),
                         std::invalid_argument);
    config.c = 1.0;
    CHECK_THROWS_AS(validate(pvals, config), std::invalid_argument);
    config.c = 0.5;
    config.alpha = 0.0;
    CHECK_THROWS_AS(validate(pvals, config), std::invalid_argument);
}

TEST_CASE("validate rejects length mismatch") {
    TwoStudyPValues pvals;
    pvals.p1 = {0.5, 0.2};
    pvals.p2 = {0.5};
    CHECK_THROWS_AS(validate(pvals, ProcedureConfig{}), std::invalid_argument);

    pvals.p2 = {0.5, 0.2};
    pvals.feature_ids = {"only-one"};
    CHECK_THROWS_AS(validate(pvals, ProcedureConfig{}), std::invalid_argument);
}

TEST_CASE("p-values exactly 0 and 1 are accepted") {
    TwoStudyPValues pvals;
    pvals.p1 = {0.0, 1.0};
    pvals.p2 = {1.0, 0.0};
    CHECK_NOTHROW(validate(pvals, ProcedureConfig{}));
}

TEST_CASE("config defaults: c = 0.5, lambda = alpha") {
    ProcedureConfig config;
    CHECK(config.c == 0.5);
    config.alpha = 0.07;
    CHECK(config.lambda_value() == 0.07);
    CHECK(config.alpha1() == doctest::Approx(0.035));
    CHECK(config.alpha2() == doctest::Approx(0.035));
}

TEST_CASE("default feature ids are 1..m") {
    TwoStudyPValues pvals;
    pvals.p1 = {0.1, 0.2};
    pvals.p2 = {0.1, 0.2};
    CHECK(pvals.feature_id(0) == "1");
    CHECK(pvals.feature_id(1) == "2");
}

TEST_CASE("right-sided values are derived, never stored") {
    TwoStudyPValues pvals;
    pvals.mode = PValueMode::LeftSided;
    pvals.p1 = {0.3};
    pvals.p2 = {0.8};
    CHECK(pvals.right1(0) == 1.0 - 0.3);
    CHECK(pvals.right2(0) == 1.0 - 0.8);
}

TEST_CASE("r-value clamping caps at 1 for presentation") {
    CHECK(clamp_rvalue(0.4) == 0.4);
    CHECK(clamp_rvalue(1.7) == 1.0);
}
