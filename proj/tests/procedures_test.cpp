#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "twostudy/csv.hpp"
#include "twostudy/estimators.hpp"
#include "twostudy/procedures.hpp"
#include "twostudy/rvalues.hpp"
#include "twostudy/selection.hpp"

using namespace twostudy;

namespace {

TwoStudyPValues mice() {
    return read_pvalues_csv(TWOSTUDY_DATA_DIR "/mice.csv", PValueMode::LeftSided);
}

ProcedureConfig mice_config() {
    ProcedureConfig config;
    config.alpha = 0.05;
    config.c = 0.5;
    config.lambda = 0.05;
    return config;
}

}  // namespace

TEST_CASE("mice data: discovery sets of the four procedures") {
    const SelectionOutcome sel = select_by_threshold(mice(), 0.025, 0.025);
    const ProcedureConfig config = mice_config();
    const std::vector<std::size_t> fwer_expected = {1, 22, 24, 25, 26};  // features 2,23,25,26,27

    CHECK(fwer_procedure(sel, config).indices == fwer_expected);
    CHECK(fdr_procedure(sel, config).indices.size() == 9);
    CHECK(adaptive_bonferroni_procedure(sel, config).indices == fwer_expected);

    const Discoveries adaptive_fdr = adaptive_fdr_procedure(sel, config);
    CHECK(adaptive_fdr.indices.size() == 12);
    CHECK(adaptive_fdr.rejection_count == 12);
}

TEST_CASE("empty intersection produces an empty discovery set") {
    TwoStudyPValues pvals;
    pvals.p1 = {0.01, 0.9};
    pvals.p2 = {0.9, 0.01};
    const SelectionOutcome sel = select_by_threshold(pvals, 0.05, 0.05);
    const ProcedureConfig config = mice_config();
    CHECK(fwer_procedure(sel, config).indices.empty());
    CHECK(fdr_procedure(sel, config).indices.empty());
    CHECK(fdr_procedure(sel, config).rejection_count == 0);
}

TEST_CASE("boundary inclusion: p-values exactly at the thresholds are rejected") {
    ProcedureConfig config = mice_config();
    TwoStudyPValues pvals;
    pvals.p1 = {config.alpha1()};  // alpha1 / S2 with S2 = 1
    pvals.p2 = {config.alpha2()};
    const SelectionOutcome sel = select_by_threshold(pvals, 0.5, 0.5);
    CHECK(fwer_procedure(sel, config).indices == std::vector<std::size_t>{0});
}

TEST_CASE("singleton working set with zero p-values is rejected with R = 1") {
    TwoStudyPValues pvals;
    pvals.p1 = {0.0};
    pvals.p2 = {0.0};
    const SelectionOutcome sel = select_by_threshold(pvals, 0.5, 0.5);
    const Discoveries d = adaptive_fdr_procedure(sel, mice_config());
    CHECK(d.indices == std::vector<std::size_t>{0});
    CHECK(d.rejection_count == 1);
}

TEST_CASE("adaptive procedures flag an empty lambda-restricted selection") {
    TwoStudyPValues pvals;
    pvals.p1 = {0.4};
    pvals.p2 = {0.4};
    const SelectionOutcome sel = select_by_threshold(pvals, 0.5, 0.5);
    ProcedureConfig config = mice_config();  // lambda = 0.05 below both p-values
    const Discoveries d = adaptive_bonferroni_procedure(sel, config);
    CHECK(d.adaptive_undefined);
    CHECK(d.indices.empty());
    const Discoveries d2 = adaptive_fdr_procedure(sel, config);
    CHECK(d2.adaptive_undefined);
    CHECK(d2.indices.empty());
}

TEST_CASE("adaptive bonferroni: cross exceedances shrink the thresholds to an empty set") {
    // Three of study-2's five selected features have study-1 p-values above
    // lambda, inflating pi0_1; the resulting thresholds exclude everything.
    TwoStudyPValues pvals;
    pvals.p1 = {0.01, 0.01, 0.45, 0.45, 0.45};
    pvals.p2 = {0.01, 0.01, 0.01, 0.01, 0.01};
    ProcedureConfig config;
    config.alpha = 0.05;
    config.c = 0.5;
    config.lambda = 0.3;
    const SelectionOutcome sel = select_by_threshold(pvals, 0.5, 0.5);
    const SelectionOutcome restricted = restrict_by_lambda(sel, 0.3);
    REQUIRE(restricted.s1_lambda.size() == 2);
    REQUIRE(restricted.s2_lambda.size() == 5);

    const std::optional<PluginPi0> pi0 = plugin_pi0_cross(restricted);
    REQUIRE(pi0.has_value());
    CHECK(pi0->pi0_1 == doctest::Approx(4.0 / (5.0 * 0.7)));
    CHECK(pi0->pi0_2 == doctest::Approx(1.0 / (2.0 * 0.7)));

    // Direct thresholds: p1 <= alpha1/(S2l*pi0_1), p2 <= alpha2/(S1l*pi0_2).
    const double thr1 = config.alpha1() / (5.0 * pi0->pi0_1);
    const double thr2 = config.alpha2() / (2.0 * pi0->pi0_2);
    CHECK(thr1 == doctest::Approx(0.004375));
    CHECK(thr2 == doctest::Approx(0.0175));
    const Discoveries d = adaptive_bonferroni_procedure(sel, config);
    CHECK(d.indices.empty());  // both working-set p1 values exceed thr1
    CHECK_FALSE(d.adaptive_undefined);
}

TEST_CASE("fdr_procedure rejection count matches the exhaustive r scan") {
    oracles::InstanceGenerator gen(42);
    ProcedureConfig config = mice_config();
    for (int trial = 0; trial < 200; ++trial) {
        const TwoStudyPValues pvals = gen.instance(trial, 8);
        const SelectionOutcome sel = select_by_threshold(pvals, 0.4, 0.4);
        const Discoveries d = fdr_procedure(sel, config);
        const std::vector<std::size_t> literal = oracles::step_up_rule_literal(
            sel.working, sel.working_p1, sel.working_p2,
            static_cast<double>(sel.s2.size()), static_cast<double>(sel.s1.size()),
            config.alpha1(), config.alpha2());
        CHECK(d.indices == literal);
        CHECK(d.rejection_count == literal.size());
    }
}

TEST_CASE("route equivalence: step-wise forms equal the r-value thresholding") {
    oracles::InstanceGenerator gen(4242);
    for (int trial = 0; trial < 250; ++trial) {
        const TwoStudyPValues pvals = gen.instance(trial, 5 + trial % 45);
        const double t = 0.05 + 0.4 * (trial % 3) / 3.0;
        const SelectionOutcome sel = select_by_threshold(pvals, t, t);
        for (const double alpha : {0.01, 0.05, 0.1, 0.2}) {
            ProcedureConfig config;
            config.alpha = alpha;
            config.c = trial % 4 == 0 ? 0.3 : 0.5;
            config.lambda = alpha;
            const double a1 = config.alpha1();
            const double a2 = config.alpha2();

            // FWER rule: two Bonferroni coordinates.
            CHECK(fwer_procedure(sel, config).indices ==
                  oracles::bonferroni_rule_literal(sel.working, sel.working_p1, sel.working_p2,
                                                   static_cast<double>(sel.s2.size()),
                                                   static_cast<double>(sel.s1.size()), a1, a2));

            // FDR rule: step-up count.
            CHECK(fdr_procedure(sel, config).indices ==
                  oracles::step_up_rule_literal(sel.working, sel.working_p1, sel.working_p2,
                                                static_cast<double>(sel.s2.size()),
                                                static_cast<double>(sel.s1.size()), a1, a2));

            // Arbitrary-dependence FDR: harmonic-corrected weights.
            ProcedureConfig arb = config;
            arb.dependence = Dependence::Arbitrary;
            CHECK(fdr_procedure(sel, arb).indices ==
                  oracles::step_up_rule_literal(
                      sel.working, sel.working_p1, sel.working_p2,
                      harmonic_number(sel.s2.size()) * static_cast<double>(sel.s2.size()),
                      harmonic_number(sel.s1.size()) * static_cast<double>(sel.s1.size()), a1,
                      a2));

            // Adaptive procedures over the lambda-restricted working set.
            const SelectionOutcome restricted = restrict_by_lambda(sel, config.lambda_value());
            const std::optional<PluginPi0> pi0 = plugin_pi0_cross(restricted);
            if (!pi0) continue;
            const double w1 = pi0->pi0_1 * static_cast<double>(restricted.s2_lambda.size());
            const double w2 = pi0->pi0_2 * static_cast<double>(restricted.s1_lambda.size());
            CHECK(adaptive_bonferroni_procedure(sel, config).indices ==
                  oracles::bonferroni_rule_literal(restricted.working, restricted.working_p1,
                                                   restricted.working_p2, w1, w2, a1, a2));
            CHECK(adaptive_fdr_procedure(sel, config).indices ==
                  oracles::step_up_rule_literal(restricted.working, restricted.working_p1,
                                                restricted.working_p2, w1, w2, a1, a2));
        }
    }
}

TEST_CASE("discovery sets are nested as alpha increases") {
    oracles::InstanceGenerator gen(77);
    for (int trial = 0; trial < 60; ++trial) {
        const TwoStudyPValues pvals = gen.instance(trial, 30);
        const SelectionOutcome sel = select_by_threshold(pvals, 0.3, 0.3);
        std::vector<std::size_t> prev_fwer, prev_fdr;
        for (const double alpha : {0.01, 0.02, 0.05, 0.1, 0.2, 0.4}) {
            ProcedureConfig config;
            config.alpha = alpha;
            config.lambda = alpha;
            const std::vector<std::size_t> fw = fwer_procedure(sel, config).indices;
            const std::vector<std::size_t> fd = fdr_procedure(sel, config).indices;
            CHECK(std::includes(fw.begin(), fw.end(), prev_fwer.begin(), prev_fwer.end()));
            CHECK(std::includes(fd.begin(), fd.end(), prev_fdr.begin(), prev_fdr.end()));
            prev_fwer = fw;
            prev_fdr = fd;
        }
    }
}

TEST_CASE("FDR discoveries contain the FWER discoveries") {
    oracles::InstanceGenerator gen(88);
    ProcedureConfig config = mice_config();
    for (int trial = 0; trial < 100; ++trial) {
        const TwoStudyPValues pvals = gen.instance(trial, 40);
        const SelectionOutcome sel = select_by_threshold(pvals, 0.2, 0.2);
        const std::vector<std::size_t> fw = fwer_procedure(sel, config).indices;
        const std::vector<std::size_t> fd = fdr_procedure(sel, config).indices;
        CHECK(std::includes(fd.begin(), fd.end(), fw.begin(), fw.end()));
    }
}

TEST_CASE("run_procedure dispatches on the config") {
    const SelectionOutcome sel = select_by_threshold(mice(), 0.025, 0.025);
    ProcedureConfig config = mice_config();

    config.error_rate = ErrorRate::Fwer;
    config.adaptive = false;
    CHECK(run_procedure(sel, config).indices == fwer_procedure(sel, config).indices);
    config.error_rate = ErrorRate::Fdr;
    CHECK(run_procedure(sel, config).indices == fdr_procedure(sel, config).indices);
    config.adaptive = true;
    CHECK(run_procedure(sel, config).indices == adaptive_fdr_procedure(sel, config).indices);
    config.error_rate = ErrorRate::Fwer;
    CHECK(run_procedure(sel, config).indices ==
          adaptive_bonferroni_procedure(sel, config).indices);
}
