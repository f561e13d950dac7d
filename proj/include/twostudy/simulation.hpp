#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "twostudy/types.hpp"

namespace twostudy {

// Monte-Carlo scenario: mixture configuration f = (f00, f10, f01, f11) of
// hypothesis states, signal mean mu, within-study equi-correlation rho.
// Fixed selection thresholds default to alpha/2 per study; lambda defaults
// to alpha.
struct SimScenario {
    std::array<double, 4> f{1.0, 0.0, 0.0, 0.0};
    double mu = 3.0;
    double rho = 0.0;
    std::size_t m = 1000;
    std::size_t replicates = 1000;
    std::uint64_t seed = 0;
    double alpha = 0.05;
    double c = 0.5;
    std::optional<double> lambda;
    std::optional<double> t1;
    std::optional<double> t2;
    std::vector<std::string> procedures;

    double lambda_value() const { return lambda.value_or(alpha); }
    double t1_value() const { return t1.value_or(alpha / 2.0); }
    double t2_value() const { return t2.value_or(alpha / 2.0); }
};

// Recognized procedure names:
//   bonferroni, fdr, adaptive-bonferroni, adaptive-fdr      (fixed thresholds)
//   bonferroni-dd, fdr-dd, adaptive-bonferroni-dd,
//   adaptive-fdr-dd                                         (data-dependent thresholds)
//   max-fwer, oracle-max-fwer, bh-max, oracle-max-fdr       (max-p comparators)
//   oracle-bonferroni                                       (true-null-count oracle)
//   naive-bh-intersection                                   (negative example)
const std::vector<std::string>& known_procedures();

// Throws std::invalid_argument for malformed scenarios (f components
// negative or not summing to 1, zero replicates, unknown procedure name,
// parameters out of range).
void validate_scenario(const SimScenario& scenario);

// Parse a scenario from JSON with keys
// {f, mu, rho, m, replicates, seed, alpha, c, lambda, procedures}
// and optional t1, t2.
SimScenario scenario_from_json(const std::string& text);

// Deterministic hypothesis-state layout: the first m*f00 features are
// (0,0), then m*f10 features (1,0), then (0,1), then (1,1), with
// largest-remainder rounding of the block sizes to a total of m.
HypothesisStates states_for(const SimScenario& scenario);

// One simulated dataset: one-sided p-values 1 - Phi(mu_ij + e_ij) with
// e_ij = sqrt(rho) * Z_i0 + sqrt(1-rho) * Z_ij, all noise drawn from
// counter-based streams keyed by (seed, replicate, study, feature).
TwoStudyPValues generate_dataset(const SimScenario& scenario, std::size_t replicate_index);

// Oracle Bonferroni-replicability with data-dependent thresholds: solves
// t1 = alpha1 / G2(t2), t2 = alpha2 / G1(t1) where G2(t2) counts study-one
// true nulls among study-two's selected (and symmetrically), then rejects
// j in S1(t1) n S2(t2) with (p1j, p2j) <= (t1, t2). A zero true-null count
// makes the corresponding threshold 1 (every selected feature passes).
std::vector<std::size_t> oracle_bonferroni(const TwoStudyPValues& pvals,
                                           const HypothesisStates& states,
                                           const ProcedureConfig& config);

enum class MaxOracleKind { Fwer, Fdr };

// Level for BH on the max p-values that keeps its FDR at alpha for a known
// configuration: the positive root of f00 * x^2 + (1 - f00 - f11) * x = alpha.
double oracle_max_fdr_level(double f00, double f11, double alpha);

// Max-p-value oracles: Fwer kind thresholds max(p1j, p2j) at
// alpha / #{j : state != (1,1)} (plain alpha/m without ground truth is the
// "max" comparator); Fdr kind runs BH on the maxima at the adjusted level.
std::vector<std::size_t> max_oracles(const TwoStudyPValues& pvals,
                                     const HypothesisStates& states, double alpha,
                                     MaxOracleKind kind);

// Negative example: BH at level alpha within each study, claims =
// intersection of the two discovery sets. Does not control the FDR on
// replicability claims; kept for simulation comparisons only.
std::vector<std::size_t> naive_bh_intersection(const TwoStudyPValues& pvals, double alpha);

struct ProcedureStats {
    std::string name;
    bool power_defined = false;  // false when no replicate had a (1,1) feature
    double power = 0.0;
    double power_se = 0.0;
    double fwer = 0.0;
    double fwer_se = 0.0;
    double fdr = 0.0;
    double fdr_se = 0.0;
};

struct SimResult {
    SimScenario scenario;
    std::vector<ProcedureStats> procedures;
};

// Runs every replicate (embarrassingly parallel, counter-based streams)
// and reduces per-replicate statistics serially in replicate order, so the
// result is bitwise identical for any thread count. threads == 0 uses the
// hardware concurrency.
SimResult run_scenario(const SimScenario& scenario, unsigned threads = 0);

// CSV with header procedure,power,power_se,fwer,fwer_se,fdr,fdr_se.
std::string sim_result_csv(const SimResult& result);

}  // namespace twostudy
