#pragma once

#include <functional>

#include "twostudy/types.hpp"

namespace twostudy {

// Solution of a coupled selection-threshold system. When converged,
// (t1, t2) satisfies the system exactly: substituting the pair back into
// the right-hand sides reproduces it bit-for-bit, because the right-hand
// sides are step functions of empirical counts and the solver snaps each
// threshold to the exact equation value for the current counts.
struct ThresholdSolution {
    double t1 = 0.0;
    double t2 = 0.0;
    bool converged = false;
    std::size_t iterations = 0;
    std::vector<std::pair<double, double>> trajectory;
};

// The four systems, with S_i(t) = {j : sel_p_i(j) <= t} and
// S_{i,lambda}(t) = {j : sel_p_i(j) <= min(lambda, t)}; the adaptive
// weights are W1(t2) = (1 + #{j in S_{2,lambda}(t2) : wp1(j) > lambda}) / (1-lambda)
// and symmetrically W2(t1). Intersections use working-set semantics
// (concordant directions only in left-sided mode). Exact right-hand sides:
//
//   fwer            t1 = alpha1 / |S2(t2)|                 t2 = alpha2 / |S1(t1)|
//   adaptive fwer   t1 = alpha1 / W1(t2)                   t2 = alpha2 / W2(t1)
//   fdr             t1 = |I| * alpha1 / |S2(t2)|           t2 = |I| * alpha2 / |S1(t1)|
//   adaptive fdr    t1 = |I_lambda| * alpha1 / W1(t2)      t2 = |I_lambda| * alpha2 / W2(t1)
//
// where |I| = |S1(t1) n S2(t2)| and |I_lambda| its lambda-restricted
// counterpart. Right-hand sides are projected onto (0,1] via min(1, .);
// the projection can bind only in the adaptive fdr system, where every
// count already saturates below lambda and any threshold >= 1 acts
// identically. Non-existence of a solution (an empty denominator set or an
// empty intersection along the iteration, or a cycle) yields
// converged=false: no replicability claims are made. The iteration starts
// from (alpha1, alpha2), alternates t2-then-t1 updates using the most
// recent values, and stops when a full round leaves the pair unchanged.
ThresholdSolution solve_fwer_thresholds(const TwoStudyPValues& pvals,
                                        const ProcedureConfig& config);
ThresholdSolution solve_adaptive_fwer_thresholds(const TwoStudyPValues& pvals,
                                                 const ProcedureConfig& config);
ThresholdSolution solve_fdr_thresholds(const TwoStudyPValues& pvals,
                                       const ProcedureConfig& config);
ThresholdSolution solve_adaptive_fdr_thresholds(const TwoStudyPValues& pvals,
                                                const ProcedureConfig& config);

// Dispatch on config.error_rate / config.adaptive.
ThresholdSolution solve_thresholds(const TwoStudyPValues& pvals, const ProcedureConfig& config);

// Non-domination check for the FWER threshold systems: with
// score(t1,t2) = (min(t1, alpha1/G2(t2)), min(alpha2/G1(t1), t2)) and the
// G_i the (adaptive or plain) monotone denominator functions above, no
// candidate may exceed a solution's score in both coordinates with at
// least one strict. Returns true iff candidate does NOT strictly dominate.
// A zero denominator makes the corresponding ratio +infinity.
bool check_non_domination(std::pair<double, double> candidate,
                          const ThresholdSolution& solution,
                          const TwoStudyPValues& pvals, const ProcedureConfig& config);

// Generic alternating solver for t2 = update_t2(t1, t2), t1 = update_t1(t1, t2),
// both step functions of empirical counts. nullopt from an update means the
// system has no solution along this trajectory. Used by the concrete
// systems above and by the simulation's oracle variant.
ThresholdSolution solve_threshold_system(
    const std::function<std::optional<double>(double, double)>& update_t2,
    const std::function<std::optional<double>(double, double)>& update_t1,
    double t1_start, double t2_start, std::size_t max_iterations);

}  // namespace twostudy
