#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace twostudy {

// How the per-study p-values are to be read.
//
// OneSided: p1/p2 hold ordinary one-sided p-values and are used as-is.
// LeftSided: p1/p2 hold left-sided p-values p^L; the right-sided value is
// always derived as p^R = 1 - p^L (continuous test statistics), never stored.
enum class PValueMode { OneSided, LeftSided };

enum class ErrorRate { Fwer, Fdr };
enum class Dependence { Independent, Arbitrary };

// Direction of the claimed effect for a feature, decided by the data.
enum class Direction { Left, Right, None };

// The m x 2 matrix of p-values from two independent studies of the same
// m features. The universal input of the library.
struct TwoStudyPValues {
    PValueMode mode = PValueMode::OneSided;
    std::vector<double> p1;
    std::vector<double> p2;
    std::vector<std::string> feature_ids;  // empty => "1".."m"

    std::size_t size() const { return p1.size(); }

    double right1(std::size_t j) const { return 1.0 - p1[j]; }
    double right2(std::size_t j) const { return 1.0 - p2[j]; }

    std::string feature_id(std::size_t j) const {
        return feature_ids.empty() ? std::to_string(j + 1) : feature_ids[j];
    }
};

// Parameters shared by every replicability procedure.
//
// alpha is the FWER/FDR level, c the fraction of it dedicated to study one
// (alpha1 = c*alpha, alpha2 = alpha - alpha1), lambda the plug-in tuning
// parameter of the adaptive variants (default: lambda = alpha).
struct ProcedureConfig {
    double alpha = 0.05;
    double c = 0.5;
    std::optional<double> lambda;
    bool adaptive = false;
    Dependence dependence = Dependence::Independent;
    ErrorRate error_rate = ErrorRate::Fdr;

    double alpha1() const { return c * alpha; }
    double alpha2() const { return alpha - c * alpha; }
    double lambda_value() const { return lambda.value_or(alpha); }
};

// Ground-truth hypothesis indicators, used by the simulation oracles.
// Feature j is a true replication iff h1[j] == 1 && h2[j] == 1.
struct HypothesisStates {
    std::vector<std::uint8_t> h1;
    std::vector<std::uint8_t> h2;

    std::size_t size() const { return h1.size(); }
    bool is_true_replication(std::size_t j) const { return h1[j] == 1 && h2[j] == 1; }
    // Non-replication null: states (0,0), (0,1), (1,0).
    bool is_null(std::size_t j) const { return !is_true_replication(j); }
};

// Result of the selection step. Index sets are ascending; per-feature
// vectors have length m so downstream code can index by feature.
//
// sel_p1/sel_p2 are the values the selection thresholds act on: the raw
// p-values in one-sided mode, min(p^L, p^R) in left-sided mode.
// working_p1/working_p2 are the values the r-value formulas consume: the
// raw p-values in one-sided mode, the directionally resolved p' values in
// left-sided mode (study one's p-value on study two's favored side, and
// vice versa).
struct SelectionOutcome {
    std::size_t m = 0;
    PValueMode mode = PValueMode::OneSided;
    double t1 = 1.0;
    double t2 = 1.0;
    double lambda = 1.0;  // 1.0 until restrict_by_lambda is applied

    std::vector<std::size_t> s1;
    std::vector<std::size_t> s2;
    std::vector<std::size_t> s1_lambda;
    std::vector<std::size_t> s2_lambda;
    // Working set for replicability claims: the intersection of the
    // (lambda-restricted) selected sets, concordant-direction only in
    // left-sided mode.
    std::vector<std::size_t> working;

    std::vector<double> sel_p1;
    std::vector<double> sel_p2;
    std::vector<double> working_p1;
    std::vector<double> working_p2;
    std::vector<Direction> directions;
};

// Cross-study plug-in estimates of the fraction of nulls.
// pi0_1 estimates the fraction of study-one nulls among study-two's
// selected features; pi0_2 the symmetric quantity.
struct PluginPi0 {
    double pi0_1 = 1.0;
    double pi0_2 = 1.0;
};

enum class RValueVariant { NonAdaptive, Adaptive, ArbitraryDependence };

struct RValueEntry {
    std::size_t index = 0;  // 0-based feature index
    std::string feature_id;
    double bonferroni_r = 0.0;  // Bonferroni-type base r-value (unclamped)
    double fdr_r = 0.0;         // step-up transform of the base (unclamped)
};

// Per-feature r-values over the working set, in input order. Values are
// stored unclamped; use clamp_rvalue() when presenting them (an r-value is
// a level, so reported values are capped at 1).
struct RValueTable {
    RValueVariant variant = RValueVariant::NonAdaptive;
    std::vector<RValueEntry> entries;
    std::optional<PluginPi0> pi0;  // set for the adaptive variant
    double c = 0.5;
    double lambda = 1.0;
};

inline double clamp_rvalue(double r) { return r < 1.0 ? r : 1.0; }

// Validates type invariants: p-values in [0,1], equal lengths, m >= 1,
// and alpha, c, lambda strictly inside (0,1).
// Throws std::invalid_argument naming the violated constraint.
void validate(const TwoStudyPValues& pvals, const ProcedureConfig& config);

void validate_pvalues(const TwoStudyPValues& pvals);
void validate_config(const ProcedureConfig& config);

}  // namespace twostudy
