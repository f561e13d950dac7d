#include "twostudy/thresholds.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

#include "twostudy/selection.hpp"

namespace twostudy {

namespace {

// Count machinery over one instance: sorted selection p-values for
// threshold counts, and per-study prefix sums of cross-study exceedances
// I(working p > lambda) in selection order for the adaptive weights.
struct CountTables {
    std::size_t m = 0;
    bool directional = false;
    double lambda = 0.0;
    std::vector<double> sp1, sp2;
    std::vector<double> wp1, wp2;
    std::vector<Direction> directions;
    std::vector<double> sorted1, sorted2;
    std::vector<std::size_t> exceed1_prefix;  // over study-2 order: I(wp1 > lambda)
    std::vector<std::size_t> exceed2_prefix;  // over study-1 order: I(wp2 > lambda)

    CountTables(const TwoStudyPValues& pvals, double lambda_param) {
        m = pvals.size();
        lambda = lambda_param;
        directional = pvals.mode == PValueMode::LeftSided;
        // Selection at t=1 covers every feature; reuse its derived vectors.
        SelectionOutcome all = select_by_threshold(pvals, 1.0, 1.0);
        sp1 = std::move(all.sel_p1);
        sp2 = std::move(all.sel_p2);
        wp1 = std::move(all.working_p1);
        wp2 = std::move(all.working_p2);
        directions = std::move(all.directions);

        sorted1 = sp1;
        sorted2 = sp2;
        std::sort(sorted1.begin(), sorted1.end());
        std::sort(sorted2.begin(), sorted2.end());

        std::vector<std::size_t> order(m);
        std::iota(order.begin(), order.end(), 0);
        auto prefix = [&](const std::vector<double>& key, const std::vector<double>& cross) {
            std::vector<std::size_t> ord = order;
            std::sort(ord.begin(), ord.end(),
                      [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
            std::vector<std::size_t> pre(m + 1, 0);
            for (std::size_t k = 0; k < m; ++k) {
                pre[k + 1] = pre[k] + (cross[ord[k]] > lambda ? 1 : 0);
            }
            return pre;
        };
        exceed1_prefix = prefix(sp2, wp1);
        exceed2_prefix = prefix(sp1, wp2);
    }

    std::size_t count1(double t) const {
        return std::upper_bound(sorted1.begin(), sorted1.end(), t) - sorted1.begin();
    }
    std::size_t count2(double t) const {
        return std::upper_bound(sorted2.begin(), sorted2.end(), t) - sorted2.begin();
    }

    // |S1(cap1) n S2(cap2)|, concordant features only in directional mode.
    std::size_t intersection(double cap1, double cap2) const {
        std::size_t n = 0;
        for (std::size_t j = 0; j < m; ++j) {
            if (sp1[j] <= cap1 && sp2[j] <= cap2 &&
                (!directional || directions[j] != Direction::None)) {
                ++n;
            }
        }
        return n;
    }

    // W1(t2) = (1 + #{j in S_{2,lambda}(t2) : wp1(j) > lambda}) / (1 - lambda);
    // nullopt when S_{2,lambda}(t2) is empty.
    std::optional<double> weight1(double t2) const {
        const std::size_t n = count2(std::min(lambda, t2));
        if (n == 0) return std::nullopt;
        return (1.0 + static_cast<double>(exceed1_prefix[n])) / (1.0 - lambda);
    }
    std::optional<double> weight2(double t1) const {
        const std::size_t n = count1(std::min(lambda, t1));
        if (n == 0) return std::nullopt;
        return (1.0 + static_cast<double>(exceed2_prefix[n])) / (1.0 - lambda);
    }
};

}  // namespace

ThresholdSolution solve_threshold_system(
    const std::function<std::optional<double>(double, double)>& update_t2,
    const std::function<std::optional<double>(double, double)>& update_t1,
    double t1_start, double t2_start, std::size_t max_iterations) {
    ThresholdSolution sol;
    double t1 = t1_start;
    double t2 = t2_start;
    std::set<std::pair<double, double>> visited;
    visited.insert({t1, t2});

    // Thresholds are probabilities: right-hand sides are projected onto
    // (0,1]. A raw value above 1 can arise only when the selection already
    // saturates (every feature below min(lambda, t)), where any threshold
    // >= 1 acts identically.
    const auto step = [](const std::function<std::optional<double>(double, double)>& update,
                         double a, double b) -> std::optional<double> {
        const std::optional<double> v = update(a, b);
        if (!v) return std::nullopt;
        return std::min(1.0, *v);
    };

    for (std::size_t it = 0; it < max_iterations; ++it) {
        sol.iterations = it + 1;
        const std::optional<double> next_t2 = step(update_t2, t1, t2);
        if (!next_t2 || !(*next_t2 > 0.0)) return sol;
        t2 = *next_t2;
        const std::optional<double> next_t1 = step(update_t1, t1, t2);
        if (!next_t1 || !(*next_t1 > 0.0)) return sol;
        const double prev_t1 = t1;
        t1 = *next_t1;
        sol.trajectory.emplace_back(t1, t2);

        // Fixed point: a full round left the pair unchanged.
        if (t1 == prev_t1 && step(update_t2, t1, t2) == std::optional<double>(t2)) {
            sol.t1 = t1;
            sol.t2 = t2;
            sol.converged = true;
            return sol;
        }
        if (!visited.insert({t1, t2}).second) {
            return sol;  // cycle without a fixed point
        }
    }
    return sol;
}

namespace {

constexpr std::size_t kIterationFactor = 10;

ThresholdSolution solve_impl(const TwoStudyPValues& pvals, const ProcedureConfig& config,
                             bool adaptive, bool fdr) {
    validate(pvals, config);
    const double a1 = config.alpha1();
    const double a2 = config.alpha2();
    const CountTables tables(pvals, config.lambda_value());
    const double lambda = config.lambda_value();
    const std::size_t max_iter = kIterationFactor * std::max<std::size_t>(pvals.size(), 1);

    std::function<std::optional<double>(double, double)> up2, up1;
    if (!adaptive && !fdr) {
        up2 = [&tables, a2](double t1, double) -> std::optional<double> {
            const std::size_t n = tables.count1(t1);
            if (n == 0) return std::nullopt;
            return a2 / static_cast<double>(n);
        };
        up1 = [&tables, a1](double, double t2) -> std::optional<double> {
            const std::size_t n = tables.count2(t2);
            if (n == 0) return std::nullopt;
            return a1 / static_cast<double>(n);
        };
    } else if (adaptive && !fdr) {
        up2 = [&tables, a2](double t1, double) -> std::optional<double> {
            const std::optional<double> w = tables.weight2(t1);
            if (!w) return std::nullopt;
            return a2 / *w;
        };
        up1 = [&tables, a1](double, double t2) -> std::optional<double> {
            const std::optional<double> w = tables.weight1(t2);
            if (!w) return std::nullopt;
            return a1 / *w;
        };
    } else if (!adaptive && fdr) {
        up2 = [&tables, a2](double t1, double t2) -> std::optional<double> {
            const std::size_t n = tables.count1(t1);
            const std::size_t r = tables.intersection(t1, t2);
            if (n == 0 || r == 0) return std::nullopt;
            return static_cast<double>(r) * a2 / static_cast<double>(n);
        };
        up1 = [&tables, a1](double t1, double t2) -> std::optional<double> {
            const std::size_t n = tables.count2(t2);
            const std::size_t r = tables.intersection(t1, t2);
            if (n == 0 || r == 0) return std::nullopt;
            return static_cast<double>(r) * a1 / static_cast<double>(n);
        };
    } else {
        up2 = [&tables, a2, lambda](double t1, double t2) -> std::optional<double> {
            const std::optional<double> w = tables.weight2(t1);
            const std::size_t r =
                tables.intersection(std::min(lambda, t1), std::min(lambda, t2));
            if (!w || r == 0) return std::nullopt;
            return static_cast<double>(r) * a2 / *w;
        };
        up1 = [&tables, a1, lambda](double t1, double t2) -> std::optional<double> {
            const std::optional<double> w = tables.weight1(t2);
            const std::size_t r =
                tables.intersection(std::min(lambda, t1), std::min(lambda, t2));
            if (!w || r == 0) return std::nullopt;
            return static_cast<double>(r) * a1 / *w;
        };
    }
    return solve_threshold_system(up2, up1, a1, a2, max_iter);
}

}  // namespace

ThresholdSolution solve_fwer_thresholds(const TwoStudyPValues& pvals,
                                        const ProcedureConfig& config) {
    return solve_impl(pvals, config, false, false);
}

ThresholdSolution solve_adaptive_fwer_thresholds(const TwoStudyPValues& pvals,
                                                 const ProcedureConfig& config) {
    return solve_impl(pvals, config, true, false);
}

ThresholdSolution solve_fdr_thresholds(const TwoStudyPValues& pvals,
                                       const ProcedureConfig& config) {
    return solve_impl(pvals, config, false, true);
}

ThresholdSolution solve_adaptive_fdr_thresholds(const TwoStudyPValues& pvals,
                                                const ProcedureConfig& config) {
    return solve_impl(pvals, config, true, true);
}

ThresholdSolution solve_thresholds(const TwoStudyPValues& pvals, const ProcedureConfig& config) {
    return solve_impl(pvals, config, config.adaptive, config.error_rate == ErrorRate::Fdr);
}

bool check_non_domination(std::pair<double, double> candidate,
                          const ThresholdSolution& solution,
                          const TwoStudyPValues& pvals, const ProcedureConfig& config) {
    validate(pvals, config);
    const CountTables tables(pvals, config.lambda_value());
    const double a1 = config.alpha1();
    const double a2 = config.alpha2();

    const auto denom_for_t1 = [&](double t2) -> double {
        if (config.adaptive) {
            const std::optional<double> w = tables.weight1(t2);
            return w ? *w : 0.0;
        }
        return static_cast<double>(tables.count2(t2));
    };
    const auto denom_for_t2 = [&](double t1) -> double {
        if (config.adaptive) {
            const std::optional<double> w = tables.weight2(t1);
            return w ? *w : 0.0;
        }
        return static_cast<double>(tables.count1(t1));
    };

    const auto score = [&](double t1, double t2) -> std::pair<double, double> {
        const double d1 = denom_for_t1(t2);
        const double d2 = denom_for_t2(t1);
        const double r1 = d1 > 0.0 ? a1 / d1 : std::numeric_limits<double>::infinity();
        const double r2 = d2 > 0.0 ? a2 / d2 : std::numeric_limits<double>::infinity();
        return {std::min(t1, r1), std::min(r2, t2)};
    };

    const auto cand = score(candidate.first, candidate.second);
    const auto sol = score(solution.t1, solution.t2);
    const bool dominates = cand.first >= sol.first && cand.second >= sol.second &&
                           (cand.first > sol.first || cand.second > sol.second);
    return !dominates;
}

}  // namespace twostudy
