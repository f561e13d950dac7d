#include "twostudy/rvalues.hpp"

#include <algorithm>
#include <numeric>

namespace twostudy {

std::vector<double> fdr_step(std::span<const double> base) {
    const std::size_t n = base.size();
    std::vector<double> out(n);
    if (n == 0) return out;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return base[a] < base[b]; });

    // Maximum rank for ties: every entry of a tied block divides by the
    // block's last 1-based position.
    std::vector<double> candidate(n);
    std::size_t k = 0;
    while (k < n) {
        std::size_t end = k;
        while (end + 1 < n && base[order[end + 1]] == base[order[k]]) ++end;
        const double c = base[order[k]] / static_cast<double>(end + 1);
        for (std::size_t i = k; i <= end; ++i) candidate[i] = c;
        k = end + 1;
    }

    double running = candidate[n - 1];
    for (std::size_t i = n; i-- > 0;) {
        running = std::min(running, candidate[i]);
        out[order[i]] = running;
    }
    return out;
}

double harmonic_number(std::size_t n) {
    double h = 0.0;
    for (std::size_t i = 1; i <= n; ++i) h += 1.0 / static_cast<double>(i);
    return h;
}

namespace {

RValueTable table_from_base(const SelectionOutcome& sel, std::vector<double> base,
                            RValueVariant variant, double c) {
    RValueTable table;
    table.variant = variant;
    table.c = c;
    table.lambda = sel.lambda;
    std::vector<double> fdr = fdr_step(base);
    table.entries.reserve(sel.working.size());
    for (std::size_t k = 0; k < sel.working.size(); ++k) {
        RValueEntry e;
        e.index = sel.working[k];
        e.feature_id = std::to_string(e.index + 1);
        e.bonferroni_r = base[k];
        e.fdr_r = fdr[k];
        table.entries.push_back(std::move(e));
    }
    return table;
}

}  // namespace

RValueTable nonadaptive_rvalues(const SelectionOutcome& sel, double c) {
    const double w1 = static_cast<double>(sel.s2.size());
    const double w2 = static_cast<double>(sel.s1.size());
    std::vector<double> base;
    base.reserve(sel.working.size());
    for (std::size_t j : sel.working) {
        base.push_back(std::max(w1 * sel.working_p1[j] / c,
                                w2 * sel.working_p2[j] / (1.0 - c)));
    }
    return table_from_base(sel, std::move(base), RValueVariant::NonAdaptive, c);
}

RValueTable adaptive_rvalues(const SelectionOutcome& sel, const PluginPi0& pi0, double c) {
    const double w1 = pi0.pi0_1 * static_cast<double>(sel.s2_lambda.size());
    const double w2 = pi0.pi0_2 * static_cast<double>(sel.s1_lambda.size());
    std::vector<double> base;
    base.reserve(sel.working.size());
    for (std::size_t j : sel.working) {
        base.push_back(std::max(w1 * sel.working_p1[j] / c,
                                w2 * sel.working_p2[j] / (1.0 - c)));
    }
    RValueTable table = table_from_base(sel, std::move(base), RValueVariant::Adaptive, c);
    table.pi0 = pi0;
    return table;
}

RValueTable arbitrary_dependence_rvalues(const SelectionOutcome& sel, double c) {
    const double s1 = static_cast<double>(sel.s1.size());
    const double s2 = static_cast<double>(sel.s2.size());
    const double w1 = harmonic_number(sel.s2.size()) * s2;
    const double w2 = harmonic_number(sel.s1.size()) * s1;
    std::vector<double> base;
    base.reserve(sel.working.size());
    for (std::size_t j : sel.working) {
        base.push_back(std::max(w1 * sel.working_p1[j] / c,
                                w2 * sel.working_p2[j] / (1.0 - c)));
    }
    return table_from_base(sel, std::move(base), RValueVariant::ArbitraryDependence, c);
}

std::vector<double> max_comparator_rvalues(const TwoStudyPValues& pvals, AdjustKind kind) {
    const std::size_t m = pvals.size();
    std::vector<double> stat(m);
    if (pvals.mode == PValueMode::OneSided) {
        for (std::size_t j = 0; j < m; ++j) {
            stat[j] = std::max(pvals.p1[j], pvals.p2[j]);
        }
    } else {
        for (std::size_t j = 0; j < m; ++j) {
            const double max_left = std::max(pvals.p1[j], pvals.p2[j]);
            const double max_right = std::max(pvals.right1(j), pvals.right2(j));
            stat[j] = 2.0 * std::min(max_left, max_right);
        }
    }
    for (double& v : stat) v *= static_cast<double>(m);
    if (kind == AdjustKind::Bonferroni) return stat;
    return fdr_step(stat);
}

std::vector<double> adjusted_pvalues(std::span<const double> pvalues, AdjustKind kind) {
    std::vector<double> adj(pvalues.begin(), pvalues.end());
    for (double& v : adj) v *= static_cast<double>(pvalues.size());
    if (kind == AdjustKind::Bonferroni) return adj;
    return fdr_step(adj);
}

std::vector<std::size_t> bh_rejections(std::span<const double> pvalues, double alpha) {
    std::vector<double> adj = adjusted_pvalues(pvalues, AdjustKind::BH);
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < adj.size(); ++j) {
        if (adj[j] <= alpha) out.push_back(j);
    }
    return out;
}

}  // namespace twostudy
