#pragma once

#include <span>

#include "twostudy/types.hpp"

namespace twostudy {

enum class AdjustKind { Bonferroni, BH };

// Step-up transform shared by every FDR-type r-value and by the BH
// adjustment: out[j] = min over {i : base[i] >= base[j]} of
// base[i] / rank(base[i]), with maximum rank for ties.
// Single sorted sweep with a running minimum; the literal O(n^2) formula
// is kept in the test suite as an oracle.
std::vector<double> fdr_step(std::span<const double> base);

// Sum_{i=1..n} 1/i.
double harmonic_number(std::size_t n);

// Non-adaptive r-values over the working set:
//   bonferroni_r[j] = max(S2 * p1j / c, S1 * p2j / (1-c))
//   fdr_r = fdr_step(bonferroni_r)
// using the working p-values (p' in left-sided mode) and the full selected
// counts S1, S2. Empty working set yields an empty table.
RValueTable nonadaptive_rvalues(const SelectionOutcome& sel, double c);

// Adaptive r-values over the lambda-restricted working set:
//   bonferroni_r[j] = max(pi0_1 * S_{2,lambda} * p1j / c,
//                         pi0_2 * S_{1,lambda} * p2j / (1-c))
//   fdr_r = fdr_step(bonferroni_r)
RValueTable adaptive_rvalues(const SelectionOutcome& sel, const PluginPi0& pi0, double c);

// Arbitrary-dependence variant: the base r-values carry harmonic-sum
// corrections,
//   base[j] = max(H(S2) * S2 * p1j / c, H(S1) * S1 * p2j / (1-c)),
// and fdr_r = fdr_step(base). Elementwise base >= the non-adaptive
// Bonferroni r-value.
RValueTable arbitrary_dependence_rvalues(const SelectionOutcome& sel, double c);

// Comparator r-values over all m features (no selection step).
// One-sided mode: the per-feature statistic is max(p1j, p2j); left-sided
// mode: 2 * min(max(p1L, p2L), max(p1R, p2R)).
// Bonferroni kind returns m * statistic, BH kind its step-up transform.
std::vector<double> max_comparator_rvalues(const TwoStudyPValues& pvals, AdjustKind kind);

// Single-study adjusted p-values: Bonferroni m*p, or its step-up (BH).
std::vector<double> adjusted_pvalues(std::span<const double> pvalues, AdjustKind kind);

// Indices rejected by BH at level alpha (adjusted p-value <= alpha).
std::vector<std::size_t> bh_rejections(std::span<const double> pvalues, double alpha);

}  // namespace twostudy
