#pragma once

#include "twostudy/types.hpp"

namespace twostudy {

// Threshold selection: S_i = {j : sel_p_i(j) <= t_i}, t_i in (0,1].
//
// In one-sided mode the thresholds act on the raw p-values and the working
// set is S1 n S2. In left-sided mode the thresholds act on min(p^L, p^R)
// (i.e. two-sided p-value <= 2*t_i), the working set additionally requires
// a concordant direction (max of the two same-side p-values < 0.5), and
// the working p-values are the directionally resolved p' values.
//
// Threshold rules are stable: changing a selected feature's p-value while
// it stays selected leaves the selected set unchanged.
SelectionOutcome select_by_threshold(const TwoStudyPValues& pvals, double t1, double t2);

// Lambda-restriction: S_{i,lambda} = S_i n {j : sel_p_i(j) <= lambda}.
// The working set is recomputed over the restricted sets (directional
// concordance preserved in left-sided mode).
SelectionOutcome restrict_by_lambda(const SelectionOutcome& sel, double lambda);

// Per-study favored direction: Left if p^L < 0.5, Right if p^L > 0.5.
// Exact ties resolve to Left (such features never enter the working set).
Direction favored_direction(double p_left);

}  // namespace twostudy
