#include "twostudy/selection.hpp"

#include <algorithm>

namespace twostudy {

namespace {

std::vector<std::size_t> indices_at_most(const std::vector<double>& values, double t) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < values.size(); ++j) {
        if (values[j] <= t) out.push_back(j);
    }
    return out;
}

std::vector<std::size_t> sorted_intersection(const std::vector<std::size_t>& a,
                                             const std::vector<std::size_t>& b) {
    std::vector<std::size_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Working set: intersection of the selected sets, restricted to features
// whose claimed direction is concordant in left-sided mode.
std::vector<std::size_t> make_working_set(const std::vector<std::size_t>& a,
                                          const std::vector<std::size_t>& b,
                                          const SelectionOutcome& sel) {
    std::vector<std::size_t> inter = sorted_intersection(a, b);
    if (sel.mode == PValueMode::OneSided) return inter;
    std::vector<std::size_t> out;
    for (std::size_t j : inter) {
        if (sel.directions[j] != Direction::None) out.push_back(j);
    }
    return out;
}

}  // namespace

Direction favored_direction(double p_left) {
    if (p_left > 0.5) return Direction::Right;
    return Direction::Left;
}

SelectionOutcome select_by_threshold(const TwoStudyPValues& pvals, double t1, double t2) {
    if (!(t1 > 0.0 && t1 <= 1.0) || !(t2 > 0.0 && t2 <= 1.0)) {
        throw std::invalid_argument("selection thresholds must be in (0,1]");
    }

    const std::size_t m = pvals.size();
    SelectionOutcome sel;
    sel.m = m;
    sel.mode = pvals.mode;
    sel.t1 = t1;
    sel.t2 = t2;

    if (pvals.mode == PValueMode::OneSided) {
        sel.sel_p1 = pvals.p1;
        sel.sel_p2 = pvals.p2;
        sel.working_p1 = pvals.p1;
        sel.working_p2 = pvals.p2;
        sel.directions.assign(m, Direction::None);
    } else {
        sel.sel_p1.resize(m);
        sel.sel_p2.resize(m);
        sel.working_p1.resize(m);
        sel.working_p2.resize(m);
        sel.directions.resize(m);
        for (std::size_t j = 0; j < m; ++j) {
            const double l1 = pvals.p1[j], r1 = pvals.right1(j);
            const double l2 = pvals.p2[j], r2 = pvals.right2(j);
            sel.sel_p1[j] = std::min(l1, r1);
            sel.sel_p2[j] = std::min(l2, r2);
            // p'_1j follows study two's favored side; p'_2j study one's.
            sel.working_p1[j] = favored_direction(l2) == Direction::Left ? l1 : r1;
            sel.working_p2[j] = favored_direction(l1) == Direction::Left ? l2 : r2;
            // Common claimed direction requires both same-side p-values < 0.5.
            if (std::max(l1, l2) < 0.5) {
                sel.directions[j] = Direction::Left;
            } else if (std::max(r1, r2) < 0.5) {
                sel.directions[j] = Direction::Right;
            } else {
                sel.directions[j] = Direction::None;
            }
        }
    }

    sel.s1 = indices_at_most(sel.sel_p1, t1);
    sel.s2 = indices_at_most(sel.sel_p2, t2);
    sel.s1_lambda = sel.s1;
    sel.s2_lambda = sel.s2;
    sel.working = make_working_set(sel.s1, sel.s2, sel);
    return sel;
}

SelectionOutcome restrict_by_lambda(const SelectionOutcome& sel, double lambda) {
    if (!(lambda > 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("lambda must be in (0,1]");
    }
    SelectionOutcome out = sel;
    out.lambda = lambda;
    out.s1_lambda.clear();
    out.s2_lambda.clear();
    for (std::size_t j : sel.s1) {
        if (sel.sel_p1[j] <= lambda) out.s1_lambda.push_back(j);
    }
    for (std::size_t j : sel.s2) {
        if (sel.sel_p2[j] <= lambda) out.s2_lambda.push_back(j);
    }
    out.working = make_working_set(out.s1_lambda, out.s2_lambda, out);
    return out;
}

}  // namespace twostudy
