#include "twostudy/estimators.hpp"

namespace twostudy {

double plugin_pi0_single(std::span<const double> pvalues, double lambda) {
    if (pvalues.empty()) {
        throw std::invalid_argument("plugin_pi0_single: empty p-value vector");
    }
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw std::invalid_argument("lambda must be in (0,1)");
    }
    std::size_t exceed = 0;
    for (double p : pvalues) {
        if (p > lambda) ++exceed;
    }
    return static_cast<double>(exceed + 1) /
           (static_cast<double>(pvalues.size()) * (1.0 - lambda));
}

std::optional<PluginPi0> plugin_pi0_cross(const SelectionOutcome& sel) {
    const double lambda = sel.lambda;
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw std::invalid_argument("plugin_pi0_cross: selection carries no lambda restriction in (0,1)");
    }
    if (sel.s1_lambda.empty() || sel.s2_lambda.empty()) {
        return std::nullopt;
    }

    std::size_t exceed1 = 0;  // study-1 working p-values over S_{2,lambda}
    for (std::size_t j : sel.s2_lambda) {
        if (sel.working_p1[j] > lambda) ++exceed1;
    }
    std::size_t exceed2 = 0;  // study-2 working p-values over S_{1,lambda}
    for (std::size_t j : sel.s1_lambda) {
        if (sel.working_p2[j] > lambda) ++exceed2;
    }

    PluginPi0 pi0;
    pi0.pi0_1 = static_cast<double>(exceed1 + 1) /
                (static_cast<double>(sel.s2_lambda.size()) * (1.0 - lambda));
    pi0.pi0_2 = static_cast<double>(exceed2 + 1) /
                (static_cast<double>(sel.s1_lambda.size()) * (1.0 - lambda));
    return pi0;
}

}  // namespace twostudy
