#pragma once

#include <optional>
#include <span>

#include "twostudy/types.hpp"

namespace twostudy {

// Slightly inflated plug-in estimate of the fraction of nulls in a single
// study: (#{p > lambda} + 1) / (m * (1 - lambda)). Upward biased; may
// exceed 1 and is deliberately not clamped.
double plugin_pi0_single(std::span<const double> pvalues, double lambda);

// Cross-study plug-in estimates over the lambda-restricted selected sets:
//
//   pi0_1 = (1 + #{j in S_{2,lambda} : working_p1(j) > lambda}) / (S_{2,lambda} * (1 - lambda))
//   pi0_2 = (1 + #{j in S_{1,lambda} : working_p2(j) > lambda}) / (S_{1,lambda} * (1 - lambda))
//
// Requires sel to carry a lambda restriction in (0,1) (restrict_by_lambda).
// Returns nullopt when either restricted set is empty: the adaptive
// procedures are then undefined and the caller decides the fallback.
std::optional<PluginPi0> plugin_pi0_cross(const SelectionOutcome& sel);

}  // namespace twostudy
