#include "twostudy/types.hpp"

namespace twostudy {

namespace {

void check_unit_interval(const std::vector<double>& p, const char* which) {
    for (double v : p) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::invalid_argument(std::string(which) + ": p-value out of range [0,1]");
        }
    }
}

void check_open_unit(double v, const char* name) {
    if (!(v > 0.0 && v < 1.0)) {
        throw std::invalid_argument(std::string(name) + " must be in (0,1)");
    }
}

}  // namespace

void validate_pvalues(const TwoStudyPValues& pvals) {
    if (pvals.p1.empty()) {
        throw std::invalid_argument("p-value vectors must be nonempty");
    }
    if (pvals.p1.size() != pvals.p2.size()) {
        throw std::invalid_argument("study p-value vectors have mismatched lengths");
    }
    if (!pvals.feature_ids.empty() && pvals.feature_ids.size() != pvals.p1.size()) {
        throw std::invalid_argument("feature_ids length does not match p-value vectors");
    }
    check_unit_interval(pvals.p1, "study 1");
    check_unit_interval(pvals.p2, "study 2");
}

void validate_config(const ProcedureConfig& config) {
    check_open_unit(config.alpha, "alpha");
    check_open_unit(config.c, "c");
    check_open_unit(config.lambda_value(), "lambda");
}

void validate(const TwoStudyPValues& pvals, const ProcedureConfig& config) {
    validate_pvalues(pvals);
    validate_config(config);
}

}  // namespace twostudy
