#include "twostudy/procedures.hpp"

#include "twostudy/estimators.hpp"
#include "twostudy/rvalues.hpp"
#include "twostudy/selection.hpp"

namespace twostudy {

namespace {

Discoveries threshold_table(const RValueTable& table, double alpha, bool use_fdr) {
    Discoveries d;
    for (const RValueEntry& e : table.entries) {
        const double r = use_fdr ? e.fdr_r : e.bonferroni_r;
        if (r <= alpha) d.indices.push_back(e.index);
    }
    d.rejection_count = d.indices.size();
    d.pi0 = table.pi0;
    return d;
}

SelectionOutcome with_lambda(const SelectionOutcome& sel, double lambda) {
    if (sel.lambda == lambda) return sel;
    return restrict_by_lambda(sel, lambda);
}

}  // namespace

Discoveries fwer_procedure(const SelectionOutcome& sel, const ProcedureConfig& config) {
    return threshold_table(nonadaptive_rvalues(sel, config.c), config.alpha, false);
}

Discoveries fdr_procedure(const SelectionOutcome& sel, const ProcedureConfig& config) {
    const RValueTable table = config.dependence == Dependence::Arbitrary
                                  ? arbitrary_dependence_rvalues(sel, config.c)
                                  : nonadaptive_rvalues(sel, config.c);
    return threshold_table(table, config.alpha, true);
}

Discoveries adaptive_bonferroni_procedure(const SelectionOutcome& sel,
                                          const ProcedureConfig& config) {
    const SelectionOutcome restricted = with_lambda(sel, config.lambda_value());
    const std::optional<PluginPi0> pi0 = plugin_pi0_cross(restricted);
    if (!pi0) {
        Discoveries d;
        d.adaptive_undefined = true;
        return d;
    }
    return threshold_table(adaptive_rvalues(restricted, *pi0, config.c), config.alpha, false);
}

Discoveries adaptive_fdr_procedure(const SelectionOutcome& sel, const ProcedureConfig& config) {
    const SelectionOutcome restricted = with_lambda(sel, config.lambda_value());
    const std::optional<PluginPi0> pi0 = plugin_pi0_cross(restricted);
    if (!pi0) {
        Discoveries d;
        d.adaptive_undefined = true;
        return d;
    }
    return threshold_table(adaptive_rvalues(restricted, *pi0, config.c), config.alpha, true);
}

Discoveries run_procedure(const SelectionOutcome& sel, const ProcedureConfig& config) {
    if (config.adaptive) {
        return config.error_rate == ErrorRate::Fwer ? adaptive_bonferroni_procedure(sel, config)
                                                    : adaptive_fdr_procedure(sel, config);
    }
    return config.error_rate == ErrorRate::Fwer ? fwer_procedure(sel, config)
                                                : fdr_procedure(sel, config);
}

}  // namespace twostudy
