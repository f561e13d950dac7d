#pragma once

#include "twostudy/types.hpp"

namespace twostudy {

// Discovery set of a replicability procedure. rejection_count is the
// step-up count R for the FDR procedures (equal to indices.size()).
// adaptive_undefined flags an empty lambda-restricted selected set: the
// adaptive procedure is undefined and no discoveries are returned; the
// caller decides whether to fall back.
struct Discoveries {
    std::vector<std::size_t> indices;
    std::size_t rejection_count = 0;
    bool adaptive_undefined = false;
    std::optional<PluginPi0> pi0;
};

// FWER-replicability with Bonferroni: rejects j in the working set iff
// p1j <= alpha1/S2 and p2j <= alpha2/S1, realized as {j : bonferroni_r <= alpha}.
Discoveries fwer_procedure(const SelectionOutcome& sel, const ProcedureConfig& config);

// FDR-replicability: the step-up procedure with R = max{r : #{j : (p1j,p2j)
// <= (r*alpha1/S2, r*alpha2/S1)} = r}, realized as {j : fdr_r <= alpha}.
// With config.dependence == Arbitrary the harmonic-corrected base is used.
Discoveries fdr_procedure(const SelectionOutcome& sel, const ProcedureConfig& config);

// Adaptive Bonferroni: plug-in estimates sharpen the denominators,
// {j in S_{1,lambda} n S_{2,lambda} : adaptive bonferroni_r <= alpha}.
Discoveries adaptive_bonferroni_procedure(const SelectionOutcome& sel,
                                          const ProcedureConfig& config);

// Adaptive FDR: the step-up procedure with S2, S1 replaced by
// S_{2,lambda}*pi0_1 and S_{1,lambda}*pi0_2 over the lambda-restricted
// working set, realized as {j : adaptive fdr_r <= alpha}.
Discoveries adaptive_fdr_procedure(const SelectionOutcome& sel, const ProcedureConfig& config);

// Dispatch on config.error_rate / config.adaptive.
Discoveries run_procedure(const SelectionOutcome& sel, const ProcedureConfig& config);

}  // namespace twostudy
