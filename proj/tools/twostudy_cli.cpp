// twostudy — replicability analysis of features measured in two studies.
//
// Subcommands:
//   analyze           r-values and discoveries for a p-value table
//   solve-thresholds  data-dependent selection thresholds
//   simulate          Monte-Carlo power / error-rate study

#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "twostudy/csv.hpp"
#include "twostudy/estimators.hpp"
#include "twostudy/procedures.hpp"
#include "twostudy/rvalues.hpp"
#include "twostudy/selection.hpp"
#include "twostudy/simulation.hpp"
#include "twostudy/thresholds.hpp"

namespace {

using namespace twostudy;

struct AnalyzeOptions {
    std::string input;
    std::string output;
    bool two_sided = false;
    std::string selection = "fixed";
    double t1 = -1.0;
    double t2 = -1.0;
    double alpha = 0.05;
    double c = 0.5;
    double lambda = -1.0;  // default: alpha
    std::string rate = "fdr";
    bool adaptive = false;
    std::string dependence = "independent";
};

ProcedureConfig make_config(const AnalyzeOptions& opt) {
    ProcedureConfig config;
    config.alpha = opt.alpha;
    config.c = opt.c;
    if (opt.lambda > 0.0) config.lambda = opt.lambda;
    config.adaptive = opt.adaptive;
    config.error_rate = opt.rate == "fwer" ? ErrorRate::Fwer : ErrorRate::Fdr;
    config.dependence =
        opt.dependence == "arbitrary" ? Dependence::Arbitrary : Dependence::Independent;
    return config;
}

std::string report_csv_header() {
    return "feature_id,direction,working_p1,working_p2,bonferroni_r,fdr_r,discovered@alpha\n";
}

struct ReportRow {
    std::string feature_id;
    Direction direction;
    double working_p1, working_p2;
    double bonferroni_r, fdr_r;
    bool discovered;
};

std::vector<ReportRow> build_rows(const TwoStudyPValues& pvals, const SelectionOutcome& sel,
                                  const RValueTable& table, const ProcedureConfig& config) {
    std::vector<ReportRow> rows;
    rows.reserve(table.entries.size());
    for (const RValueEntry& e : table.entries) {
        ReportRow row;
        row.feature_id = pvals.feature_id(e.index);
        row.direction = sel.directions[e.index];
        row.working_p1 = sel.working_p1[e.index];
        row.working_p2 = sel.working_p2[e.index];
        row.bonferroni_r = clamp_rvalue(e.bonferroni_r);
        row.fdr_r = clamp_rvalue(e.fdr_r);
        const double decisive = config.error_rate == ErrorRate::Fwer ? e.bonferroni_r : e.fdr_r;
        row.discovered = decisive <= config.alpha;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string rows_to_csv(const std::vector<ReportRow>& rows) {
    std::string out = report_csv_header();
    char buf[320];
    for (const ReportRow& row : rows) {
        std::snprintf(buf, sizeof(buf), "%s,%s,%.6f,%.6f,%.6f,%.6f,%d\n",
                      row.feature_id.c_str(), direction_label(row.direction), row.working_p1,
                      row.working_p2, row.bonferroni_r, row.fdr_r, row.discovered ? 1 : 0);
        out += buf;
    }
    return out;
}

void print_rows_table(const std::vector<ReportRow>& rows) {
    std::printf("%-12s %-6s %10s %10s %12s %10s %6s\n", "feature_id", "dir", "working_p1",
                "working_p2", "bonferroni_r", "fdr_r", "disc");
    for (const ReportRow& row : rows) {
        std::printf("%-12s %-6s %10.4f %10.4f %12.4f %10.4f %6s\n", row.feature_id.c_str(),
                    direction_label(row.direction), row.working_p1, row.working_p2,
                    row.bonferroni_r, row.fdr_r, row.discovered ? "yes" : "no");
    }
}

int run_analyze(const AnalyzeOptions& opt) {
    const PValueMode mode = opt.two_sided ? PValueMode::LeftSided : PValueMode::OneSided;
    const TwoStudyPValues pvals = read_pvalues_csv(opt.input, mode);
    const ProcedureConfig config = make_config(opt);
    validate_config(config);

    if (config.adaptive && config.dependence == Dependence::Arbitrary) {
        throw std::runtime_error(
            "invalid flag combination: --adaptive with --dependence arbitrary");
    }
    if (opt.selection == "fixed" && (opt.t1 <= 0.0 || opt.t2 <= 0.0)) {
        throw std::runtime_error("--selection fixed requires --t1 and --t2 in (0,1]");
    }
    if (opt.selection == "auto" && (opt.t1 > 0.0 || opt.t2 > 0.0)) {
        throw std::runtime_error("invalid flag combination: --selection auto with --t1/--t2");
    }

    const auto emit = [&](const std::vector<ReportRow>& rows, const std::string& note) {
        if (!note.empty()) std::printf("%s\n", note.c_str());
        print_rows_table(rows);
        std::size_t discoveries = 0;
        for (const ReportRow& row : rows) discoveries += row.discovered ? 1 : 0;
        std::printf("%zu feature(s) in working set, %zu discover%s at alpha=%g\n", rows.size(),
                    discoveries, discoveries == 1 ? "y" : "ies", opt.alpha);
        if (!opt.output.empty()) write_text_file(opt.output, rows_to_csv(rows));
    };

    if (pvals.size() == 0) {
        emit({}, "no features selected in both studies");
        return 0;
    }
    validate_pvalues(pvals);

    double t1 = opt.t1;
    double t2 = opt.t2;
    if (opt.selection == "auto") {
        const ThresholdSolution sol = solve_thresholds(pvals, config);
        if (!sol.converged) {
            emit({}, "threshold equations have no solution: no replicability claims");
            return 0;
        }
        std::printf("data-dependent thresholds: t1=%.6g t2=%.6g (%zu iterations)\n", sol.t1,
                    sol.t2, sol.iterations);
        t1 = sol.t1;
        t2 = sol.t2;
    }

    const SelectionOutcome sel = select_by_threshold(pvals, t1, t2);
    RValueTable table;
    SelectionOutcome reported_sel = sel;
    if (config.adaptive) {
        const SelectionOutcome restricted = restrict_by_lambda(sel, config.lambda_value());
        const std::optional<PluginPi0> pi0 = plugin_pi0_cross(restricted);
        if (!pi0) {
            emit({}, "adaptive procedure undefined: empty lambda-restricted selection; "
                     "no discoveries");
            return 0;
        }
        std::printf("plug-in estimates: pi0_1=%.4f pi0_2=%.4f\n", pi0->pi0_1, pi0->pi0_2);
        table = adaptive_rvalues(restricted, *pi0, config.c);
        reported_sel = restricted;
    } else if (config.dependence == Dependence::Arbitrary &&
               config.error_rate == ErrorRate::Fdr) {
        // The harmonic correction guards the FDR variant only; the plain
        // Bonferroni rule is already valid under arbitrary dependence.
        table = arbitrary_dependence_rvalues(sel, config.c);
    } else {
        table = nonadaptive_rvalues(sel, config.c);
    }

    const std::vector<ReportRow> rows = build_rows(pvals, reported_sel, table, config);
    emit(rows, rows.empty() ? "no features selected in both studies" : "");
    return 0;
}

struct SolveOptions {
    std::string input;
    bool two_sided = false;
    double alpha = 0.05;
    double c = 0.5;
    double lambda = -1.0;
    std::string rate = "fwer";
    bool adaptive = false;
    bool verbose = false;
};

int run_solve(const SolveOptions& opt) {
    const PValueMode mode = opt.two_sided ? PValueMode::LeftSided : PValueMode::OneSided;
    const TwoStudyPValues pvals = read_pvalues_csv(opt.input, mode);
    ProcedureConfig config;
    config.alpha = opt.alpha;
    config.c = opt.c;
    if (opt.lambda > 0.0) config.lambda = opt.lambda;
    config.adaptive = opt.adaptive;
    config.error_rate = opt.rate == "fwer" ? ErrorRate::Fwer : ErrorRate::Fdr;

    const ThresholdSolution sol = solve_thresholds(pvals, config);
    if (sol.converged) {
        std::printf("converged=true t1=%.10g t2=%.10g iterations=%zu\n", sol.t1, sol.t2,
                    sol.iterations);
    } else {
        std::printf("converged=false (no replicability claims) iterations=%zu\n",
                    sol.iterations);
    }
    if (opt.verbose) {
        for (std::size_t i = 0; i < sol.trajectory.size(); ++i) {
            std::printf("  iter %zu: t1=%.10g t2=%.10g\n", i + 1, sol.trajectory[i].first,
                        sol.trajectory[i].second);
        }
    }
    return 0;
}

struct SimulateOptions {
    std::string scenario_path;
    std::string output;
    unsigned threads = 0;
    long long seed_override = -1;
    std::string mu_sweep;
};

int run_simulate(const SimulateOptions& opt) {
    SimScenario scenario = scenario_from_json(read_text_file(opt.scenario_path));
    if (opt.seed_override >= 0) scenario.seed = static_cast<std::uint64_t>(opt.seed_override);

    std::string csv;
    if (opt.mu_sweep.empty()) {
        csv = sim_result_csv(run_scenario(scenario, opt.threads));
    } else {
        std::vector<double> mus;
        std::stringstream ss(opt.mu_sweep);
        std::string item;
        while (std::getline(ss, item, ',')) mus.push_back(std::stod(item));
        csv = "procedure,mu,power,power_se,fwer,fwer_se,fdr,fdr_se\n";
        for (double mu : mus) {
            SimScenario s = scenario;
            s.mu = mu;
            const SimResult result = run_scenario(s, opt.threads);
            std::istringstream rows(sim_result_csv(result));
            std::string line;
            std::getline(rows, line);  // drop header
            while (std::getline(rows, line)) {
                const std::size_t comma = line.find(',');
                char mubuf[32];
                std::snprintf(mubuf, sizeof(mubuf), "%g", mu);
                csv += line.substr(0, comma) + "," + mubuf + line.substr(comma) + "\n";
            }
        }
    }

    if (opt.output.empty()) {
        std::fputs(csv.c_str(), stdout);
    } else {
        write_text_file(opt.output, csv);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"replicability analysis for two studies of multiple features"};
    app.require_subcommand(1);

    AnalyzeOptions analyze_opt;
    CLI::App* analyze = app.add_subcommand("analyze", "r-values and discoveries for a table");
    analyze->add_option("--input", analyze_opt.input, "p-value CSV")->required();
    analyze->add_flag("--two-sided", analyze_opt.two_sided,
                      "input holds left-sided p-values (feature_id,p1_left,p2_left)");
    analyze->add_option("--selection", analyze_opt.selection, "fixed|auto")
        ->check(CLI::IsMember({"fixed", "auto"}));
    analyze->add_option("--t1", analyze_opt.t1, "study-1 selection threshold");
    analyze->add_option("--t2", analyze_opt.t2, "study-2 selection threshold");
    analyze->add_option("--alpha", analyze_opt.alpha, "error-rate level")->capture_default_str();
    analyze->add_option("--c", analyze_opt.c, "fraction of alpha for study one")
        ->capture_default_str();
    analyze->add_option("--lambda", analyze_opt.lambda, "plug-in tuning parameter (default alpha)");
    analyze->add_option("--rate", analyze_opt.rate, "fwer|fdr")
        ->check(CLI::IsMember({"fwer", "fdr"}));
    analyze->add_flag("--adaptive", analyze_opt.adaptive, "use plug-in null-fraction estimates");
    analyze->add_option("--dependence", analyze_opt.dependence, "independent|arbitrary")
        ->check(CLI::IsMember({"independent", "arbitrary"}));
    analyze->add_option("--output", analyze_opt.output, "write report CSV here");

    SolveOptions solve_opt;
    CLI::App* solve = app.add_subcommand("solve-thresholds", "data-dependent thresholds");
    solve->add_option("--input", solve_opt.input, "p-value CSV")->required();
    solve->add_flag("--two-sided", solve_opt.two_sided, "input holds left-sided p-values");
    solve->add_option("--alpha", solve_opt.alpha, "error-rate level")->capture_default_str();
    solve->add_option("--c", solve_opt.c, "fraction of alpha for study one")
        ->capture_default_str();
    solve->add_option("--lambda", solve_opt.lambda, "plug-in tuning parameter (default alpha)");
    solve->add_option("--rate", solve_opt.rate, "fwer|fdr")
        ->check(CLI::IsMember({"fwer", "fdr"}));
    solve->add_flag("--adaptive", solve_opt.adaptive, "adaptive threshold equations");
    solve->add_flag("--verbose", solve_opt.verbose, "print the iteration trajectory");

    SimulateOptions sim_opt;
    CLI::App* simulate = app.add_subcommand("simulate", "Monte-Carlo study");
    simulate->add_option("--scenario", sim_opt.scenario_path, "scenario JSON")->required();
    simulate->add_option("--output", sim_opt.output, "write results CSV here");
    simulate->add_option("--threads", sim_opt.threads, "worker threads (0 = hardware)");
    simulate->add_option("--seed", sim_opt.seed_override, "override the scenario seed");
    simulate->add_option("--mu-sweep", sim_opt.mu_sweep,
                         "comma-separated mu values; emits one row per (procedure, mu)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) return run_analyze(analyze_opt);
        if (*solve) return run_solve(solve_opt);
        if (*simulate) return run_simulate(sim_opt);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
