#include "twostudy/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numeric>
#include <thread>

#include <json.hpp>

#include "twostudy/procedures.hpp"
#include "twostudy/rng.hpp"
#include "twostudy/rvalues.hpp"
#include "twostudy/selection.hpp"
#include "twostudy/thresholds.hpp"

namespace twostudy {

const std::vector<std::string>& known_procedures() {
    static const std::vector<std::string> names = {
        "bonferroni",          "fdr",
        "adaptive-bonferroni", "adaptive-fdr",
        "bonferroni-dd",       "fdr-dd",
        "adaptive-bonferroni-dd", "adaptive-fdr-dd",
        "max-fwer",            "oracle-max-fwer",
        "bh-max",              "oracle-max-fdr",
        "oracle-bonferroni",   "naive-bh-intersection",
    };
    return names;
}

void validate_scenario(const SimScenario& scenario) {
    double sum = 0.0;
    for (double v : scenario.f) {
        if (v < 0.0) throw std::invalid_argument("configuration fractions must be >= 0");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument("configuration fractions must sum to 1");
    }
    if (scenario.m == 0) throw std::invalid_argument("m must be >= 1");
    if (scenario.replicates == 0) throw std::invalid_argument("no replicates");
    if (!(scenario.rho >= 0.0 && scenario.rho < 1.0)) {
        throw std::invalid_argument("rho must be in [0,1)");
    }
    if (!(scenario.mu > 0.0)) throw std::invalid_argument("mu must be > 0");
    ProcedureConfig config;
    config.alpha = scenario.alpha;
    config.c = scenario.c;
    config.lambda = scenario.lambda_value();
    validate_config(config);
    const double t1 = scenario.t1_value();
    const double t2 = scenario.t2_value();
    if (!(t1 > 0.0 && t1 <= 1.0) || !(t2 > 0.0 && t2 <= 1.0)) {
        throw std::invalid_argument("selection thresholds must be in (0,1]");
    }
    if (scenario.procedures.empty()) {
        throw std::invalid_argument("no procedures requested");
    }
    const auto& known = known_procedures();
    for (const std::string& name : scenario.procedures) {
        if (std::find(known.begin(), known.end(), name) == known.end()) {
            throw std::invalid_argument("unknown procedure: " + name);
        }
    }
}

SimScenario scenario_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    SimScenario s;
    const auto f = j.at("f");
    if (!f.is_array() || f.size() != 4) {
        throw std::invalid_argument("scenario key 'f' must be an array of 4 fractions");
    }
    for (std::size_t k = 0; k < 4; ++k) s.f[k] = f[k].get<double>();
    s.mu = j.at("mu").get<double>();
    s.rho = j.at("rho").get<double>();
    s.m = j.at("m").get<std::size_t>();
    s.replicates = j.at("replicates").get<std::size_t>();
    s.seed = j.at("seed").get<std::uint64_t>();
    s.alpha = j.at("alpha").get<double>();
    s.c = j.at("c").get<double>();
    s.lambda = j.at("lambda").get<double>();
    s.procedures = j.at("procedures").get<std::vector<std::string>>();
    if (j.contains("t1")) s.t1 = j.at("t1").get<double>();
    if (j.contains("t2")) s.t2 = j.at("t2").get<double>();
    validate_scenario(s);
    return s;
}

HypothesisStates states_for(const SimScenario& scenario) {
    const std::size_t m = scenario.m;
    std::array<std::size_t, 4> counts{};
    std::array<double, 4> remainder{};
    std::size_t assigned = 0;
    for (std::size_t k = 0; k < 4; ++k) {
        const double exact = static_cast<double>(m) * scenario.f[k];
        counts[k] = static_cast<std::size_t>(exact);
        remainder[k] = exact - static_cast<double>(counts[k]);
        assigned += counts[k];
    }
    std::array<std::size_t, 4> order{0, 1, 2, 3};
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
    for (std::size_t i = 0; assigned < m; ++i) {
        ++counts[order[i % 4]];
        ++assigned;
    }

    HypothesisStates states;
    states.h1.reserve(m);
    states.h2.reserve(m);
    // Block layout in order (0,0), (1,0), (0,1), (1,1).
    static constexpr std::uint8_t kH1[4] = {0, 1, 0, 1};
    static constexpr std::uint8_t kH2[4] = {0, 0, 1, 1};
    for (std::size_t k = 0; k < 4; ++k) {
        states.h1.insert(states.h1.end(), counts[k], kH1[k]);
        states.h2.insert(states.h2.end(), counts[k], kH2[k]);
    }
    return states;
}

TwoStudyPValues generate_dataset(const SimScenario& scenario, std::size_t replicate_index) {
    const HypothesisStates states = states_for(scenario);
    const std::size_t m = scenario.m;
    const double sr = std::sqrt(scenario.rho);
    const double sn = std::sqrt(1.0 - scenario.rho);

    TwoStudyPValues pvals;
    pvals.mode = PValueMode::OneSided;
    pvals.p1.resize(m);
    pvals.p2.resize(m);
    for (std::size_t study = 1; study <= 2; ++study) {
        const double shared = counter_normal(scenario.seed, replicate_index, study, 0);
        std::vector<double>& p = study == 1 ? pvals.p1 : pvals.p2;
        const std::vector<std::uint8_t>& h = study == 1 ? states.h1 : states.h2;
        for (std::size_t j = 0; j < m; ++j) {
            const double noise =
                sr * shared + sn * counter_normal(scenario.seed, replicate_index, study, j + 1);
            const double mean = h[j] ? scenario.mu : 0.0;
            p[j] = upper_tail_pvalue(mean + noise);
        }
    }
    return pvals;
}

std::vector<std::size_t> oracle_bonferroni(const TwoStudyPValues& pvals,
                                           const HypothesisStates& states,
                                           const ProcedureConfig& config) {
    const std::size_t m = pvals.size();
    const double a1 = config.alpha1();
    const double a2 = config.alpha2();

    // G2(t2): study-one true nulls among study-two's selected; G1(t1)
    // symmetric. Zero counts mean the oracle's threshold is 1.
    const auto g2 = [&](double t2) {
        std::size_t n = 0;
        for (std::size_t j = 0; j < m; ++j) {
            if (pvals.p2[j] <= t2 && states.h1[j] == 0) ++n;
        }
        return n;
    };
    const auto g1 = [&](double t1) {
        std::size_t n = 0;
        for (std::size_t j = 0; j < m; ++j) {
            if (pvals.p1[j] <= t1 && states.h2[j] == 0) ++n;
        }
        return n;
    };

    const auto update_t2 = [&](double t1, double) -> std::optional<double> {
        const std::size_t n = g1(t1);
        return n == 0 ? 1.0 : a2 / static_cast<double>(n);
    };
    const auto update_t1 = [&](double, double t2) -> std::optional<double> {
        const std::size_t n = g2(t2);
        return n == 0 ? 1.0 : a1 / static_cast<double>(n);
    };

    const ThresholdSolution sol =
        solve_threshold_system(update_t2, update_t1, a1, a2, 10 * std::max<std::size_t>(m, 1));
    std::vector<std::size_t> out;
    if (!sol.converged) return out;
    for (std::size_t j = 0; j < m; ++j) {
        if (pvals.p1[j] <= sol.t1 && pvals.p2[j] <= sol.t2) out.push_back(j);
    }
    return out;
}

double oracle_max_fdr_level(double f00, double f11, double alpha) {
    const double b = 1.0 - f00 - f11;
    if (f00 > 0.0) {
        return (-b + std::sqrt(b * b + 4.0 * f00 * alpha)) / (2.0 * f00);
    }
    if (b > 0.0) return alpha / b;
    return 1.0;  // every feature is a true replication
}

namespace {

std::vector<double> max_pvalues(const TwoStudyPValues& pvals) {
    std::vector<double> maxp(pvals.size());
    for (std::size_t j = 0; j < pvals.size(); ++j) {
        maxp[j] = std::max(pvals.p1[j], pvals.p2[j]);
    }
    return maxp;
}

}  // namespace

std::vector<std::size_t> max_oracles(const TwoStudyPValues& pvals,
                                     const HypothesisStates& states, double alpha,
                                     MaxOracleKind kind) {
    const std::vector<double> maxp = max_pvalues(pvals);
    std::vector<std::size_t> out;
    if (kind == MaxOracleKind::Fwer) {
        std::size_t nulls = 0;
        for (std::size_t j = 0; j < states.size(); ++j) {
            if (states.is_null(j)) ++nulls;
        }
        const double threshold = nulls == 0 ? 1.0 : alpha / static_cast<double>(nulls);
        for (std::size_t j = 0; j < maxp.size(); ++j) {
            if (maxp[j] <= threshold) out.push_back(j);
        }
        return out;
    }
    double f00 = 0.0;
    double f11 = 0.0;
    for (std::size_t j = 0; j < states.size(); ++j) {
        if (states.h1[j] == 0 && states.h2[j] == 0) f00 += 1.0;
        if (states.is_true_replication(j)) f11 += 1.0;
    }
    f00 /= static_cast<double>(states.size());
    f11 /= static_cast<double>(states.size());
    return bh_rejections(maxp, oracle_max_fdr_level(f00, f11, alpha));
}

std::vector<std::size_t> naive_bh_intersection(const TwoStudyPValues& pvals, double alpha) {
    const std::vector<std::size_t> d1 = bh_rejections(pvals.p1, alpha);
    const std::vector<std::size_t> d2 = bh_rejections(pvals.p2, alpha);
    std::vector<std::size_t> out;
    std::set_intersection(d1.begin(), d1.end(), d2.begin(), d2.end(), std::back_inserter(out));
    return out;
}

namespace {

struct ReplicateCounts {
    std::size_t claims = 0;
    std::size_t false_claims = 0;
    std::size_t true_claims = 0;
};

ReplicateCounts tally(const std::vector<std::size_t>& discoveries,
                      const HypothesisStates& states) {
    ReplicateCounts counts;
    counts.claims = discoveries.size();
    for (std::size_t j : discoveries) {
        if (states.is_null(j)) {
            ++counts.false_claims;
        } else {
            ++counts.true_claims;
        }
    }
    return counts;
}

// Per-replicate evaluation of every requested procedure. Fixed-threshold
// procedures share one selection pass; data-dependent ones each solve
// their threshold system.
class ReplicateEvaluator {
public:
    ReplicateEvaluator(const SimScenario& scenario, const HypothesisStates& states)
        : scenario_(scenario), states_(states) {
        config_.alpha = scenario.alpha;
        config_.c = scenario.c;
        config_.lambda = scenario.lambda_value();
    }

    std::vector<ReplicateCounts> evaluate(std::size_t replicate_index) const {
        const TwoStudyPValues pvals = generate_dataset(scenario_, replicate_index);
        const SelectionOutcome fixed_sel =
            select_by_threshold(pvals, scenario_.t1_value(), scenario_.t2_value());
        const SelectionOutcome fixed_sel_lambda =
            restrict_by_lambda(fixed_sel, scenario_.lambda_value());

        std::vector<ReplicateCounts> out;
        out.reserve(scenario_.procedures.size());
        for (const std::string& name : scenario_.procedures) {
            out.push_back(tally(run_one(name, pvals, fixed_sel, fixed_sel_lambda), states_));
        }
        return out;
    }

private:
    std::vector<std::size_t> run_one(const std::string& name, const TwoStudyPValues& pvals,
                                     const SelectionOutcome& fixed_sel,
                                     const SelectionOutcome& fixed_sel_lambda) const {
        if (name == "bonferroni") return fwer_procedure(fixed_sel, config_).indices;
        if (name == "fdr") return fdr_procedure(fixed_sel, config_).indices;
        if (name == "adaptive-bonferroni") {
            return adaptive_bonferroni_procedure(fixed_sel_lambda, config_).indices;
        }
        if (name == "adaptive-fdr") {
            return adaptive_fdr_procedure(fixed_sel_lambda, config_).indices;
        }
        if (name == "bonferroni-dd") {
            return data_dependent(pvals, ErrorRate::Fwer, false);
        }
        if (name == "fdr-dd") {
            return data_dependent(pvals, ErrorRate::Fdr, false);
        }
        if (name == "adaptive-bonferroni-dd") {
            return data_dependent(pvals, ErrorRate::Fwer, true);
        }
        if (name == "adaptive-fdr-dd") {
            return data_dependent(pvals, ErrorRate::Fdr, true);
        }
        if (name == "max-fwer") {
            const std::vector<double> maxp = max_pvalues(pvals);
            const double threshold = scenario_.alpha / static_cast<double>(pvals.size());
            std::vector<std::size_t> out;
            for (std::size_t j = 0; j < maxp.size(); ++j) {
                if (maxp[j] <= threshold) out.push_back(j);
            }
            return out;
        }
        if (name == "oracle-max-fwer") {
            return max_oracles(pvals, states_, scenario_.alpha, MaxOracleKind::Fwer);
        }
        if (name == "bh-max") {
            return bh_rejections(max_pvalues(pvals), scenario_.alpha);
        }
        if (name == "oracle-max-fdr") {
            return max_oracles(pvals, states_, scenario_.alpha, MaxOracleKind::Fdr);
        }
        if (name == "oracle-bonferroni") {
            return oracle_bonferroni(pvals, states_, config_);
        }
        if (name == "naive-bh-intersection") {
            return naive_bh_intersection(pvals, scenario_.alpha);
        }
        throw std::logic_error("unhandled procedure: " + name);
    }

    std::vector<std::size_t> data_dependent(const TwoStudyPValues& pvals, ErrorRate rate,
                                            bool adaptive) const {
        ProcedureConfig config = config_;
        config.error_rate = rate;
        config.adaptive = adaptive;
        const ThresholdSolution sol = solve_thresholds(pvals, config);
        if (!sol.converged) return {};
        const SelectionOutcome sel = select_by_threshold(pvals, sol.t1, sol.t2);
        return run_procedure(sel, config).indices;
    }

    const SimScenario& scenario_;
    const HypothesisStates& states_;
    ProcedureConfig config_;
};

}  // namespace

SimResult run_scenario(const SimScenario& scenario, unsigned threads) {
    validate_scenario(scenario);
    const HypothesisStates states = states_for(scenario);
    const ReplicateEvaluator evaluator(scenario, states);
    const std::size_t reps = scenario.replicates;
    const std::size_t nproc = scenario.procedures.size();

    std::vector<std::vector<ReplicateCounts>> records(reps);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, reps));

    std::exception_ptr worker_error;
    std::mutex error_mutex;
    const auto worker = [&](std::size_t begin, std::size_t end) {
        try {
            for (std::size_t r = begin; r < end; ++r) records[r] = evaluator.evaluate(r);
        } catch (...) {
            const std::lock_guard<std::mutex> lock(error_mutex);
            if (!worker_error) worker_error = std::current_exception();
        }
    };
    if (threads <= 1) {
        worker(0, reps);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (reps + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t begin = static_cast<std::size_t>(t) * chunk;
            const std::size_t end = std::min(reps, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(worker, begin, end);
        }
        for (std::thread& th : pool) th.join();
    }
    if (worker_error) std::rethrow_exception(worker_error);

    std::size_t n11 = 0;
    for (std::size_t j = 0; j < states.size(); ++j) {
        if (states.is_true_replication(j)) ++n11;
    }

    SimResult result;
    result.scenario = scenario;
    result.procedures.resize(nproc);
    for (std::size_t p = 0; p < nproc; ++p) {
        ProcedureStats& stats = result.procedures[p];
        stats.name = scenario.procedures[p];

        double sum_any_false = 0.0;
        double sum_fdp = 0.0, sumsq_fdp = 0.0;
        double sum_power = 0.0, sumsq_power = 0.0;
        std::size_t n_power = 0;
        // Serial reduction in replicate order keeps results independent of
        // the thread count.
        for (std::size_t r = 0; r < reps; ++r) {
            const ReplicateCounts& counts = records[r][p];
            sum_any_false += counts.false_claims > 0 ? 1.0 : 0.0;
            const double fdp = static_cast<double>(counts.false_claims) /
                               static_cast<double>(std::max<std::size_t>(counts.claims, 1));
            sum_fdp += fdp;
            sumsq_fdp += fdp * fdp;
            if (n11 > 0) {
                const double power =
                    static_cast<double>(counts.true_claims) / static_cast<double>(n11);
                sum_power += power;
                sumsq_power += power * power;
                ++n_power;
            }
        }

        const double n = static_cast<double>(reps);
        const auto sample_se = [](double sum, double sumsq, double count) {
            if (count < 2.0) return 0.0;
            const double mean = sum / count;
            const double var = std::max(0.0, (sumsq - count * mean * mean) / (count - 1.0));
            return std::sqrt(var / count);
        };

        stats.fwer = sum_any_false / n;
        stats.fwer_se = std::sqrt(stats.fwer * (1.0 - stats.fwer) / n);
        stats.fdr = sum_fdp / n;
        stats.fdr_se = sample_se(sum_fdp, sumsq_fdp, n);
        if (n_power > 0) {
            stats.power_defined = true;
            stats.power = sum_power / static_cast<double>(n_power);
            stats.power_se = sample_se(sum_power, sumsq_power, static_cast<double>(n_power));
        }
    }
    return result;
}

std::string sim_result_csv(const SimResult& result) {
    std::string out = "procedure,power,power_se,fwer,fwer_se,fdr,fdr_se\n";
    char buf[256];
    for (const ProcedureStats& stats : result.procedures) {
        if (stats.power_defined) {
            std::snprintf(buf, sizeof(buf), "%s,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                          stats.name.c_str(), stats.power, stats.power_se, stats.fwer,
                          stats.fwer_se, stats.fdr, stats.fdr_se);
        } else {
            std::snprintf(buf, sizeof(buf), "%s,nan,nan,%.6f,%.6f,%.6f,%.6f\n",
                          stats.name.c_str(), stats.fwer, stats.fwer_se, stats.fdr,
                          stats.fdr_se);
        }
        out += buf;
    }
    return out;
}

}  // namespace twostudy
