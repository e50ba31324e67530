#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "dpea/core/dp.hpp"
#include "dpea/errors.hpp"
#include "dpea/evo/engine.hpp"
#include "dpea/harness/instance_io.hpp"
#include "dpea/oracles/oracles.hpp"
#include "dpea/rng.hpp"
#include "dpea/trim/schemes.hpp"
#include "dpea/version.hpp"

namespace dpea::harness {

enum class ProblemKind { knapsack, tsp, sssp, apsp };
enum class Algorithm { dp, ea_standard, ea_homogeneous, dp_trimmed, ea_fpras };
enum class ReportFormat { csv, json };

inline const char* to_string(ProblemKind k) {
    switch (k) {
    case ProblemKind::knapsack: return "knapsack";
    case ProblemKind::tsp: return "tsp";
    case ProblemKind::sssp: return "sssp";
    case ProblemKind::apsp: return "apsp";
    }
    return "?";
}

inline const char* to_string(Algorithm a) {
    switch (a) {
    case Algorithm::dp: return "dp";
    case Algorithm::ea_standard: return "ea-standard";
    case Algorithm::ea_homogeneous: return "ea-homogeneous";
    case Algorithm::dp_trimmed: return "dp-trimmed";
    case Algorithm::ea_fpras: return "ea-fpras";
    }
    return "?";
}

struct ExperimentConfig {
    ProblemKind problem = ProblemKind::knapsack;
    std::string instance_path;
    Algorithm algorithm = Algorithm::dp;
    double epsilon = 0.5;
    int trials = 1;
    std::uint64_t seed = 1;
    double budget_mult = 50.0;
    int source = 1; ///< sssp source vertex
    std::string out_path;
    ReportFormat format = ReportFormat::csv;
};

struct TrialRecord {
    std::uint64_t seed = 0;
    std::uint64_t iterations = 0;
    std::uint64_t evals = 0;
    bool success = false;
    std::int64_t value = 0;
    double bound = 0;
    double ratio = 0;
    double wallclock_ms = 0;
};

struct Aggregate {
    double mean_iterations = 0;
    double median_iterations = 0;
    double mean_ratio = 0;
    double success_rate = 0;
    double ci95_low = 0; ///< binomial normal-approximation interval
    double ci95_high = 0;
};

struct CampaignResult {
    std::vector<TrialRecord> records;
    Aggregate aggregate;

    bool all_succeeded() const {
        return std::all_of(records.begin(), records.end(),
                           [](const TrialRecord& r) { return r.success; });
    }
};

inline Aggregate aggregate_records(std::vector<TrialRecord> records) {
    if (records.empty()) throw ValidationError("no records to aggregate");
    Aggregate agg;
    std::vector<double> iters;
    double successes = 0;
    for (const auto& r : records) {
        iters.push_back(static_cast<double>(r.iterations));
        agg.mean_iterations += static_cast<double>(r.iterations);
        agg.mean_ratio += r.ratio;
        successes += r.success ? 1.0 : 0.0;
    }
    const double n = static_cast<double>(records.size());
    agg.mean_iterations /= n;
    agg.mean_ratio /= n;
    agg.success_rate = successes / n;
    std::sort(iters.begin(), iters.end());
    const std::size_t mid = iters.size() / 2;
    agg.median_iterations =
        iters.size() % 2 ? iters[mid] : (iters[mid - 1] + iters[mid]) / 2.0;
    const double half = 1.96 * std::sqrt(agg.success_rate * (1.0 - agg.success_rate) / n);
    agg.ci95_low = std::max(0.0, agg.success_rate - half);
    agg.ci95_high = std::min(1.0, agg.success_rate + half);
    return agg;
}

namespace detail {

template <typename Fn>
void parallel_for(int count, Fn fn) {
    const unsigned hw = std::thread::hardware_concurrency();
    const unsigned workers = std::min<unsigned>(hw ? hw : 1, static_cast<unsigned>(count));
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& t : pool) t.join();
}

inline double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

} // namespace detail

/// Expected-optimization-time bound for the given mode, evaluated on the
/// measured per-phase set sizes: phase count times the natural log of the
/// total kept states times the per-phase work sum, plus the initial
/// population size. The phase-free variant uses the dominance width instead.
template <Problem P>
double theoretical_bound(const P& spec, const DpResult<P>& dp, const EaMode& mode) {
    const double s0 = static_cast<double>(spec.initial_states().size());
    const int n = spec.phase_count();
    if (mode.phase_free()) {
        if (!spec.homogeneous())
            throw ValidationError("phase-free bound requires a homogeneous adapter");
        const double w = static_cast<double>(width_of(spec));
        double fsum = 0;
        for (int i = 1; i <= n; ++i) fsum += spec.transition_count(i);
        return w * std::log(w) * fsum + s0;
    }
    const double dp_size = static_cast<double>(dp.metrics.dp_size());
    double work = 0;
    for (int i = 0; i < n; ++i)
        work += static_cast<double>(dp.metrics.states_kept_per_phase[static_cast<std::size_t>(i)]) *
                spec.transition_count(i + 1);
    return n * std::log(dp_size) * work + s0;
}

/// Runs `trials` seeded exact-EA runs against the reference computed by the
/// dynamic program, each stopped once the final phase dominates the
/// reference or the budget (multiplier times the expected-time bound) runs
/// out. Trials execute in parallel; records are merged sorted by seed.
template <Problem P>
CampaignResult run_ea_campaign(const P& spec, EaMode mode, int trials, std::uint64_t seed,
                               double budget_mult) {
    if (trials < 1) throw ValidationError("trials must be >= 1");
    if (budget_mult < 1) throw ValidationError("budget multiplier must be >= 1");
    const auto dp = dp_solve(spec);
    const double bound = theoretical_bound(spec, dp, mode);
    const auto budget = static_cast<std::uint64_t>(std::ceil(budget_mult * bound));
    const auto& reference = dp.final_set();

    CampaignResult result;
    result.records.resize(static_cast<std::size_t>(trials));
    detail::parallel_for(trials, [&](int t) {
        const auto trial_seed = derive_seed(seed, static_cast<std::uint64_t>(t));
        auto rng = make_rng(trial_seed);
        const auto t0 = std::chrono::steady_clock::now();
        auto report = ea_run(spec, mode, StopPolicy<P>::reach(reference, budget), rng);
        TrialRecord rec;
        rec.seed = trial_seed;
        rec.iterations = report.iterations;
        rec.evals = report.objective_evaluations;
        rec.success = report.success;
        rec.value = spec.summary_value(report.final_states);
        rec.bound = bound;
        rec.ratio = static_cast<double>(report.iterations) / bound;
        rec.wallclock_ms = detail::elapsed_ms(t0);
        result.records[static_cast<std::size_t>(t)] = rec;
    });
    std::sort(result.records.begin(), result.records.end(),
              [](const TrialRecord& a, const TrialRecord& b) { return a.seed < b.seed; });
    result.aggregate = aggregate_records(result.records);
    return result;
}

/// One deterministic dynamic-program run per trial. The iterations column
/// carries the number of states computed (initial states plus transition
/// applications), which is also the bound column.
template <Problem P>
CampaignResult run_dp_campaign(const P& spec, int trials, std::uint64_t seed) {
    if (trials < 1) throw ValidationError("trials must be >= 1");
    CampaignResult result;
    result.records.resize(static_cast<std::size_t>(trials));
    detail::parallel_for(trials, [&](int t) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto dp = dp_solve(spec);
        const auto states_computed =
            spec.initial_states().size() + dp.metrics.transition_evals;
        TrialRecord rec;
        rec.seed = derive_seed(seed, static_cast<std::uint64_t>(t));
        rec.iterations = states_computed;
        rec.evals = states_computed;
        rec.success = true;
        auto finals = dp.final_set().states();
        rec.value = spec.summary_value(finals);
        rec.bound = static_cast<double>(states_computed);
        rec.ratio = 1.0;
        rec.wallclock_ms = detail::elapsed_ms(t0);
        result.records[static_cast<std::size_t>(t)] = rec;
    });
    std::sort(result.records.begin(), result.records.end(),
              [](const TrialRecord& a, const TrialRecord& b) { return a.seed < b.seed; });
    result.aggregate = aggregate_records(result.records);
    return result;
}

inline bool approx_within(std::int64_t value, std::int64_t optimum, double epsilon) {
    return static_cast<long double>(value) * (1.0L + static_cast<long double>(epsilon)) >=
           static_cast<long double>(optimum);
}

/// Deterministic trimmed-DP trials; success means the value meets the
/// (1 + epsilon) guarantee against the brute-force optimum.
inline CampaignResult run_fptas_campaign(const problems::KnapsackProblem& spec, double epsilon,
                                         int trials, std::uint64_t seed) {
    if (trials < 1) throw ValidationError("trials must be >= 1");
    const auto cert = spec.certificate();
    const auto oracle = oracles::knapsack_bruteforce(spec.instance());
    CampaignResult result;
    result.records.resize(static_cast<std::size_t>(trials));
    detail::parallel_for(trials, [&](int t) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto run = dp_trimmed(spec, cert, epsilon);
        TrialRecord rec;
        rec.seed = derive_seed(seed, static_cast<std::uint64_t>(t));
        rec.iterations = run.transition_evals;
        rec.evals = run.transition_evals;
        rec.success = approx_within(run.value, oracle.optimum, epsilon);
        rec.value = run.value;
        rec.bound = static_cast<double>(run.transition_evals);
        rec.ratio = 1.0;
        rec.wallclock_ms = detail::elapsed_ms(t0);
        result.records[static_cast<std::size_t>(t)] = rec;
    });
    std::sort(result.records.begin(), result.records.end(),
              [](const TrialRecord& a, const TrialRecord& b) { return a.seed < b.seed; });
    result.aggregate = aggregate_records(result.records);
    return result;
}

/// Seeded randomized-scheme trials; success means the value meets the
/// (1 + epsilon) guarantee against the brute-force optimum.
inline CampaignResult run_fpras_campaign(const problems::KnapsackProblem& spec, double epsilon,
                                         int trials, std::uint64_t seed) {
    if (trials < 1) throw ValidationError("trials must be >= 1");
    const auto cert = spec.certificate();
    const auto oracle = oracles::knapsack_bruteforce(spec.instance());
    CampaignResult result;
    result.records.resize(static_cast<std::size_t>(trials));
    detail::parallel_for(trials, [&](int t) {
        const auto trial_seed = derive_seed(seed, static_cast<std::uint64_t>(t));
        auto rng = make_rng(trial_seed);
        const auto t0 = std::chrono::steady_clock::now();
        const auto run = ea_fpras(spec, cert, epsilon, rng);
        TrialRecord rec;
        rec.seed = trial_seed;
        rec.iterations = run.iterations;
        rec.evals = run.objective_evaluations;
        rec.success = run.success && approx_within(run.value, oracle.optimum, epsilon);
        rec.value = run.value;
        rec.bound = run.params.tau;
        rec.ratio = run.params.tau > 0
                        ? static_cast<double>(run.iterations) / run.params.tau
                        : 0.0;
        rec.wallclock_ms = detail::elapsed_ms(t0);
        result.records[static_cast<std::size_t>(t)] = rec;
    });
    std::sort(result.records.begin(), result.records.end(),
              [](const TrialRecord& a, const TrialRecord& b) { return a.seed < b.seed; });
    result.aggregate = aggregate_records(result.records);
    return result;
}

// ---- report emission ------------------------------------------------------

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

/// CSV: header plus one row per trial; campaigns of more than one trial get
/// a trailing aggregate comment line. Identical input produces identical
/// bytes except for the wallclock_ms column.
inline std::string render_csv(const CampaignResult& result) {
    std::string out = "seed,iterations,evals,success,value,bound,ratio,wallclock_ms\n";
    for (const auto& r : result.records) {
        out += std::to_string(r.seed) + ',' + std::to_string(r.iterations) + ',' +
               std::to_string(r.evals) + ',' + (r.success ? "1" : "0") + ',' +
               std::to_string(r.value) + ',' + format_double(r.bound) + ',' +
               format_double(r.ratio) + ',' + format_double(r.wallclock_ms) + '\n';
    }
    if (result.records.size() > 1) {
        const auto& a = result.aggregate;
        out += "# aggregate mean_iterations=" + format_double(a.mean_iterations) +
               " median_iterations=" + format_double(a.median_iterations) +
               " mean_ratio=" + format_double(a.mean_ratio) +
               " success_rate=" + format_double(a.success_rate) +
               " ci95_low=" + format_double(a.ci95_low) +
               " ci95_high=" + format_double(a.ci95_high) + "\n";
    }
    return out;
}

inline nlohmann::ordered_json config_json(const ExperimentConfig& cfg) {
    return {{"problem", to_string(cfg.problem)},
            {"instance", cfg.instance_path},
            {"algorithm", to_string(cfg.algorithm)},
            {"epsilon", cfg.epsilon},
            {"trials", cfg.trials},
            {"seed", cfg.seed},
            {"budget_mult", cfg.budget_mult},
            {"source", cfg.source}};
}

inline nlohmann::ordered_json render_json(const CampaignResult& result,
                                          const ExperimentConfig& cfg) {
    nlohmann::ordered_json doc;
    doc["engine_version"] = kEngineVersion;
    doc["config"] = config_json(cfg);
    doc["records"] = nlohmann::ordered_json::array();
    for (const auto& r : result.records)
        doc["records"].push_back({{"seed", r.seed},
                                  {"iterations", r.iterations},
                                  {"evals", r.evals},
                                  {"success", r.success},
                                  {"value", r.value},
                                  {"bound", r.bound},
                                  {"ratio", r.ratio},
                                  {"wallclock_ms", r.wallclock_ms}});
    const auto& a = result.aggregate;
    doc["aggregate"] = {{"mean_iterations", a.mean_iterations},
                        {"median_iterations", a.median_iterations},
                        {"mean_ratio", a.mean_ratio},
                        {"success_rate", a.success_rate},
                        {"ci95_low", a.ci95_low},
                        {"ci95_high", a.ci95_high}};
    return doc;
}

/// Reads records back from a JSON report.
inline std::vector<TrialRecord> parse_report_json(const std::string& text) {
    const auto doc = nlohmann::json::parse(text);
    std::vector<TrialRecord> records;
    for (const auto& r : doc.at("records")) {
        TrialRecord rec;
        rec.seed = r.at("seed").get<std::uint64_t>();
        rec.iterations = r.at("iterations").get<std::uint64_t>();
        rec.evals = r.at("evals").get<std::uint64_t>();
        rec.success = r.at("success").get<bool>();
        rec.value = r.at("value").get<std::int64_t>();
        rec.bound = r.at("bound").get<double>();
        rec.ratio = r.at("ratio").get<double>();
        rec.wallclock_ms = r.at("wallclock_ms").get<double>();
        records.push_back(rec);
    }
    return records;
}

inline std::string render_report(const CampaignResult& result, const ExperimentConfig& cfg) {
    if (cfg.format == ReportFormat::csv) return render_csv(result);
    return render_json(result, cfg).dump(2) + "\n";
}

inline void emit_report(const CampaignResult& result, const ExperimentConfig& cfg,
                        const std::string& path) {
    if (result.records.empty()) throw ValidationError("no records to report");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << render_report(result, cfg);
    if (!out) throw IoError("write failed for " + path);
}

// ---- top-level experiment dispatch ----------------------------------------

/// Loads the configured instance, runs the configured algorithm's campaign,
/// writes the report if an output path is set, and returns the records.
inline CampaignResult run_experiment(const ExperimentConfig& cfg) {
    CampaignResult result;
    switch (cfg.algorithm) {
    case Algorithm::dp_trimmed:
    case Algorithm::ea_fpras: {
        if (cfg.problem != ProblemKind::knapsack)
            throw ValidationError("approximation modes require the knapsack adapter "
                                  "(no benevolence certificate elsewhere)");
        problems::KnapsackProblem spec(read_knapsack(cfg.instance_path));
        result = cfg.algorithm == Algorithm::dp_trimmed
                     ? run_fptas_campaign(spec, cfg.epsilon, cfg.trials, cfg.seed)
                     : run_fpras_campaign(spec, cfg.epsilon, cfg.trials, cfg.seed);
        break;
    }
    default: {
        auto dispatch = [&](const auto& spec) -> CampaignResult {
            switch (cfg.algorithm) {
            case Algorithm::dp: return run_dp_campaign(spec, cfg.trials, cfg.seed);
            case Algorithm::ea_standard:
                return run_ea_campaign(spec, EaMode::standard(), cfg.trials, cfg.seed,
                                       cfg.budget_mult);
            case Algorithm::ea_homogeneous:
                return run_ea_campaign(spec, EaMode::homogeneous(), cfg.trials, cfg.seed,
                                       cfg.budget_mult);
            default: throw ValidationError("unreachable algorithm");
            }
        };
        switch (cfg.problem) {
        case ProblemKind::knapsack:
            result = dispatch(problems::KnapsackProblem(read_knapsack(cfg.instance_path)));
            break;
        case ProblemKind::tsp:
            result = dispatch(problems::TspProblem(read_tsp(cfg.instance_path)));
            break;
        case ProblemKind::sssp:
            result = dispatch(problems::SsspProblem(read_graph(cfg.instance_path), cfg.source));
            break;
        case ProblemKind::apsp:
            result = dispatch(problems::ApspProblem(read_graph(cfg.instance_path)));
            break;
        }
        break;
    }
    }
    if (!cfg.out_path.empty()) emit_report(result, cfg, cfg.out_path);
    return result;
}

} // namespace dpea::harness
