// Command-line front end: exact solves, evolutionary runs, approximation
// schemes, brute-force oracles, instance generation and experiment campaigns.
//
// Exit codes: 0 success, 1 validation error, 2 campaign with failed trials,
// 3 I/O error.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dpea/dpea.hpp"

namespace {

using namespace dpea;
using namespace dpea::harness;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitFailedTrials = 2;
constexpr int kExitIo = 3;

ProblemKind parse_kind(const std::string& s) {
    if (s == "knapsack") return ProblemKind::knapsack;
    if (s == "tsp") return ProblemKind::tsp;
    if (s == "sssp") return ProblemKind::sssp;
    if (s == "apsp") return ProblemKind::apsp;
    throw ValidationError("unknown problem kind: " + s);
}

struct CommonArgs {
    std::string problem = "knapsack";
    std::string instance;
    std::string out;
    std::string format = "csv";
    int source = 1;
    int trials = 1;
    std::uint64_t seed = 1;
    double budget_mult = 50.0;
    double epsilon = 0.5;
    std::string mode = "standard";
};

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_instance) {
    cmd->add_option("--problem", args.problem, "Problem kind")
        ->check(CLI::IsMember({"knapsack", "tsp", "sssp", "apsp"}));
    auto* inst = cmd->add_option("--instance", args.instance, "Instance file path");
    if (needs_instance) inst->required();
    cmd->add_option("--source", args.source, "Source vertex (sssp)");
    cmd->add_option("--out", args.out, "Report output path");
    cmd->add_option("--format", args.format, "Report format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", args.seed, "Campaign seed");
    cmd->add_option("--trials", args.trials, "Trial count");
    cmd->add_option("--budget-mult", args.budget_mult, "Iteration budget as a multiple of the expected-time bound");
}

ExperimentConfig to_config(const CommonArgs& args, Algorithm algo) {
    ExperimentConfig cfg;
    cfg.problem = parse_kind(args.problem);
    cfg.instance_path = args.instance;
    cfg.algorithm = algo;
    cfg.epsilon = args.epsilon;
    cfg.trials = args.trials;
    cfg.seed = args.seed;
    cfg.budget_mult = args.budget_mult;
    cfg.source = args.source;
    cfg.out_path = args.out;
    cfg.format = args.format == "json" ? ReportFormat::json : ReportFormat::csv;
    return cfg;
}

int finish_campaign(const CampaignResult& result, const ExperimentConfig& cfg) {
    if (cfg.out_path.empty()) std::cout << render_report(result, cfg);
    const auto& a = result.aggregate;
    std::fprintf(stderr, "trials=%zu success_rate=%.3f mean_iterations=%.1f mean_ratio=%.4f\n",
                 result.records.size(), a.success_rate, a.mean_iterations, a.mean_ratio);
    return result.all_succeeded() ? kExitOk : kExitFailedTrials;
}

int cmd_dp(const CommonArgs& args) {
    auto cfg = to_config(args, Algorithm::dp);
    return finish_campaign(run_experiment(cfg), cfg);
}

int cmd_ea(const CommonArgs& args) {
    const auto algo =
        args.mode == "homogeneous" ? Algorithm::ea_homogeneous : Algorithm::ea_standard;
    auto cfg = to_config(args, algo);
    return finish_campaign(run_experiment(cfg), cfg);
}

int cmd_fptas(const CommonArgs& args) {
    auto cfg = to_config(args, Algorithm::dp_trimmed);
    return finish_campaign(run_experiment(cfg), cfg);
}

int cmd_fpras(const CommonArgs& args) {
    auto cfg = to_config(args, Algorithm::ea_fpras);
    return finish_campaign(run_experiment(cfg), cfg);
}

int cmd_oracle(const CommonArgs& args) {
    switch (parse_kind(args.problem)) {
    case ProblemKind::knapsack: {
        const auto inst = read_knapsack(args.instance);
        const auto r = oracles::knapsack_bruteforce(inst);
        std::cout << "optimum " << r.optimum << "\nitems";
        for (int i : r.witness) std::cout << ' ' << i + 1;
        std::cout << '\n';
        break;
    }
    case ProblemKind::tsp: {
        const auto inst = read_tsp(args.instance);
        const auto r = oracles::tsp_bruteforce(inst);
        std::cout << "optimum " << r.optimum << "\ntour";
        for (int v : r.witness) std::cout << ' ' << v;
        std::cout << '\n';
        break;
    }
    case ProblemKind::sssp: {
        const auto g = read_graph(args.instance);
        const auto d = oracles::sssp_reference(g, args.source);
        for (int v = 1; v <= g.n; ++v)
            std::cout << v << ' ' << d[static_cast<std::size_t>(v) - 1] << '\n';
        break;
    }
    case ProblemKind::apsp: {
        const auto g = read_graph(args.instance);
        const auto d = oracles::apsp_reference(g);
        for (const auto& row : d) {
            for (std::size_t j = 0; j < row.size(); ++j) std::cout << (j ? " " : "") << row[j];
            std::cout << '\n';
        }
        break;
    }
    }
    return kExitOk;
}

struct GenArgs {
    CommonArgs common;
    int n = 8;
    std::int64_t max_weight = 32;
    std::int64_t max_profit = 32;
    std::int64_t capacity = -1; ///< default: 2 * n
    int edges = -1;             ///< default: 2 * n - 3
    bool metric = false;
};

int cmd_gen(const GenArgs& args) {
    if (args.common.out.empty()) throw ValidationError("gen requires --out");
    const auto seed = args.common.seed;
    switch (parse_kind(args.common.problem)) {
    case ProblemKind::knapsack: {
        const auto capacity = args.capacity >= 0 ? args.capacity : 2 * args.n;
        const auto inst =
            generate_knapsack(args.n, args.max_weight, args.max_profit, capacity, seed);
        write_file(args.common.out, inst,
                   [](std::ostream& o, const auto& v) { write_knapsack(o, v); });
        break;
    }
    case ProblemKind::tsp: {
        const auto inst = generate_tsp(args.n, args.max_weight, args.metric, seed);
        write_file(args.common.out, inst,
                   [](std::ostream& o, const auto& v) { write_tsp(o, v); });
        break;
    }
    case ProblemKind::sssp:
    case ProblemKind::apsp: {
        const int edges = args.edges >= 0 ? args.edges
                                          : std::min(2 * args.n - 3, args.n * (args.n - 1) / 2);
        const auto inst = generate_graph(args.n, edges, args.max_weight, seed);
        write_file(args.common.out, inst,
                   [](std::ostream& o, const auto& v) { write_graph(o, v); });
        break;
    }
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dpea: phased dynamic programming, simulating evolutionary algorithms, "
                 "and trimmed approximation schemes"};
    app.require_subcommand(1);

    CommonArgs dp_args, ea_args, fptas_args, fpras_args, oracle_args, exp_args;
    GenArgs gen_args;
    std::string exp_algorithm = "dp";

    auto* dp = app.add_subcommand("dp", "Exact dynamic-programming solve");
    add_common(dp, dp_args, true);

    auto* ea = app.add_subcommand("ea", "Evolutionary run against the exact reference");
    add_common(ea, ea_args, true);
    ea->add_option("--mode", ea_args.mode, "Search variant")
        ->check(CLI::IsMember({"standard", "homogeneous"}));

    auto* fptas = app.add_subcommand("fptas", "Deterministic trimmed scheme (knapsack)");
    add_common(fptas, fptas_args, true);
    fptas->add_option("--epsilon", fptas_args.epsilon, "Approximation factor in (0,1)");

    auto* fpras = app.add_subcommand("fpras", "Randomized trimmed scheme (knapsack)");
    add_common(fpras, fpras_args, true);
    fpras->add_option("--epsilon", fpras_args.epsilon, "Approximation factor in (0,1)");

    auto* oracle = app.add_subcommand("oracle", "Brute-force / classical reference solve");
    add_common(oracle, oracle_args, true);

    auto* gen = app.add_subcommand("gen", "Generate a seeded instance file");
    add_common(gen, gen_args.common, false);
    gen->add_option("--n", gen_args.n, "Instance size");
    gen->add_option("--max-weight", gen_args.max_weight, "Weight range upper end");
    gen->add_option("--max-profit", gen_args.max_profit, "Profit range upper end");
    gen->add_option("--capacity", gen_args.capacity, "Knapsack capacity");
    gen->add_option("--edges", gen_args.edges, "Graph edge count");
    gen->add_flag("--metric", gen_args.metric, "Metric weights (tsp)");

    auto* exp = app.add_subcommand("experiment", "Multi-trial campaign with a report");
    add_common(exp, exp_args, true);
    exp->add_option("--algorithm", exp_algorithm, "Algorithm")
        ->check(CLI::IsMember({"dp", "ea-standard", "ea-homogeneous", "dp-trimmed", "ea-fpras"}));
    exp->add_option("--epsilon", exp_args.epsilon, "Approximation factor (approx modes)");
    exp->add_option("--mode", exp_args.mode, "Alias for ea-standard/ea-homogeneous")
        ->check(CLI::IsMember({"standard", "homogeneous"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (dp->parsed()) return cmd_dp(dp_args);
        if (ea->parsed()) return cmd_ea(ea_args);
        if (fptas->parsed()) return cmd_fptas(fptas_args);
        if (fpras->parsed()) return cmd_fpras(fpras_args);
        if (oracle->parsed()) return cmd_oracle(oracle_args);
        if (gen->parsed()) return cmd_gen(gen_args);
        if (exp->parsed()) {
            Algorithm algo;
            if (exp_algorithm == "dp") algo = Algorithm::dp;
            else if (exp_algorithm == "ea-standard") algo = Algorithm::ea_standard;
            else if (exp_algorithm == "ea-homogeneous") algo = Algorithm::ea_homogeneous;
            else if (exp_algorithm == "dp-trimmed") algo = Algorithm::dp_trimmed;
            else algo = Algorithm::ea_fpras;
            if (exp_algorithm == "ea-standard" && exp_args.mode == "homogeneous")
                algo = Algorithm::ea_homogeneous;
            auto cfg = to_config(exp_args, algo);
            return finish_campaign(run_experiment(cfg), cfg);
        }
    } catch (const IoError& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return kExitIo;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return kExitValidation;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    }
    return kExitOk;
}
