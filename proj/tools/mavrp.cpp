#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mavrp/bench.hpp"
#include "mavrp/construct.hpp"
#include "mavrp/exact.hpp"

namespace {

using namespace mavrp;

std::uint64_t env_or(const char* name, std::uint64_t fallback) {
    const char* value = std::getenv(name);
    if (!value || !*value) return fallback;
    return std::strtoull(value, nullptr, 10);
}

int env_workers(int fallback) {
    const char* value = std::getenv("MAVRP_WORKERS");
    if (!value || !*value) return fallback;
    return static_cast<int>(std::strtol(value, nullptr, 10));
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

struct SolveArgs {
    std::string instance_path;
    std::string algo = "ahgslns";
    std::string config_path;
    std::uint64_t seed = 1;
    int workers = 1;
    int iters = 0;  // overrides the config budget when nonzero
    std::string dump_solution;
    std::string trace_path;
    std::string report_path;
};

int run_solve(const SolveArgs& args) {
    const Instance inst = read_instance(args.instance_path);
    SolverConfig cfg;
    if (!args.config_path.empty()) cfg = SolverConfig::load(args.config_path);
    const std::uint64_t seed = env_or("MAVRP_SEED", args.seed);
    const int workers = env_workers(args.workers);

    Solution best;
    double cost = 0.0;

    if (args.algo == "exact") {
        ExactOptions options;
        options.node_budget = cfg.exact_node_budget;
        const ExactResult result = solve_exact(inst, options);
        best = result.solution;
        cost = result.optimum;
        std::cout << "optimum " << cost << "\nproven " << (result.proven ? "true" : "false")
                  << "\nnodes " << result.nodes_explored << "\n";
    } else if (args.algo == "alns") {
        AlnsConfig alns = cfg.alns;
        alns.seed = seed;
        if (args.iters > 0) alns.iter_max = args.iters;
        const AlnsResult result = alns_solve(inst, alns);
        best = result.best;
        cost = result.cost;
        std::cout << "cost " << cost << "\n";
    } else if (args.algo == "ahgslns") {
        PopulationConfig pop = cfg.population;
        pop.seed = seed;
        pop.workers = workers;
        if (args.iters > 0) pop.iter_max = args.iters;
        AhgslnsResult result = ahgslns_solve(inst, pop);
        best = std::move(result.best);
        cost = result.cost;
        std::cout << "cost " << cost << "\n";
        if (!args.trace_path.empty()) {
            std::ofstream out(args.trace_path, std::ios::binary);
            if (!out) throw std::runtime_error("cannot write " + args.trace_path);
            write_trace(result.trace, out);
        }
    } else {
        throw std::runtime_error("unknown algorithm: " + args.algo);
    }

    const Verdict verdict = validate(best, inst);
    if (!verdict.ok()) {
        for (const auto& v : verdict.violations) std::cerr << "violation: " << v.detail << "\n";
        throw std::runtime_error("solver returned an infeasible solution");
    }
    if (!args.dump_solution.empty()) write_file(args.dump_solution, format_solution(best, inst));
    if (!args.report_path.empty()) {
        RunReport report;
        report.instance = inst.name();
        report.variant = args.algo;
        report.seeds = {seed};
        report.costs = {cost};
        report.wall_ms = {0.0};
        report.reference = cost;
        report.reference_kind = "self";
        finalize_report(report);
        report.fingerprint = cfg.fingerprint();
        write_file(args.report_path, reports_to_json({report}, false));
    }
    return 0;
}

struct BenchArgs {
    std::string suite_path;
    std::string out_dir = ".";
    int runs = 10;
    std::uint64_t seed = 1;
    int workers = 1;
    bool timings = false;
};

int run_bench(const BenchArgs& args) {
    std::ifstream in(args.suite_path);
    if (!in) throw std::runtime_error("cannot open suite file: " + args.suite_path);
    nlohmann::json suite;
    try {
        suite = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(args.suite_path + ": " + e.what());
    }

    const auto suite_dir = std::filesystem::path(args.suite_path).parent_path();
    std::vector<Instance> instances;
    for (const auto& entry : suite.at("instances")) {
        auto path = std::filesystem::path(entry.get<std::string>());
        if (path.is_relative()) path = suite_dir / path;
        instances.push_back(read_instance(path.string()));
    }

    SolverConfig base;
    if (suite.contains("config")) {
        auto path = std::filesystem::path(suite["config"].get<std::string>());
        if (path.is_relative()) path = suite_dir / path;
        base = SolverConfig::load(path.string());
    }

    std::vector<BenchVariant> variants;
    if (suite.value("ablation", false)) {
        variants = ablation_variants(base);
    } else {
        for (const auto& v : suite.at("variants")) {
            BenchVariant variant;
            variant.name = v.at("name").get<std::string>();
            SolverConfig vcfg = base;
            if (v.contains("config")) {
                auto path = std::filesystem::path(v["config"].get<std::string>());
                if (path.is_relative()) path = suite_dir / path;
                vcfg = SolverConfig::load(path.string());
            }
            const std::string algo = v.value("algo", "alns");
            if (algo == "alns") {
                variant.algo = BenchVariant::Algo::Alns;
                variant.alns = vcfg.alns;
                if (v.contains("acceptance")) {
                    variant.alns.acceptance = parse_accept_variant(v["acceptance"].get<std::string>());
                }
            } else if (algo == "ahgslns") {
                variant.algo = BenchVariant::Algo::Ahgslns;
                variant.population = vcfg.population;
            } else {
                throw std::runtime_error("suite: unknown algo " + algo);
            }
            variants.push_back(std::move(variant));
        }
    }

    BenchOptions options;
    options.runs = args.runs;
    options.seed = env_or("MAVRP_SEED", args.seed);
    options.workers = env_workers(args.workers);
    if (suite.contains("exact_limit")) options.exact_limit = suite["exact_limit"].get<int>();

    const BenchResult result = bench(instances, variants, options);

    std::filesystem::create_directories(args.out_dir);
    const auto out_dir = std::filesystem::path(args.out_dir);
    write_file((out_dir / "report.csv").string(), reports_to_csv(result.reports));
    write_file((out_dir / "report.json").string(), reports_to_json(result.reports, args.timings));
    std::cout << "wrote " << (out_dir / "report.csv").string() << " and report.json ("
              << result.reports.size() << " rows)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-attribute VRP solver and benchmark harness"};
    app.require_subcommand(1);

    // generate
    GenerateParams gen;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    auto* generate = app.add_subcommand("generate", "generate a random instance");
    generate->add_option("--depots", gen.depots, "depot count")->check(CLI::PositiveNumber);
    generate->add_option("--vehicles", gen.vehicles, "vehicle count")->check(CLI::PositiveNumber);
    generate->add_option("--linehauls", gen.linehauls, "linehaul count");
    generate->add_option("--backhauls", gen.backhauls, "backhaul count");
    generate->add_option("--qmin", gen.demand_min, "min demand magnitude");
    generate->add_option("--qmax", gen.demand_max, "max demand magnitude");
    generate->add_option("--capacity", gen.capacity, "vehicle capacity Q");
    generate->add_option("--tmax", gen.t_max, "max trips per journey");
    generate->add_option("--map-side", gen.map_side, "square map side length");
    generate->add_option("--seed", gen_seed, "random seed");
    generate->add_option("--out", gen_out, "output path (default: <name>.txt)");

    // solve
    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "solve one instance");
    solve->add_option("--instance", solve_args.instance_path, "instance file")->required();
    solve->add_option("--algo", solve_args.algo, "exact | alns | ahgslns");
    solve->add_option("--config", solve_args.config_path, "solver config JSON");
    solve->add_option("--seed", solve_args.seed, "random seed (MAVRP_SEED overrides)");
    solve->add_option("--workers", solve_args.workers, "worker threads (MAVRP_WORKERS overrides)");
    solve->add_option("--iters", solve_args.iters, "iteration budget override");
    solve->add_option("--dump-solution", solve_args.dump_solution, "write the best solution here");
    solve->add_option("--trace", solve_args.trace_path, "write the evolution trace here (ahgslns)");
    solve->add_option("--report", solve_args.report_path, "write a one-run JSON report here");

    // bench
    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("bench", "run a benchmark suite");
    bench_cmd->add_option("--suite", bench_args.suite_path, "suite JSON file")->required();
    bench_cmd->add_option("--runs", bench_args.runs, "runs per instance/variant");
    bench_cmd->add_option("--seed", bench_args.seed, "base seed (MAVRP_SEED overrides)");
    bench_cmd->add_option("--workers", bench_args.workers, "worker threads (MAVRP_WORKERS overrides)");
    bench_cmd->add_option("--out", bench_args.out_dir, "output directory");
    bench_cmd->add_flag("--timings", bench_args.timings, "include wall-clock times in report.json");

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) {
            const Instance inst = generate_instance(gen, gen_seed);
            const std::string out = gen_out.empty() ? inst.name() + ".txt" : gen_out;
            write_instance(inst, out);
            std::cout << "wrote " << out << "\n";
            return 0;
        }
        if (solve->parsed()) return run_solve(solve_args);
        if (bench_cmd->parsed()) return run_bench(bench_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
