#include "mavrp/bench.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mavrp/parallel.hpp"

namespace mavrp {

std::string BenchVariant::fingerprint() const {
    SolverConfig cfg;
    cfg.alns = alns;
    cfg.population = population;
    return fingerprint_text(name + "|" + (algo == Algo::Alns ? "alns" : "ahgslns") + "|" +
                            cfg.to_json());
}

AlnsConfig parameter_set(int which) {
    AlnsConfig cfg;
    switch (which) {
        case 1:
            cfg.destroy = {0.10, 0.40, 3.0};
            cfg.weights.zeta = 0.8;
            cfg.rrt_deviation = 0.02;
            break;
        case 2:
            cfg.destroy = {0.20, 0.50, 2.0};
            cfg.weights.zeta = 0.6;
            cfg.rrt_deviation = 0.05;
            break;
        case 3:
            cfg.destroy = {0.10, 0.30, 4.0};
            cfg.weights.zeta = 0.9;
            cfg.sa_start_worse_frac = 0.05;
            cfg.sa_cooling = 0.99;
            break;
        default: throw std::invalid_argument("parameter_set: expected 1, 2 or 3");
    }
    return cfg;
}

std::vector<BenchVariant> ablation_variants(const SolverConfig& base) {
    std::vector<BenchVariant> variants;

    auto fixed = [&](const std::string& name, int set, AcceptVariant acceptance) {
        BenchVariant v;
        v.name = name;
        v.algo = BenchVariant::Algo::Alns;
        v.alns = parameter_set(set);
        v.alns.acceptance = acceptance;
        v.alns.iter_max = base.alns.iter_max;
        v.alns.construction_noise = base.alns.construction_noise;
        return v;
    };
    variants.push_back(fixed("A1", 1, AcceptVariant::RecordToRecord));
    variants.push_back(fixed("A2", 2, AcceptVariant::RecordToRecord));
    variants.push_back(fixed("A3", 3, AcceptVariant::SimulatedAnnealing));
    variants.push_back(fixed("A4", 1, AcceptVariant::HillClimbing));

    BenchVariant b1;
    b1.name = "B1";
    b1.algo = BenchVariant::Algo::Ahgslns;
    b1.population = base.population;
    b1.population.enable_crossover = false;
    b1.population.enable_diversification = false;
    variants.push_back(b1);

    BenchVariant b2;
    b2.name = "B2";
    b2.algo = BenchVariant::Algo::Ahgslns;
    b2.population = base.population;
    b2.population.enable_crossover = true;
    b2.population.enable_diversification = true;
    variants.push_back(b2);

    return variants;
}

BenchResult bench(const std::vector<Instance>& instances, const std::vector<BenchVariant>& variants,
                  const BenchOptions& options) {
    if (options.runs < 1) throw std::invalid_argument("bench: runs must be >= 1");
    if (instances.empty() || variants.empty()) {
        throw std::invalid_argument("bench: needs instances and variants");
    }

    struct Task {
        std::size_t instance;
        std::size_t variant;
        int run;
    };
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        for (std::size_t v = 0; v < variants.size(); ++v) {
            for (int r = 0; r < options.runs; ++r) tasks.push_back({i, v, r});
        }
    }

    struct RunOutcome {
        double cost = std::numeric_limits<double>::quiet_NaN();
        double wall_ms = 0.0;
        std::uint64_t seed = 0;
        bool ok = false;
        std::string error;
        EvolutionTrace trace;
        bool has_trace = false;
    };
    std::vector<RunOutcome> outcomes(tasks.size());

    parallel_for(tasks.size(), options.workers, [&](std::size_t idx) {
        const Task& task = tasks[idx];
        const Instance& inst = instances[task.instance];
        const BenchVariant& variant = variants[task.variant];
        RunOutcome& out = outcomes[idx];
        out.seed = Rng::derive(Rng::derive(Rng::derive(options.seed, task.instance), task.variant),
                               static_cast<std::uint64_t>(task.run));
        const auto started = std::chrono::steady_clock::now();
        try {
            if (variant.algo == BenchVariant::Algo::Alns) {
                AlnsConfig cfg = variant.alns;
                cfg.seed = out.seed;
                out.cost = alns_solve(inst, cfg).cost;
            } else {
                PopulationConfig cfg = variant.population;
                cfg.seed = out.seed;
                auto result = ahgslns_solve(inst, cfg);
                out.cost = result.cost;
                if (options.keep_traces) {
                    out.trace = std::move(result.trace);
                    out.has_trace = true;
                }
            }
            out.ok = true;
        } catch (const std::exception& e) {
            out.error = e.what();
        }
        out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                                started)
                          .count();
    });

    // Exact references where the instance is small enough to prove.
    std::vector<double> reference(instances.size(), 0.0);
    std::vector<std::string> reference_kind(instances.size(), "bks");
    for (std::size_t i = 0; i < instances.size(); ++i) {
        if (instances[i].customer_count() <= options.exact_limit) {
            try {
                const ExactResult exact = solve_exact(instances[i], {options.exact_budget});
                if (exact.proven) {
                    reference[i] = exact.optimum;
                    reference_kind[i] = "exact";
                }
            } catch (const std::exception&) {
                // fall back to best-known
            }
        }
        if (reference_kind[i] == "bks") {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t idx = 0; idx < tasks.size(); ++idx) {
                if (tasks[idx].instance == i && outcomes[idx].ok) {
                    best = std::min(best, outcomes[idx].cost);
                }
            }
            reference[i] = std::isfinite(best) ? best : 0.0;
        }
    }

    BenchResult result;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        for (std::size_t v = 0; v < variants.size(); ++v) {
            RunReport report;
            report.instance = instances[i].name();
            report.variant = variants[v].name;
            report.fingerprint = variants[v].fingerprint();
            report.reference = reference[i];
            report.reference_kind = reference_kind[i];
            std::vector<EvolutionTrace> traces;
            for (int r = 0; r < options.runs; ++r, ++idx) {
                const RunOutcome& out = outcomes[idx];
                report.seeds.push_back(out.seed);
                if (!out.ok) {
                    report.run_errors.push_back(std::to_string(r) + ": " + out.error);
                    continue;
                }
                report.costs.push_back(out.cost);
                report.wall_ms.push_back(out.wall_ms);
                if (out.has_trace) traces.push_back(out.trace);
            }
            if (!report.costs.empty()) finalize_report(report);
            result.reports.push_back(std::move(report));
            result.traces.push_back(std::move(traces));
        }
    }
    return result;
}

}  // namespace mavrp
