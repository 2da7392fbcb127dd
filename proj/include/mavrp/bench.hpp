#ifndef MAVRP_BENCH_HPP_
#define MAVRP_BENCH_HPP_

#include <string>
#include <vector>

#include "mavrp/config.hpp"
#include "mavrp/exact.hpp"
#include "mavrp/report.hpp"

namespace mavrp {

// One algorithm configuration in a benchmark batch.
struct BenchVariant {
    std::string name;
    enum class Algo { Alns, Ahgslns } algo = Algo::Alns;
    AlnsConfig alns;
    PopulationConfig population;

    std::string fingerprint() const;
};

struct BenchOptions {
    int runs = 10;
    std::uint64_t seed = 1;
    int workers = 1;
    // Instances at or below this many customers get an exact reference.
    int exact_limit = 7;
    long long exact_budget = 20'000'000;
    bool keep_traces = false;
};

struct BenchResult {
    std::vector<RunReport> reports;  // instance-major, then variant order
    // Traces of population runs, parallel to reports (empty for plain ALNS or
    // when keep_traces is off); one per run.
    std::vector<std::vector<EvolutionTrace>> traces;
};

// Runs every variant `runs` times on every instance with seeds derived from
// (seed, instance, variant, run). Gap reference is the proven exact optimum
// when the instance is small enough, otherwise the best cost seen across the
// whole batch. Per-run failures are recorded and skipped, never fatal.
BenchResult bench(const std::vector<Instance>& instances, const std::vector<BenchVariant>& variants,
                  const BenchOptions& options);

// The six-way comparison suite: four fixed single-criterion searches on the
// documented parameter sets, survival-only, and the full population solver.
std::vector<BenchVariant> ablation_variants(const SolverConfig& base);

// Parameter sets 1..3 used by the fixed variants.
AlnsConfig parameter_set(int which);

}  // namespace mavrp

#endif
