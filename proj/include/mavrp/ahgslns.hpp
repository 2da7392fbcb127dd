#ifndef MAVRP_AHGSLNS_HPP_
#define MAVRP_AHGSLNS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "mavrp/palns.hpp"

namespace mavrp {

// A population individual is a full search lane: (best, current, destroy
// weights, repair weights, acceptance criterion, operator parameters) plus a
// private random stream. Its fitness is the best solution's makespan.
using Individual = PalnsState;

inline double fitness(const Individual& individual) {
    return individual.best_cost;
}

// Draw ranges for per-individual acceptance criteria and operator parameters.
struct InitRanges {
    double degree_min_lo = 0.05, degree_min_hi = 0.25;
    double degree_max_lo = 0.25, degree_max_hi = 0.50;
    double worst_p_lo = 2.0, worst_p_hi = 5.0;
    double rrt_dev_lo = 0.01, rrt_dev_hi = 0.05;
    double sa_worse_lo = 0.02, sa_worse_hi = 0.10;
    double sa_cool_lo = 0.985, sa_cool_hi = 0.999;
};

struct PopulationConfig {
    int population = 6;  // N
    int elite = 3;       // M
    int gen_max = 30;
    int iter_max = 20;  // PALNS budget per call
    double l_c = 0.1;   // stagnant generations before crossover, as a fraction of gen_max
    double l_d = 0.2;   // same for diversification
    std::uint64_t seed = 0;
    int workers = 1;
    bool enable_crossover = true;       // off for the survival-only variant
    bool enable_diversification = true;
    double construction_noise = 0.1;
    WeightUpdateParams weights;
    InitRanges init;

    void check() const;  // throws std::invalid_argument on a bad setup
};

struct TraceSnapshot {
    std::string phase;  // "init" | "survival" | "evolve"
    int step = 0;
    double global_best = 0.0;
    std::vector<double> fitness;                      // per surviving individual
    std::vector<std::vector<double>> destroy_weights; // per individual
    std::vector<std::vector<double>> repair_weights;
};

struct TraceEvent {
    std::string phase;
    int step = 0;
    std::string kind;  // "eliminate" | "crossover" | "diversify"
    std::string detail;
};

struct EvolutionTrace {
    std::vector<TraceSnapshot> snapshots;
    std::vector<TraceEvent> events;

    std::vector<double> best_series() const;
};

// Population setup: N constructed individuals with all-ones operator weights,
// uniformly drawn acceptance criteria and per-operator parameter draws, each
// on its own seed stream derived from the master seed.
std::vector<Individual> initialize(const Instance& inst, const PopulationConfig& cfg);

// Runs PALNS on every individual (in parallel when cfg.workers > 1), then
// drops the worst, repeating until `elite` individuals remain.
void adaptive_survival(std::vector<Individual>& population, const Instance& inst,
                       const PopulationConfig& cfg, EvolutionTrace& trace);

enum class CrossoverMode { Trip, Journey };

// Transplants one journey (or one same-position trip) from parent2 into a
// copy of parent1, removes duplicates outside the transplant, reinserts
// missing customers greedily and hands the child the fitter parent's
// parameters. Returns nullopt when the child cannot be repaired.
std::optional<Individual> crossover(const Individual& parent1, const Individual& parent2,
                                    CrossoverMode mode, const Instance& inst, Rng& rng);

struct AhgslnsResult {
    Solution best;
    double cost = 0.0;
    EvolutionTrace trace;
};

// Generation loop over the elite population: stagnation-triggered crossover
// and diversification, then a PALNS burst per individual.
AhgslnsResult evolve(std::vector<Individual>& population, const Instance& inst,
                     const PopulationConfig& cfg, EvolutionTrace trace);

// Full pipeline: initialize -> adaptive survival -> cooperative evolution.
AhgslnsResult ahgslns_solve(const Instance& inst, const PopulationConfig& cfg);

}  // namespace mavrp

#endif
