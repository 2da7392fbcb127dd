#ifndef MAVRP_PALNS_HPP_
#define MAVRP_PALNS_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "mavrp/construct.hpp"
#include "mavrp/operators.hpp"
#include "mavrp/rng.hpp"
#include "mavrp/solution.hpp"

namespace mavrp {

enum class DestroyOp { Worst, Related, History, String, TripRemoval };
enum class RepairOp { Greedy, Regret2, Regret3, Random, OpenBiased };

const char* to_string(DestroyOp op);
const char* to_string(RepairOp op);

// Severity knobs carried per destroy operator. The removal degree is drawn
// uniformly from [ceil(min_frac*(m+n)), ceil(max_frac*(m+n))] each iteration.
struct DestroyParams {
    double degree_min_frac = 0.1;
    double degree_max_frac = 0.4;
    double worst_p_rand = 3.0;  // rank-randomization exponent (worst/history)
};

// Reaction factor and score table for the weight update
// w <- zeta * w + (1 - zeta) * sigma.
struct WeightUpdateParams {
    double zeta = 0.8;
    double sigma_new_best = 33.0;
    double sigma_better = 9.0;
    double sigma_accepted = 13.0;
    double sigma_rejected = 0.0;
};

enum class Outcome { NewBest, Better, Accepted, Rejected };

// Eq-form weight update; the bank applies the floor afterwards.
double update_weight(double weight, Outcome outcome, const WeightUpdateParams& params);

// Roulette-wheel choice: index i with probability w_i / sum(w). Throws on an
// empty list or any non-positive weight.
std::size_t select_operator(std::span<const double> weights, Rng& rng);

constexpr double kWeightFloor = 1e-6;

enum class AcceptVariant { HillClimbing, RecordToRecord, SimulatedAnnealing };

struct AcceptanceCriterion {
    AcceptVariant variant = AcceptVariant::HillClimbing;
    double rrt_deviation = 0.02;   // accept while candidate <= best * (1 + deviation)
    double sa_temperature = 1.0;   // current temperature, cooled every call
    double sa_cooling = 0.99;

    static AcceptanceCriterion hill_climbing();
    static AcceptanceCriterion record_to_record(double deviation);
    static AcceptanceCriterion simulated_annealing(double start_temperature, double cooling);
};

// Start temperature such that a candidate `worse_frac` above the reference
// cost is taken with probability one half.
double sa_start_temperature(double reference_cost, double worse_frac);

bool accept(AcceptanceCriterion& criterion, double candidate_cost, double current_cost,
            double best_cost, Rng& rng);

// Registered destroy/repair methods with their roulette weights, per-operator
// parameters and score bookkeeping.
struct OperatorBank {
    std::vector<DestroyOp> destroys;
    std::vector<RepairOp> repairs;
    std::vector<double> destroy_weights;
    std::vector<double> repair_weights;
    std::vector<DestroyParams> destroy_params;
    std::vector<long> destroy_uses;
    std::vector<long> repair_uses;
    std::vector<double> destroy_score_sum;
    std::vector<double> repair_score_sum;

    static OperatorBank standard(const DestroyParams& defaults = {});
    void check() const;  // throws when weights or shapes are inconsistent
};

// One search lane: best/current solution pair, its operator bank, acceptance
// criterion and private random stream. Doubles as the population individual.
struct PalnsState {
    Solution best;
    Solution current;
    double best_cost = 0.0;
    double current_cost = 0.0;
    OperatorBank bank;
    AcceptanceCriterion criterion;
    WeightUpdateParams weights;
    std::vector<double> history;  // best observed positional cost per node id
    long iterations = 0;
    Rng rng{0};
};

PalnsState make_palns_state(Solution initial, const Instance& inst, OperatorBank bank,
                            AcceptanceCriterion criterion, WeightUpdateParams weights,
                            std::uint64_t seed);

// Runs iter_max destroy/repair iterations on the state in place. The best
// solution never worsens; unrepairable candidates are skipped and scored as
// rejections.
void palns_run(PalnsState& state, const Instance& inst, int iter_max);

// Plain single-lane ALNS with a fixed criterion, used for the A-variants.
struct AlnsConfig {
    int iter_max = 600;
    AcceptVariant acceptance = AcceptVariant::RecordToRecord;
    double rrt_deviation = 0.02;
    double sa_start_worse_frac = 0.05;  // temperature derived from the initial cost
    double sa_cooling = 0.99;
    DestroyParams destroy;
    WeightUpdateParams weights;
    double construction_noise = 0.1;
    std::uint64_t seed = 0;
};

struct AlnsResult {
    Solution best;
    double cost = 0.0;
};

AlnsResult alns_solve(const Instance& inst, const AlnsConfig& cfg);

}  // namespace mavrp

#endif
