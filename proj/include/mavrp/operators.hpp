#ifndef MAVRP_OPERATORS_HPP_
#define MAVRP_OPERATORS_HPP_

#include <optional>
#include <vector>

#include "mavrp/rng.hpp"
#include "mavrp/solution.hpp"

namespace mavrp {

// One way to place a customer into a solution. Candidates either splice into
// an existing trip or extend the journey with a new trip; appending retargets
// the previous trip's end depot to keep the chain intact.
struct InsertionCandidate {
    enum class Kind {
        InTrip,              // splice into trip `trip` at `position`
        OpenConvert,         // splice into the last trip and drop its return arc
        NewClosedTrip,       // append a fresh round trip at `depot`
        NewOpenTrip,         // append a fresh open trip at `depot`
        NewReturnHaul,       // start an empty journey with the backhaul on the return trip
        NewClosedBeforeOpen, // slot a fresh closed trip in front of the trailing open trip
    };
    int journey = -1;
    Kind kind = Kind::InTrip;
    int trip = -1;
    int position = 0;
    int depot = 0;
    double travel_delta = 0.0;    // journey cost change
    double makespan_after = 0.0;  // solution makespan once applied

    // Lexicographic insertion cost: makespan first, travel second.
    bool better_than(const InsertionCandidate& other) const {
        if (makespan_after != other.makespan_after) return makespan_after < other.makespan_after;
        return travel_delta < other.travel_delta;
    }
};

// Per-journey travel times, kept current across insertions.
struct JourneyCosts {
    std::vector<double> cost;

    static JourneyCosts of(const Solution& sol, const Instance& inst);
    double max_excluding(std::size_t skip) const;
};

// All feasible placements for `customer`, in deterministic order.
std::vector<InsertionCandidate> enumerate_insertions(const Solution& sol, const Instance& inst,
                                                     int customer, const JourneyCosts& costs);

// Applies the candidate and updates the journey cost table.
void apply_insertion(Solution& sol, const Instance& inst, int customer,
                     const InsertionCandidate& cand, JourneyCosts& costs);

// Destroy operators. Each removes `degree` customers (trip removal may take a
// few more to finish its last trip) and returns the solution skeleton plus
// the bank of removed ids. degree must be in [1, assigned customer count].
PartialSolution destroy_worst(const Solution& sol, const Instance& inst, int degree, double p_rand,
                              Rng& rng);
PartialSolution destroy_related(const Solution& sol, const Instance& inst, int degree, Rng& rng);
PartialSolution destroy_history(const Solution& sol, const Instance& inst, int degree,
                                const std::vector<double>& history, Rng& rng);
PartialSolution destroy_string(const Solution& sol, const Instance& inst, int degree, Rng& rng);
PartialSolution destroy_trips(const Solution& sol, const Instance& inst, int degree, Rng& rng);

// Repair operators. Return nullopt when some banked customer has no feasible
// placement left (trip budgets exhausted); callers discard the candidate.
std::optional<Solution> repair_greedy(const PartialSolution& partial, const Instance& inst, Rng& rng);
std::optional<Solution> repair_regret(const PartialSolution& partial, const Instance& inst, int k,
                                      Rng& rng);
std::optional<Solution> repair_random(const PartialSolution& partial, const Instance& inst, Rng& rng);
// Greedy that favors open-route placements whenever one is feasible.
std::optional<Solution> repair_open_biased(const PartialSolution& partial, const Instance& inst,
                                           Rng& rng);

}  // namespace mavrp

#endif
