#ifndef MAVRP_SOLUTION_HPP_
#define MAVRP_SOLUTION_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mavrp/instance.hpp"

namespace mavrp {

// Route taxonomy. A return trip runs from the vehicle's start terminal to a
// depot, a closed trip from depot to depot (not necessarily the same one),
// and an open trip from a depot to its last customer (the dummy terminal).
enum class TripKind { Return, Closed, Open };

struct Trip {
    TripKind kind = TripKind::Closed;
    int start = 0;
    std::vector<int> customers;
    int end = 0;  // Instance::kDummyNode for open trips

    bool has_customers() const { return !customers.empty(); }
};

struct Journey {
    int vehicle = 0;
    std::vector<Trip> trips;

    int customer_count() const;
    // Trips that actually serve customers; padding does not count.
    int nonempty_trip_count() const;
};

// One journey per vehicle. Value-like: copy freely, mutate privately.
struct Solution {
    std::vector<Journey> journeys;
};

// All journeys empty, one per vehicle in canonical order.
Solution empty_solution(const Instance& inst);

double trip_cost(const Trip& trip, const Instance& inst);
double journey_cost(const Journey& journey, const Instance& inst);

// Objective: the maximum journey travel time over all vehicles.
double makespan(const Solution& sol, const Instance& inst);

enum class ViolationCode {
    Coverage,        // customer served zero times or more than once
    Structure,       // trip kinds, chaining, journey layout
    HomeDepot,       // linehaul served from the wrong depot
    BackhaulReturn,  // trip with a backhaul does not end at a depot
    Capacity,        // load profile leaves [0, Q]
    TripCount,       // more than t_max non-empty trips
    SelfLoop,        // customer arc onto itself
};

struct Violation {
    ViolationCode code;
    std::string detail;
};

struct Verdict {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

// Checks the full trip-level feasibility model and reports every breach.
Verdict validate(const Solution& sol, const Instance& inst);

// A solution with some customers pulled out into a bank of unassigned ids.
struct PartialSolution {
    Solution solution;
    std::vector<int> bank;
};

// Removes the given customers, collapsing emptied trips and re-stitching the
// journey chains. Throws on an id that is not assigned in the solution.
PartialSolution clone_and_remove(const Solution& sol, const Instance& inst,
                                 std::span<const int> customers);

// In-place variants used by the operators.
void remove_customers(Solution& sol, const Instance& inst, std::span<const int> customers);

// Drops emptied non-return trips (and an empty return trip with nothing after
// it), then restores chaining by pointing each trip's end at its successor.
void normalize_journey(Journey& journey);

struct CustomerLocation {
    int journey = -1;
    int trip = -1;
    int position = -1;
};

std::optional<CustomerLocation> locate(const Solution& sol, int customer);

// The depot anchoring a customer's trip: trip start for closed/open trips,
// trip end for return trips.
int anchoring_depot(const Solution& sol, const Instance& inst, int customer);

// Travel cost of a customer in context: arc in plus arc out (zero past the
// dummy terminal).
double positional_cost(const Solution& sol, const Instance& inst, int customer);

// Departure load plus the running profile must stay within [0, Q].
bool trip_load_feasible(std::span<const int> customers, const Instance& inst);

// Journey/trip listing in text form, one trip per line with its kind tag.
std::string format_solution(const Solution& sol, const Instance& inst);

}  // namespace mavrp

#endif
