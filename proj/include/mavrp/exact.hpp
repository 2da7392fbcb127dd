#ifndef MAVRP_EXACT_HPP_
#define MAVRP_EXACT_HPP_

#include "mavrp/solution.hpp"

namespace mavrp {

struct ExactResult {
    double optimum = 0.0;
    Solution solution;
    long long nodes_explored = 0;
    bool proven = false;  // true when the search space was exhausted
};

struct ExactOptions {
    long long node_budget = 50'000'000;
};

// Exhaustive branch-and-bound over every feasible journey layout: customer
// order, trip boundaries, depot choices and the open/closed decision per
// trip. Optimal for the same trip-level feasibility model that validate()
// checks, so it serves as the reference optimum for the heuristics. Intended
// for tiny instances (roughly m+n <= 8). Throws std::runtime_error when the
// instance is infeasible or the budget runs out before any solution exists.
ExactResult solve_exact(const Instance& inst, const ExactOptions& options = {});

}  // namespace mavrp

#endif
