#ifndef MAVRP_CONSTRUCT_HPP_
#define MAVRP_CONSTRUCT_HPP_

#include <cstdint>

#include "mavrp/solution.hpp"

namespace mavrp {

struct ConstructionConfig {
    std::uint64_t seed = 0;
    // Additive jitter on savings values, as a fraction of the map side. Zero
    // keeps pure savings ordering; the random trip seeds still diversify.
    double noise = 0.1;
};

// Three-phase initial solution builder: assign customers to depots, build
// capacity-feasible closed trips per depot with randomized savings merges,
// then hand the trips to vehicles greedily (longest trip first, least-loaded
// vehicle). Always returns a feasible solution or throws on an instance no
// trip layout can serve.
Solution construct(const Instance& inst, const ConstructionConfig& cfg);

}  // namespace mavrp

#endif
