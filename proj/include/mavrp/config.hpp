#ifndef MAVRP_CONFIG_HPP_
#define MAVRP_CONFIG_HPP_

#include <string>

#include "mavrp/ahgslns.hpp"
#include "mavrp/palns.hpp"

namespace mavrp {

// Every tunable of both solvers in one structured file. Unknown keys are
// rejected so typos do not silently fall back to defaults.
struct SolverConfig {
    AlnsConfig alns;
    PopulationConfig population;
    long long exact_node_budget = 50'000'000;

    // Canonical JSON dump; also the fingerprint input.
    std::string to_json() const;
    std::string fingerprint() const;

    static SolverConfig from_json(const std::string& text, const std::string& origin);
    static SolverConfig load(const std::string& path);
};

AcceptVariant parse_accept_variant(const std::string& name);
const char* to_string(AcceptVariant variant);

}  // namespace mavrp

#endif
