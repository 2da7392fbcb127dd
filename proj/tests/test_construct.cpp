#include <doctest.h>

#include <set>

#include "mavrp/construct.hpp"
#include "mavrp/rng.hpp"

using namespace mavrp;

namespace {

Instance random_instance(std::uint64_t seed, int d, int a, int m, int n) {
    GenerateParams params;
    params.depots = d;
    params.vehicles = a;
    params.linehauls = m;
    params.backhauls = n;
    return generate_instance(params, seed);
}

}  // namespace

TEST_CASE("zero-customer instance builds an all-empty solution") {
    std::vector<Depot> depots{{1, {5.0, 5.0}}};
    std::vector<Vehicle> vehicles{{2, {1.0, 1.0}}};
    const Instance inst(std::string("R_1_1_0_0"), depots, vehicles, {}, {}, 6, 10, 30.0);
    const Solution sol = construct(inst, {1, 0.1});
    CHECK(makespan(sol, inst) == 0.0);
    CHECK(validate(sol, inst).ok());
}

TEST_CASE("construction feasibility battery over 1000 random instances") {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        Rng shape(seed);
        const int d = static_cast<int>(shape.uniform_int(1, 3));
        const int a = static_cast<int>(shape.uniform_int(1, 3));
        int m = static_cast<int>(shape.uniform_int(0, 8));
        const int n = static_cast<int>(shape.uniform_int(0, 8));
        if (m + n == 0) m = 1;
        const Instance inst = random_instance(seed, d, a, m, n);
        const Solution sol = construct(inst, {seed, 0.1});
        const Verdict verdict = validate(sol, inst);
        if (!verdict.ok()) {
            CAPTURE(seed);
            CAPTURE(verdict.violations.front().detail);
            REQUIRE(verdict.ok());
        }
        // coverage asserted independently of the validator
        std::set<int> seen;
        for (const auto& j : sol.journeys) {
            for (const auto& t : j.trips) seen.insert(t.customers.begin(), t.customers.end());
        }
        CHECK(static_cast<int>(seen.size()) == inst.customer_count());
    }
}

TEST_CASE("construction is deterministic in the seed") {
    const Instance inst = random_instance(9, 2, 2, 6, 6);
    const Solution a = construct(inst, {123, 0.1});
    const Solution b = construct(inst, {123, 0.1});
    CHECK(format_solution(a, inst) == format_solution(b, inst));
}

TEST_CASE("different seeds diversify the output") {
    // Over 100 seed pairs on one instance, at least 90 must differ.
    const Instance inst = random_instance(17, 2, 2, 4, 4);
    int differing = 0;
    for (std::uint64_t pair = 0; pair < 100; ++pair) {
        const Solution a = construct(inst, {2 * pair, 0.1});
        const Solution b = construct(inst, {2 * pair + 1, 0.1});
        if (format_solution(a, inst) != format_solution(b, inst)) ++differing;
    }
    CHECK(differing >= 90);
}

TEST_CASE("journeys start with a return trip and chain properly") {
    const Instance inst = random_instance(31, 3, 2, 5, 5);
    const Solution sol = construct(inst, {7, 0.1});
    for (const auto& j : sol.journeys) {
        if (j.trips.empty()) continue;
        CHECK(j.trips.front().kind == TripKind::Return);
        CHECK(j.trips.front().start == j.vehicle);
        for (std::size_t t = 1; t < j.trips.size(); ++t) {
            CHECK(j.trips[t].start == j.trips[t - 1].end);
            CHECK(j.trips[t].kind == TripKind::Closed);
        }
    }
}
