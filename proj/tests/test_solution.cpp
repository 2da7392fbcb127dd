#include <doctest.h>

#include <algorithm>

#include "mavrp/construct.hpp"
#include "mavrp/rng.hpp"
#include "mavrp/solution.hpp"

using namespace mavrp;

namespace {

// One depot at the origin, vehicle co-located, linehaul at (3,4), backhaul at
// (0,5). Ids: depot 1, linehaul 2, backhaul 3, vehicle 4.
Instance cross_instance() {
    std::vector<Depot> depots{{1, {0.0, 0.0}}};
    std::vector<Vehicle> vehicles{{4, {0.0, 0.0}}};
    std::vector<Customer> linehauls{{2, CustomerKind::Linehaul, {3.0, 4.0}, 2, 1}};
    std::vector<Customer> backhauls{{3, CustomerKind::Backhaul, {0.0, 5.0}, -1, 0}};
    return Instance("R_1_1_1_1", depots, vehicles, linehauls, backhauls, 6, 10, 30.0);
}

Instance random_instance(std::uint64_t seed, int d = 2, int a = 2, int m = 4, int n = 4) {
    GenerateParams params;
    params.depots = d;
    params.vehicles = a;
    params.linehauls = m;
    params.backhauls = n;
    return generate_instance(params, seed);
}

Solution serve_both(const Instance& inst) {
    Solution sol = empty_solution(inst);
    auto& trips = sol.journeys[0].trips;
    trips.push_back({TripKind::Return, 4, {3}, 1});
    trips.push_back({TripKind::Closed, 1, {2}, 1});
    return sol;
}

}  // namespace

TEST_CASE("makespan basics") {
    const Instance inst = cross_instance();

    SUBCASE("all journeys empty") {
        CHECK(makespan(empty_solution(inst), inst) == 0.0);
    }
    SUBCASE("round trip to the linehaul") {
        Solution sol = empty_solution(inst);
        sol.journeys[0].trips.push_back({TripKind::Return, 4, {}, 1});
        sol.journeys[0].trips.push_back({TripKind::Closed, 1, {2}, 1});
        // vehicle and depot coincide: 5 out, 5 back
        CHECK(makespan(sol, inst) == doctest::Approx(10.0));
        CHECK(validate(sol, inst).ok() == false);  // backhaul 3 unserved
    }
    SUBCASE("unknown node id throws") {
        Solution sol = empty_solution(inst);
        sol.journeys[0].trips.push_back({TripKind::Return, 4, {77}, 1});
        CHECK_THROWS_AS((void)makespan(sol, inst), std::out_of_range);
    }
}

TEST_CASE("makespan takes the max over journeys") {
    const Instance inst = random_instance(11, 2, 2, 3, 3);
    const Solution sol = construct(inst, {5, 0.1});
    double expect = 0.0;
    for (const auto& j : sol.journeys) expect = std::max(expect, journey_cost(j, inst));
    CHECK(makespan(sol, inst) == doctest::Approx(expect));

    Solution shuffled = sol;
    std::reverse(shuffled.journeys.begin(), shuffled.journeys.end());
    CHECK(makespan(shuffled, inst) == doctest::Approx(makespan(sol, inst)));
}

TEST_CASE("padding trips cost nothing") {
    const Instance inst = cross_instance();
    Solution sol = serve_both(inst);
    const double before = makespan(sol, inst);
    sol.journeys[0].trips.push_back({TripKind::Closed, 1, {}, 1});
    CHECK(makespan(sol, inst) == doctest::Approx(before));
    CHECK(validate(sol, inst).ok());
}

TEST_CASE("validator accepts a hand-built feasible solution") {
    const Instance inst = cross_instance();
    const Solution sol = serve_both(inst);
    const Verdict verdict = validate(sol, inst);
    CHECK(verdict.ok());
}

TEST_CASE("validator flags specific violations") {
    const Instance inst = cross_instance();

    SUBCASE("double service") {
        Solution sol = serve_both(inst);
        sol.journeys[0].trips[1].customers = {2, 2};
        const Verdict verdict = validate(sol, inst);
        CHECK_FALSE(verdict.ok());
        CHECK(std::any_of(verdict.violations.begin(), verdict.violations.end(),
                          [](const Violation& v) { return v.code == ViolationCode::Coverage; }));
        CHECK(std::any_of(verdict.violations.begin(), verdict.violations.end(),
                          [](const Violation& v) { return v.code == ViolationCode::SelfLoop; }));
    }
    SUBCASE("missing customer") {
        Solution sol = serve_both(inst);
        sol.journeys[0].trips[0].customers.clear();
        const Verdict verdict = validate(sol, inst);
        CHECK_FALSE(verdict.ok());
        REQUIRE(verdict.violations.size() >= 1);
        CHECK(verdict.violations.front().code == ViolationCode::Coverage);
        CHECK(verdict.violations.front().detail.find("3") != std::string::npos);
    }
    SUBCASE("broken chain") {
        std::vector<Depot> depots{{1, {0.0, 0.0}}, {2, {10.0, 0.0}}};
        std::vector<Vehicle> vehicles{{5, {0.0, 0.0}}};
        std::vector<Customer> linehauls{{3, CustomerKind::Linehaul, {3.0, 4.0}, 2, 1}};
        std::vector<Customer> backhauls{{4, CustomerKind::Backhaul, {0.0, 5.0}, -1, 0}};
        const Instance two(std::string("R_2_1_1_1"), depots, vehicles, linehauls, backhauls, 6, 10, 30.0);
        Solution sol = empty_solution(two);
        sol.journeys[0].trips.push_back({TripKind::Return, 5, {4}, 2});
        sol.journeys[0].trips.push_back({TripKind::Closed, 1, {3}, 1});  // starts at 1, chain ends at 2
        const Verdict verdict = validate(sol, two);
        CHECK(std::any_of(verdict.violations.begin(), verdict.violations.end(),
                          [](const Violation& v) { return v.code == ViolationCode::Structure; }));
    }
    SUBCASE("wrong home depot") {
        std::vector<Depot> depots{{1, {0.0, 0.0}}, {2, {10.0, 0.0}}};
        std::vector<Vehicle> vehicles{{5, {0.0, 0.0}}};
        std::vector<Customer> linehauls{{3, CustomerKind::Linehaul, {3.0, 4.0}, 2, 2}};
        std::vector<Customer> backhauls{{4, CustomerKind::Backhaul, {0.0, 5.0}, -1, 0}};
        const Instance two(std::string("R_2_1_1_1"), depots, vehicles, linehauls, backhauls, 6, 10, 30.0);
        Solution sol = empty_solution(two);
        sol.journeys[0].trips.push_back({TripKind::Return, 5, {4}, 1});
        sol.journeys[0].trips.push_back({TripKind::Closed, 1, {3}, 1});  // linehaul 3 belongs to depot 2
        const Verdict verdict = validate(sol, two);
        CHECK(std::any_of(verdict.violations.begin(), verdict.violations.end(),
                          [](const Violation& v) { return v.code == ViolationCode::HomeDepot; }));
    }
    SUBCASE("backhaul on an open trip") {
        const Instance inst2 = cross_instance();
        Solution sol = empty_solution(inst2);
        sol.journeys[0].trips.push_back({TripKind::Return, 4, {}, 1});
        sol.journeys[0].trips.push_back({TripKind::Open, 1, {2, 3}, Instance::kDummyNode});
        const Verdict verdict = validate(sol, inst2);
        CHECK(std::any_of(verdict.violations.begin(), verdict.violations.end(),
                          [](const Violation& v) { return v.code == ViolationCode::BackhaulReturn; }));
    }
}

TEST_CASE("capacity profile violations") {
    // Q = 6, linehauls of demand 3+3+1 in one trip blow the departure load.
    std::vector<Depot> depots{{1, {0.0, 0.0}}};
    std::vector<Vehicle> vehicles{{5, {0.0, 0.0}}};
    std::vector<Customer> linehauls{{2, CustomerKind::Linehaul, {1.0, 0.0}, 3, 1},
                                    {3, CustomerKind::Linehaul, {2.0, 0.0}, 3, 1},
                                    {4, CustomerKind::Linehaul, {3.0, 0.0}, 1, 1}};
    const Instance inst(std::string("R_1_1_3_0"), depots, vehicles, linehauls, {}, 6, 10, 30.0);

    Solution sol = empty_solution(inst);
    sol.journeys[0].trips.push_back({TripKind::Return, 5, {}, 1});
    sol.journeys[0].trips.push_back({TripKind::Closed, 1, {2, 3, 4}, 1});
    const Verdict verdict = validate(sol, inst);
    CHECK(std::any_of(verdict.violations.begin(), verdict.violations.end(), [](const Violation& v) {
        return v.code == ViolationCode::Capacity && v.detail.find("departure load 7") != std::string::npos;
    }));

    // Splitting into two trips fixes it.
    Solution ok = empty_solution(inst);
    ok.journeys[0].trips.push_back({TripKind::Return, 5, {}, 1});
    ok.journeys[0].trips.push_back({TripKind::Closed, 1, {2, 4}, 1});
    ok.journeys[0].trips.push_back({TripKind::Closed, 1, {3}, 1});
    CHECK(validate(ok, inst).ok());
}

TEST_CASE("trip count limit") {
    std::vector<Depot> depots{{1, {0.0, 0.0}}};
    std::vector<Vehicle> vehicles{{4, {0.0, 0.0}}};
    std::vector<Customer> linehauls{{2, CustomerKind::Linehaul, {1.0, 0.0}, 1, 1},
                                    {3, CustomerKind::Linehaul, {2.0, 0.0}, 1, 1}};
    const Instance inst(std::string("R_1_1_2_0"), depots, vehicles, linehauls, {}, 6, 1, 30.0);
    Solution sol = empty_solution(inst);
    sol.journeys[0].trips.push_back({TripKind::Return, 4, {}, 1});
    sol.journeys[0].trips.push_back({TripKind::Closed, 1, {2}, 1});
    sol.journeys[0].trips.push_back({TripKind::Closed, 1, {3}, 1});
    const Verdict verdict = validate(sol, inst);
    CHECK(std::any_of(verdict.violations.begin(), verdict.violations.end(),
                      [](const Violation& v) { return v.code == ViolationCode::TripCount; }));
}

TEST_CASE("clone_and_remove") {
    const Instance inst = random_instance(21, 2, 2, 5, 5);
    const Solution sol = construct(inst, {3, 0.1});
    REQUIRE(validate(sol, inst).ok());

    SUBCASE("removing everything leaves skeletons") {
        std::vector<int> all;
        for (int c = inst.first_customer_id(); c < inst.first_vehicle_id(); ++c) all.push_back(c);
        const PartialSolution partial = clone_and_remove(sol, inst, all);
        CHECK(partial.bank.size() == all.size());
        for (const auto& j : partial.solution.journeys) CHECK(j.customer_count() == 0);
        CHECK(makespan(partial.solution, inst) == 0.0);
    }

    SUBCASE("mid-trip removal preserves order") {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            const Instance big = random_instance(seed, 1, 1, 5, 5);
            const Solution s = construct(big, {seed, 0.0});
            for (const auto& j : s.journeys) {
                for (const auto& t : j.trips) {
                    if (t.customers.size() < 3) continue;
                    const int middle = t.customers[1];
                    std::vector<int> expected = t.customers;
                    expected.erase(expected.begin() + 1);
                    const int removals[] = {middle};
                    const PartialSolution partial = clone_and_remove(s, big, removals);
                    bool found = false;
                    for (const auto& j2 : partial.solution.journeys) {
                        for (const auto& t2 : j2.trips) {
                            if (t2.customers == expected) found = true;
                        }
                    }
                    CHECK(found);
                    return;
                }
            }
        }
        FAIL("no trip with three customers found");
    }

    SUBCASE("unknown customer throws") {
        const int removals[] = {999};
        CHECK_THROWS_AS(clone_and_remove(sol, inst, removals), std::invalid_argument);
    }
}

TEST_CASE("remove and reinsert at the original spot restores the makespan") {
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 30 && checked < 10; ++seed) {
        const Instance inst = random_instance(seed, 2, 2, 4, 4);
        const Solution sol = construct(inst, {seed, 0.1});
        const double before = makespan(sol, inst);
        for (std::size_t j = 0; j < sol.journeys.size(); ++j) {
            for (std::size_t t = 0; t < sol.journeys[j].trips.size(); ++t) {
                const auto& trip = sol.journeys[j].trips[t];
                if (trip.customers.size() < 2) continue;
                const int victim = trip.customers[1];
                const int removals[] = {victim};
                PartialSolution partial = clone_and_remove(sol, inst, removals);
                auto& list = partial.solution.journeys[j].trips[t].customers;
                list.insert(list.begin() + 1, victim);
                CHECK(makespan(partial.solution, inst) == doctest::Approx(before).epsilon(1e-9));
                ++checked;
            }
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("solution text dump") {
    const Instance inst = cross_instance();
    const Solution sol = serve_both(inst);
    const std::string text = format_solution(sol, inst);
    CHECK(text == "mavrp-solution v1 R_1_1_1_1\n"
                  "vehicle 4\n"
                  "  return 4 [ 3 ] 1\n"
                  "  closed 1 [ 2 ] 1\n"
                  "end\n");
}
