#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "mavrp/construct.hpp"
#include "mavrp/exact.hpp"
#include "mavrp/palns.hpp"

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

std::set<int> bank_set(const PartialSolution& partial) {
    return {partial.bank.begin(), partial.bank.end()};
}

std::set<int> coverage(const Solution& sol) {
    std::set<int> seen;
    for (const auto& j : sol.journeys) {
        for (const auto& t : j.trips) seen.insert(t.customers.begin(), t.customers.end());
    }
    return seen;
}

}  // namespace

TEST_CASE("roulette selection") {
    Rng rng(1);

    SUBCASE("single operator always wins") {
        const double weights[] = {2.5};
        for (int i = 0; i < 100; ++i) CHECK(select_operator(weights, rng) == 0);
    }
    SUBCASE("frequencies follow the weights") {
        const double weights[] = {1.0, 3.0};
        int hits[2] = {0, 0};
        const int draws = 100000;
        for (int i = 0; i < draws; ++i) ++hits[select_operator(weights, rng)];
        CHECK(std::abs(hits[0] / static_cast<double>(draws) - 0.25) < 0.02);
        CHECK(std::abs(hits[1] / static_cast<double>(draws) - 0.75) < 0.02);
    }
    SUBCASE("equal weights are uniform") {
        const double weights[] = {2.0, 2.0, 2.0};
        int hits[3] = {0, 0, 0};
        const int draws = 100000;
        for (int i = 0; i < draws; ++i) ++hits[select_operator(weights, rng)];
        for (int h : hits) CHECK(std::abs(h / static_cast<double>(draws) - 1.0 / 3.0) < 0.02);
    }
    SUBCASE("bad weights are rejected") {
        CHECK_THROWS_AS(select_operator({}, rng), std::invalid_argument);
        const double weights[] = {1.0, 0.0};
        CHECK_THROWS_AS(select_operator(weights, rng), std::invalid_argument);
        const double negative[] = {1.0, -2.0};
        CHECK_THROWS_AS(select_operator(negative, rng), std::invalid_argument);
    }
}

TEST_CASE("weight update follows the closed form") {
    WeightUpdateParams params;

    SUBCASE("zeta = 1 freezes the weight") {
        params.zeta = 1.0;
        CHECK(update_weight(4.2, Outcome::NewBest, params) == 4.2);
        CHECK(update_weight(4.2, Outcome::Rejected, params) == 4.2);
    }
    SUBCASE("zeta = 0 forgets history") {
        params.zeta = 0.0;
        CHECK(update_weight(4.2, Outcome::NewBest, params) == params.sigma_new_best);
        CHECK(update_weight(4.2, Outcome::Accepted, params) == params.sigma_accepted);
    }
    SUBCASE("hand value") {
        params.zeta = 0.8;
        params.sigma_better = 5.0;
        // 0.8 * 1 + 0.2 * 5 = 1.8
        CHECK(update_weight(1.0, Outcome::Better, params) == doctest::Approx(1.8));
    }
    SUBCASE("nonpositive weight rejected") {
        CHECK_THROWS_AS(update_weight(0.0, Outcome::Better, params), std::invalid_argument);
    }
}

TEST_CASE("destroy operators") {
    const Instance inst = random_instance(5, 2, 2, 5, 5);
    const Solution sol = construct(inst, {5, 0.1});
    REQUIRE(validate(sol, inst).ok());
    const int total = inst.customer_count();
    Rng rng(99);

    SUBCASE("total destruction banks everyone") {
        const PartialSolution partial = destroy_string(sol, inst, total, rng);
        CHECK(static_cast<int>(partial.bank.size()) == total);
        for (const auto& j : partial.solution.journeys) CHECK(j.customer_count() == 0);
    }
    SUBCASE("unit destruction banks exactly one") {
        for (int rep = 0; rep < 5; ++rep) {
            const PartialSolution partial = destroy_worst(sol, inst, 1, 3.0, rng);
            CHECK(partial.bank.size() == 1);
            const auto seen = coverage(partial.solution);
            CHECK(static_cast<int>(seen.size()) == total - 1);
            CHECK(seen.count(partial.bank.front()) == 0);
        }
    }
    SUBCASE("degree out of range") {
        CHECK_THROWS_AS(destroy_worst(sol, inst, 0, 3.0, rng), std::invalid_argument);
        CHECK_THROWS_AS(destroy_related(sol, inst, total + 1, rng), std::invalid_argument);
    }
    SUBCASE("every operator leaves a clean skeleton") {
        const std::vector<double> history(static_cast<std::size_t>(inst.node_count()) + 1, 1.0);
        for (int degree : {1, 3, total}) {
            for (int which = 0; which < 5; ++which) {
                PartialSolution partial;
                switch (which) {
                    case 0: partial = destroy_worst(sol, inst, degree, 3.0, rng); break;
                    case 1: partial = destroy_related(sol, inst, degree, rng); break;
                    case 2: partial = destroy_history(sol, inst, degree, history, rng); break;
                    case 3: partial = destroy_string(sol, inst, degree, rng); break;
                    case 4: partial = destroy_trips(sol, inst, degree, rng); break;
                }
                CHECK(static_cast<int>(partial.bank.size()) >= degree);
                // bank and remainder partition the customer set
                const auto seen = coverage(partial.solution);
                const auto banked = bank_set(partial);
                CHECK(seen.size() + banked.size() == static_cast<std::size_t>(total));
                for (int c : banked) CHECK(seen.count(c) == 0);
            }
        }
    }
}

TEST_CASE("worst destroy with a huge exponent is the greedy argmax") {
    // Oracle: recompute every customer's journey-cost saving by brute force
    // (erase, renormalize, re-evaluate), take the argmax, compare step by step.
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const Instance inst = random_instance(seed, 1, 2, 3, 2);
        Solution current = construct(inst, {seed, 0.1});
        REQUIRE(validate(current, inst).ok());
        Rng rng(seed);

        for (int step = 0; step < 3; ++step) {
            double best_saving = -1.0;
            int best_id = 0;
            for (const auto& j : current.journeys) {
                const double jc = journey_cost(j, inst);
                for (const auto& t : j.trips) {
                    for (int c : t.customers) {
                        Solution probe = current;
                        const int removals[] = {c};
                        remove_customers(probe, inst, removals);
                        double after = 0.0;
                        for (const auto& pj : probe.journeys) {
                            if (pj.vehicle == j.vehicle) after = journey_cost(pj, inst);
                        }
                        const double saving = jc - after;
                        if (best_id == 0 || saving > best_saving + 1e-12 ||
                            (std::abs(saving - best_saving) <= 1e-12 && c < best_id)) {
                            best_saving = saving;
                            best_id = c;
                        }
                    }
                }
            }
            REQUIRE(best_id != 0);
            const PartialSolution partial = destroy_worst(current, inst, 1, 1e9, rng);
            REQUIRE(partial.bank.size() == 1);
            CHECK(partial.bank.front() == best_id);
            current = partial.solution;
            if (coverage(current).empty()) break;
        }
    }
}

TEST_CASE("destroy then repair closes back to feasibility") {
    // 1000 random (instance, operator pairing) applications.
    int performed = 0;
    for (std::uint64_t seed = 0; seed < 250; ++seed) {
        Rng shape(seed + 1000);
        const int d = static_cast<int>(shape.uniform_int(1, 2));
        const int a = static_cast<int>(shape.uniform_int(1, 3));
        int m = static_cast<int>(shape.uniform_int(0, 7));
        const int n = static_cast<int>(shape.uniform_int(0, 7));
        if (m + n == 0) m = 1;
        const Instance inst = random_instance(seed, d, a, m, n);
        const Solution sol = construct(inst, {seed, 0.1});
        Rng rng(seed);
        const int total = inst.customer_count();
        const std::vector<double> history(static_cast<std::size_t>(inst.node_count()) + 1, 2.0);

        for (int pair = 0; pair < 4; ++pair) {
            const int degree = 1 + static_cast<int>(rng.uniform_int(0, std::max(0, total / 2)));
            PartialSolution partial;
            switch (rng.uniform_int(0, 4)) {
                case 0: partial = destroy_worst(sol, inst, degree, 3.0, rng); break;
                case 1: partial = destroy_related(sol, inst, degree, rng); break;
                case 2: partial = destroy_history(sol, inst, degree, history, rng); break;
                case 3: partial = destroy_string(sol, inst, degree, rng); break;
                default: partial = destroy_trips(sol, inst, degree, rng); break;
            }
            std::optional<Solution> repaired;
            switch (rng.uniform_int(0, 4)) {
                case 0: repaired = repair_greedy(partial, inst, rng); break;
                case 1: repaired = repair_regret(partial, inst, 2, rng); break;
                case 2: repaired = repair_regret(partial, inst, 3, rng); break;
                case 3: repaired = repair_random(partial, inst, rng); break;
                default: repaired = repair_open_biased(partial, inst, rng); break;
            }
            REQUIRE(repaired.has_value());
            const Verdict verdict = validate(*repaired, inst);
            if (!verdict.ok()) {
                CAPTURE(seed);
                CAPTURE(verdict.violations.front().detail);
                REQUIRE(verdict.ok());
            }
            ++performed;
        }
    }
    CHECK(performed == 1000);
}

TEST_CASE("empty bank is a no-op repair") {
    const Instance inst = random_instance(2, 1, 1, 2, 2);
    const Solution sol = construct(inst, {2, 0.1});
    Rng rng(3);
    PartialSolution partial{sol, {}};
    const auto repaired = repair_greedy(partial, inst, rng);
    REQUIRE(repaired.has_value());
    CHECK(format_solution(*repaired, inst) == format_solution(sol, inst));
}

TEST_CASE("regret-2 matches the brute-force regret choice") {
    // Oracle: per banked customer, sort its feasible placements by the
    // (makespan, travel) pair and score regret; the repair must place the
    // max-regret customer first, in its best spot.
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const Instance inst = random_instance(seed + 40, 2, 2, 3, 3);
        const Solution sol = construct(inst, {seed, 0.1});
        Rng rng(seed);
        PartialSolution partial = destroy_string(sol, inst, 3, rng);
        REQUIRE(partial.bank.size() == 3);

        const JourneyCosts costs = JourneyCosts::of(partial.solution, inst);
        double best_regret_primary = -1.0;
        double best_regret_secondary = 0.0;
        int expected_first = -1;
        InsertionCandidate expected_cand;
        for (int c : partial.bank) {
            auto cands = enumerate_insertions(partial.solution, inst, c, costs);
            REQUIRE_FALSE(cands.empty());
            std::sort(cands.begin(), cands.end(),
                      [](const InsertionCandidate& x, const InsertionCandidate& y) {
                          return x.better_than(y);
                      });
            double primary;
            double secondary;
            if (cands.size() < 2) {
                primary = std::numeric_limits<double>::infinity();
                secondary = -1.0;
            } else {
                primary = cands[1].makespan_after - cands[0].makespan_after;
                secondary = cands[1].travel_delta - cands[0].travel_delta;
            }
            const bool wins =
                expected_first < 0 || primary > best_regret_primary ||
                (primary == best_regret_primary && secondary > best_regret_secondary) ||
                (primary == best_regret_primary && secondary == best_regret_secondary &&
                 cands[0].better_than(expected_cand));
            if (wins) {
                best_regret_primary = primary;
                best_regret_secondary = secondary;
                expected_first = c;
                expected_cand = cands[0];
            }
        }

        const auto repaired = repair_regret(partial, inst, 2, rng);
        REQUIRE(repaired.has_value());
        CHECK(validate(*repaired, inst).ok());

        // Replay just the oracle's first placement; the repair's result must
        // agree on where that customer ended up.
        Solution probe = partial.solution;
        JourneyCosts probe_costs = costs;
        apply_insertion(probe, inst, expected_first, expected_cand, probe_costs);
        const auto where = locate(*repaired, expected_first);
        const auto probe_where = locate(probe, expected_first);
        REQUIRE(where.has_value());
        REQUIRE(probe_where.has_value());
        CHECK(where->journey == probe_where->journey);
    }
}

TEST_CASE("acceptance criteria") {
    Rng rng(7);

    SUBCASE("hill climbing") {
        AcceptanceCriterion hc = AcceptanceCriterion::hill_climbing();
        CHECK(accept(hc, 5.0, 6.0, 4.0, rng));
        CHECK_FALSE(accept(hc, 7.0, 6.0, 4.0, rng));
        CHECK(accept(hc, 6.0, 6.0, 4.0, rng));  // equal cost is accepted
    }
    SUBCASE("record to record") {
        AcceptanceCriterion rrt = AcceptanceCriterion::record_to_record(0.1);
        CHECK(accept(rrt, 10.9, 99.0, 10.0, rng));
        CHECK_FALSE(accept(rrt, 11.2, 99.0, 10.0, rng));
    }
    SUBCASE("simulated annealing accepts improvements and cools") {
        AcceptanceCriterion sa = AcceptanceCriterion::simulated_annealing(10.0, 0.5);
        CHECK(accept(sa, 5.0, 6.0, 4.0, rng));
        CHECK(sa.sa_temperature == doctest::Approx(5.0));
        CHECK(accept(sa, 5.0, 5.0, 4.0, rng));
    }
    SUBCASE("sa at vanishing temperature converges to hill climbing") {
        int worse_accepted = 0;
        int better_rejected = 0;
        for (int trial = 0; trial < 10000; ++trial) {
            AcceptanceCriterion sa = AcceptanceCriterion::simulated_annealing(1e-12, 1.0);
            if (accept(sa, 6.001, 6.0, 5.0, rng)) ++worse_accepted;
            AcceptanceCriterion sa2 = AcceptanceCriterion::simulated_annealing(1e-12, 1.0);
            if (!accept(sa2, 5.999, 6.0, 5.0, rng)) ++better_rejected;
        }
        CHECK(worse_accepted == 0);
        CHECK(better_rejected == 0);
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(AcceptanceCriterion::record_to_record(-0.1), std::invalid_argument);
        CHECK_THROWS_AS(AcceptanceCriterion::simulated_annealing(0.0, 0.9), std::invalid_argument);
        CHECK_THROWS_AS(AcceptanceCriterion::simulated_annealing(1.0, 1.5), std::invalid_argument);
    }
}

TEST_CASE("palns_run") {
    const Instance inst = random_instance(8, 2, 2, 4, 4);
    const Solution initial = construct(inst, {8, 0.1});
    auto fresh_state = [&](std::uint64_t seed) {
        return make_palns_state(initial, inst, OperatorBank::standard(),
                                AcceptanceCriterion::record_to_record(0.05), WeightUpdateParams{},
                                seed);
    };

    SUBCASE("zero iterations is the identity") {
        PalnsState state = fresh_state(1);
        const double cost = state.best_cost;
        palns_run(state, inst, 0);
        CHECK(state.best_cost == cost);
        CHECK(state.iterations == 0);
    }
    SUBCASE("best never worsens and stays feasible") {
        PalnsState state = fresh_state(2);
        const double initial_cost = state.best_cost;
        double previous = initial_cost;
        for (int burst = 0; burst < 10; ++burst) {
            palns_run(state, inst, 30);
            CHECK(state.best_cost <= previous + 1e-12);
            CHECK(state.best_cost <= state.current_cost + 1e-9);
            REQUIRE(validate(state.best, inst).ok());
            previous = state.best_cost;
        }
        CHECK(state.iterations == 300);
        CHECK(state.best_cost <= initial_cost);
    }
    SUBCASE("weights stay above the floor") {
        PalnsState state = fresh_state(3);
        palns_run(state, inst, 200);
        for (double w : state.bank.destroy_weights) CHECK(w >= kWeightFloor);
        for (double w : state.bank.repair_weights) CHECK(w >= kWeightFloor);
    }
    SUBCASE("identical seeds reproduce identical states") {
        PalnsState a = fresh_state(4);
        PalnsState b = fresh_state(4);
        palns_run(a, inst, 120);
        palns_run(b, inst, 120);
        CHECK(a.best_cost == b.best_cost);
        CHECK(a.current_cost == b.current_cost);
        CHECK(a.bank.destroy_weights == b.bank.destroy_weights);
        CHECK(a.bank.repair_weights == b.bank.repair_weights);
        CHECK(format_solution(a.best, inst) == format_solution(b.best, inst));
    }
}

TEST_CASE("palns reaches the exact optimum on tiny instances") {
    int matched = 0;
    const int runs = 10;
    for (int run = 0; run < runs; ++run) {
        const Instance inst = random_instance(60 + static_cast<std::uint64_t>(run), 2, 2, 3, 2);
        const ExactResult exact = solve_exact(inst);
        REQUIRE(exact.proven);

        AlnsConfig cfg;
        cfg.iter_max = 600;
        cfg.seed = static_cast<std::uint64_t>(run);
        const AlnsResult result = alns_solve(inst, cfg);
        if (std::abs(result.cost - exact.optimum) <= 1e-9) ++matched;
        CHECK(result.cost >= exact.optimum - 1e-9);
    }
    CHECK(matched >= 9);
}
