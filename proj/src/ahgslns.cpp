#include "mavrp/ahgslns.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "mavrp/parallel.hpp"

namespace mavrp {

namespace {

constexpr double kCostEps = 1e-9;

std::size_t worst_index(const std::vector<Individual>& population) {
    std::size_t worst = 0;
    for (std::size_t i = 1; i < population.size(); ++i) {
        if (fitness(population[i]) >= fitness(population[worst])) worst = i;
    }
    return worst;
}

std::size_t best_index(const std::vector<Individual>& population) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < population.size(); ++i) {
        if (fitness(population[i]) < fitness(population[best])) best = i;
    }
    return best;
}

double population_best(const std::vector<Individual>& population) {
    return fitness(population[best_index(population)]);
}

AcceptanceCriterion draw_criterion(Rng& rng, const InitRanges& ranges, double initial_cost) {
    switch (rng.uniform_int(0, 2)) {
        case 0: return AcceptanceCriterion::hill_climbing();
        case 1:
            return AcceptanceCriterion::record_to_record(
                rng.uniform(ranges.rrt_dev_lo, ranges.rrt_dev_hi));
        default: {
            const double worse = rng.uniform(ranges.sa_worse_lo, ranges.sa_worse_hi);
            const double cooling = rng.uniform(ranges.sa_cool_lo, ranges.sa_cool_hi);
            return AcceptanceCriterion::simulated_annealing(sa_start_temperature(initial_cost, worse),
                                                            cooling);
        }
    }
}

OperatorBank draw_bank(Rng& rng, const InitRanges& ranges) {
    OperatorBank bank = OperatorBank::standard();
    for (auto& params : bank.destroy_params) {
        params.degree_min_frac = rng.uniform(ranges.degree_min_lo, ranges.degree_min_hi);
        params.degree_max_frac =
            std::max(params.degree_min_frac, rng.uniform(ranges.degree_max_lo, ranges.degree_max_hi));
        params.worst_p_rand = rng.uniform(ranges.worst_p_lo, ranges.worst_p_hi);
    }
    return bank;
}

Individual make_individual(const Instance& inst, const PopulationConfig& cfg, std::uint64_t seed) {
    Rng rng(seed);
    ConstructionConfig ccfg{rng.next_u64(), cfg.construction_noise};
    Solution initial = construct(inst, ccfg);
    const double cost = makespan(initial, inst);
    OperatorBank bank = draw_bank(rng, cfg.init);
    AcceptanceCriterion criterion = draw_criterion(rng, cfg.init, cost);
    return make_palns_state(std::move(initial), inst, std::move(bank), criterion, cfg.weights,
                            rng.next_u64());
}

void run_all(std::vector<Individual>& population, const Instance& inst, const PopulationConfig& cfg) {
    parallel_for(population.size(), cfg.workers,
                 [&](std::size_t i) { palns_run(population[i], inst, cfg.iter_max); });
}

void snapshot(EvolutionTrace& trace, const std::vector<Individual>& population,
              const std::string& phase, int step, double global_best) {
    TraceSnapshot snap;
    snap.phase = phase;
    snap.step = step;
    snap.global_best = global_best;
    for (const auto& ind : population) {
        snap.fitness.push_back(fitness(ind));
        snap.destroy_weights.push_back(ind.bank.destroy_weights);
        snap.repair_weights.push_back(ind.bank.repair_weights);
    }
    trace.snapshots.push_back(std::move(snap));
}

// Binary tournament on fitness; lower index wins ties.
std::size_t tournament(const std::vector<Individual>& population, Rng& rng) {
    const std::size_t a = rng.index(population.size());
    const std::size_t b = rng.index(population.size());
    if (fitness(population[a]) < fitness(population[b])) return a;
    if (fitness(population[b]) < fitness(population[a])) return b;
    return std::min(a, b);
}

}  // namespace

void PopulationConfig::check() const {
    if (elite < 2) throw std::invalid_argument("population config: elite count must be >= 2");
    if (population <= elite) {
        throw std::invalid_argument("population config: population must exceed elite count");
    }
    if (gen_max < 1) throw std::invalid_argument("population config: gen_max must be >= 1");
    if (iter_max < 1) throw std::invalid_argument("population config: iter_max must be >= 1");
    if (l_c < 0 || l_c > 1 || l_d < 0 || l_d > 1) {
        throw std::invalid_argument("population config: stagnation fractions must be in [0, 1]");
    }
}

std::vector<double> EvolutionTrace::best_series() const {
    std::vector<double> series;
    series.reserve(snapshots.size());
    for (const auto& s : snapshots) series.push_back(s.global_best);
    return series;
}

std::vector<Individual> initialize(const Instance& inst, const PopulationConfig& cfg) {
    cfg.check();
    std::vector<Individual> population;
    population.reserve(static_cast<std::size_t>(cfg.population));
    for (int i = 0; i < cfg.population; ++i) {
        population.push_back(make_individual(inst, cfg, Rng::derive(cfg.seed, static_cast<std::uint64_t>(i))));
    }
    return population;
}

void adaptive_survival(std::vector<Individual>& population, const Instance& inst,
                       const PopulationConfig& cfg, EvolutionTrace& trace) {
    if (population.size() != static_cast<std::size_t>(cfg.population)) {
        throw std::invalid_argument("adaptive_survival: expected the full initial population");
    }
    double global_best = population_best(population);
    int round = 0;
    while (population.size() > static_cast<std::size_t>(cfg.elite)) {
        ++round;
        run_all(population, inst, cfg);
        global_best = std::min(global_best, population_best(population));

        const std::size_t victim = worst_index(population);
        trace.events.push_back({"survival", round, "eliminate",
                                "individual " + std::to_string(victim) + " fitness " +
                                    std::to_string(fitness(population[victim]))});
        population.erase(population.begin() + static_cast<std::ptrdiff_t>(victim));
        snapshot(trace, population, "survival", round, global_best);
    }
}

std::optional<Individual> crossover(const Individual& parent1, const Individual& parent2,
                                    CrossoverMode mode, const Instance& inst, Rng& rng) {
    const Individual& fitter = fitness(parent2) < fitness(parent1) ? parent2 : parent1;

    Solution child = parent1.best;
    const std::size_t v = rng.index(child.journeys.size());

    // Which trips count as transplanted (protected from deduplication).
    std::size_t protected_trip = std::numeric_limits<std::size_t>::max();
    bool transplanted = false;

    if (mode == CrossoverMode::Journey) {
        child.journeys[v] = parent2.best.journeys[v];
        transplanted = true;
    } else {
        const auto& donor = parent2.best.journeys[v].trips;
        auto& target = child.journeys[v].trips;
        const std::size_t overlap = std::min(donor.size(), target.size());
        if (overlap > 0) {
            const std::size_t t = rng.index(overlap);
            target[t] = donor[t];
            // Chain the transplant back in. An open trip landing mid-journey
            // closes at the successor's depot instead.
            if (t + 1 < target.size()) {
                if (target[t].kind == TripKind::Open) {
                    target[t].kind = TripKind::Closed;
                }
                target[t].end = target[t + 1].start;
            }
            if (t > 0) target[t - 1].end = target[t].start;
            protected_trip = t;
            transplanted = true;
        }
    }

    if (transplanted) {
        // Customers now inside the transplanted part leave every other trip.
        std::set<int> moved;
        if (mode == CrossoverMode::Journey) {
            for (const auto& t : child.journeys[v].trips) {
                moved.insert(t.customers.begin(), t.customers.end());
            }
        } else {
            const auto& t = child.journeys[v].trips[protected_trip];
            moved.insert(t.customers.begin(), t.customers.end());
        }
        for (std::size_t j = 0; j < child.journeys.size(); ++j) {
            auto& trips = child.journeys[j].trips;
            for (std::size_t t = 0; t < trips.size(); ++t) {
                const bool is_protected =
                    j == v && (mode == CrossoverMode::Journey || t == protected_trip);
                if (is_protected) continue;
                std::erase_if(trips[t].customers, [&](int c) { return moved.count(c) > 0; });
            }
        }
        for (auto& journey : child.journeys) normalize_journey(journey);
    }

    // Reinsert whatever went missing.
    std::vector<char> present(static_cast<std::size_t>(inst.node_count()) + 1, 0);
    for (const auto& j : child.journeys) {
        for (const auto& t : j.trips) {
            for (int c : t.customers) present[static_cast<std::size_t>(c)] = 1;
        }
    }
    PartialSolution partial;
    partial.solution = std::move(child);
    for (int c = inst.first_customer_id(); c < inst.first_vehicle_id(); ++c) {
        if (!present[static_cast<std::size_t>(c)]) partial.bank.push_back(c);
    }
    auto repaired = repair_greedy(partial, inst, rng);
    if (!repaired) return std::nullopt;

    Individual offspring = make_palns_state(std::move(*repaired), inst, fitter.bank, fitter.criterion,
                                            fitter.weights, rng.next_u64());
    // Carry the fitter parent's positional-cost history forward.
    for (std::size_t i = 0; i < offspring.history.size() && i < fitter.history.size(); ++i) {
        offspring.history[i] = std::min(offspring.history[i], fitter.history[i]);
    }
    return offspring;
}

AhgslnsResult evolve(std::vector<Individual>& population, const Instance& inst,
                     const PopulationConfig& cfg, EvolutionTrace trace) {
    if (population.size() != static_cast<std::size_t>(cfg.elite)) {
        throw std::invalid_argument("evolve: expected the elite population");
    }
    Rng rng(Rng::derive(cfg.seed, 0x45564F4CULL));  // orchestrator stream
    const int crossover_after = static_cast<int>(std::ceil(cfg.l_c * cfg.gen_max));
    const int diversify_after = static_cast<int>(std::ceil(cfg.l_d * cfg.gen_max));

    double global_best = population_best(population);
    int stagnant = 0;

    for (int gen = 1; gen <= cfg.gen_max; ++gen) {
        if (cfg.enable_crossover && stagnant >= crossover_after) {
            const std::size_t p1 = tournament(population, rng);
            const std::size_t p2 = tournament(population, rng);
            const CrossoverMode mode = rng.coin() ? CrossoverMode::Journey : CrossoverMode::Trip;
            auto child = crossover(population[p1], population[p2], mode, inst, rng);
            if (child) {
                const std::size_t victim = worst_index(population);
                population[victim] = std::move(*child);
                trace.events.push_back({"evolve", gen, "crossover",
                                        std::string(mode == CrossoverMode::Journey ? "journey" : "trip") +
                                            " parents " + std::to_string(p1) + "," +
                                            std::to_string(p2) + " replaces " +
                                            std::to_string(victim)});
            } else {
                trace.events.push_back({"evolve", gen, "crossover", "discarded: child unrepairable"});
            }
        }

        if (cfg.enable_diversification && stagnant >= diversify_after) {
            const std::size_t keep = best_index(population);
            const int replace_count = (cfg.elite + 1) / 2;
            // Rank worst-first, never touching the best individual.
            std::vector<std::size_t> order;
            for (std::size_t i = 0; i < population.size(); ++i) {
                if (i != keep) order.push_back(i);
            }
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                if (fitness(population[a]) != fitness(population[b])) {
                    return fitness(population[a]) > fitness(population[b]);
                }
                return a > b;
            });
            for (int r = 0; r < replace_count && r < static_cast<int>(order.size()); ++r) {
                const std::size_t slot = order[static_cast<std::size_t>(r)];
                population[slot] = make_individual(inst, cfg, rng.next_u64());
                trace.events.push_back({"evolve", gen, "diversify", "slot " + std::to_string(slot)});
            }
        }

        run_all(population, inst, cfg);

        const double now = population_best(population);
        if (now < global_best - kCostEps) {
            global_best = now;
            stagnant = 0;
        } else {
            ++stagnant;
        }
        snapshot(trace, population, "evolve", gen, global_best);
    }

    const std::size_t champion = best_index(population);
    AhgslnsResult result;
    result.best = population[champion].best;
    result.cost = fitness(population[champion]);
    result.trace = std::move(trace);
    return result;
}

AhgslnsResult ahgslns_solve(const Instance& inst, const PopulationConfig& cfg) {
    cfg.check();
    std::vector<Individual> population = initialize(inst, cfg);
    EvolutionTrace trace;
    snapshot(trace, population, "init", 0, population_best(population));
    adaptive_survival(population, inst, cfg, trace);
    return evolve(population, inst, cfg, std::move(trace));
}

}  // namespace mavrp
