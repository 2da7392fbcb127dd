#include "mavrp/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mavrp {

namespace {

std::vector<int> assigned_customers(const Solution& sol) {
    std::vector<int> out;
    for (const auto& j : sol.journeys) {
        for (const auto& t : j.trips) {
            out.insert(out.end(), t.customers.begin(), t.customers.end());
        }
    }
    return out;
}

void check_degree(int degree, std::size_t assigned) {
    if (degree < 1 || static_cast<std::size_t>(degree) > assigned) {
        throw std::invalid_argument("destroy: degree " + std::to_string(degree) +
                                    " outside [1, " + std::to_string(assigned) + "]");
    }
}

// Load profile with `customer` spliced in at `pos`, checked without building
// the sequence.
bool splice_load_feasible(const std::vector<int>& customers, int customer, std::size_t pos,
                          const Instance& inst) {
    long departure = 0;
    for (int c : customers) {
        if (inst.is_linehaul(c)) departure += inst.demand(c);
    }
    if (inst.is_linehaul(customer)) departure += inst.demand(customer);
    const long cap = inst.capacity();
    if (departure > cap) return false;
    long load = departure;
    for (std::size_t i = 0; i <= customers.size(); ++i) {
        if (i == pos) {
            load -= inst.demand(customer);
            if (load < 0 || load > cap) return false;
        }
        if (i < customers.size()) {
            load -= inst.demand(customers[i]);
            if (load < 0 || load > cap) return false;
        }
    }
    return true;
}

double splice_delta(const Trip& trip, const Instance& inst, int customer, std::size_t pos) {
    const auto& cs = trip.customers;
    const int prev = pos > 0 ? cs[pos - 1] : trip.start;
    if (pos < cs.size()) {
        return inst.distance(prev, customer) + inst.distance(customer, cs[pos]) -
               inst.distance(prev, cs[pos]);
    }
    if (trip.end == Instance::kDummyNode) return inst.distance(prev, customer);
    return inst.distance(prev, customer) + inst.distance(customer, trip.end) -
           inst.distance(prev, trip.end);
}

bool all_linehaul(const Trip& trip, const Instance& inst) {
    for (int c : trip.customers) {
        if (!inst.is_linehaul(c)) return false;
    }
    return true;
}

// Journey cost change from retargeting the final trip's end depot, which a
// freshly appended trip needs for chaining.
double retarget_delta(const Journey& journey, const Instance& inst, int depot) {
    const Trip& last = journey.trips.back();
    const int from = last.customers.empty() ? last.start : last.customers.back();
    return inst.distance(from, depot) - inst.distance(from, last.end);
}

void enumerate_into(std::vector<InsertionCandidate>& out, const Solution& sol, const Instance& inst,
                    int customer, const JourneyCosts& costs) {
    out.clear();
    const bool linehaul = inst.is_linehaul(customer);
    const int home = linehaul ? inst.home_depot(customer) : 0;
    const int t_max = inst.t_max();

    for (std::size_t j = 0; j < sol.journeys.size(); ++j) {
        const Journey& journey = sol.journeys[j];
        const double other_max = costs.max_excluding(j);
        const double base_cost = costs.cost[j];
        const int nonempty = journey.nonempty_trip_count();
        auto push = [&](InsertionCandidate cand) {
            cand.journey = static_cast<int>(j);
            cand.makespan_after = std::max(other_max, base_cost + cand.travel_delta);
            out.push_back(cand);
        };

        for (std::size_t t = 0; t < journey.trips.size(); ++t) {
            const Trip& trip = journey.trips[t];
            const bool kind_ok = trip.kind == TripKind::Return
                                     ? !linehaul
                                     : (!linehaul || home == trip.start);
            if (!kind_ok) continue;
            if (trip.kind == TripKind::Open && !linehaul) continue;
            if (!trip.has_customers() && nonempty + 1 > t_max) continue;

            for (std::size_t pos = 0; pos <= trip.customers.size(); ++pos) {
                if (!splice_load_feasible(trip.customers, customer, pos, inst)) continue;
                InsertionCandidate cand;
                cand.kind = InsertionCandidate::Kind::InTrip;
                cand.trip = static_cast<int>(t);
                cand.position = static_cast<int>(pos);
                cand.travel_delta = splice_delta(trip, inst, customer, pos);
                push(cand);

                // Same splice, but turning the journey's last closed trip
                // into an open one that stops at its final customer.
                if (linehaul && t + 1 == journey.trips.size() && trip.kind == TripKind::Closed &&
                    trip.has_customers() && all_linehaul(trip, inst)) {
                    const int new_last =
                        pos == trip.customers.size() ? customer : trip.customers.back();
                    InsertionCandidate open = cand;
                    open.kind = InsertionCandidate::Kind::OpenConvert;
                    open.travel_delta -= inst.distance(new_last, trip.end);
                    push(open);
                }
            }
        }

        if (nonempty + 1 > t_max) continue;

        // A trailing open trip pins the journey end, but a fresh closed trip
        // can still slot in right before it.
        const bool last_open =
            !journey.trips.empty() && journey.trips.back().kind == TripKind::Open;
        if (last_open) {
            if (journey.trips.size() < 2) continue;
            const std::size_t slot = journey.trips.size() - 1;
            const Trip& open_trip = journey.trips[slot];
            const Trip& prev = journey.trips[slot - 1];
            const int from = prev.customers.empty() ? prev.start : prev.customers.back();
            auto emit = [&](int dep) {
                InsertionCandidate cand;
                cand.kind = InsertionCandidate::Kind::NewClosedBeforeOpen;
                cand.trip = static_cast<int>(slot);
                cand.depot = dep;
                cand.travel_delta = inst.distance(from, dep) - inst.distance(from, prev.end) +
                                    inst.distance(dep, customer) +
                                    inst.distance(customer, open_trip.start);
                push(cand);
            };
            if (linehaul) {
                emit(home);
            } else {
                for (int dep = 1; dep <= inst.depot_count(); ++dep) emit(dep);
            }
            continue;
        }

        if (journey.trips.empty()) {
            const int vehicle = journey.vehicle;
            if (linehaul) {
                InsertionCandidate cand;
                cand.kind = InsertionCandidate::Kind::NewClosedTrip;
                cand.depot = home;
                cand.travel_delta = inst.distance(vehicle, home) + inst.distance(home, customer) +
                                    inst.distance(customer, home);
                push(cand);
                InsertionCandidate open;
                open.kind = InsertionCandidate::Kind::NewOpenTrip;
                open.depot = home;
                open.travel_delta = inst.distance(vehicle, home) + inst.distance(home, customer);
                push(open);
            } else {
                for (int dep = 1; dep <= inst.depot_count(); ++dep) {
                    InsertionCandidate cand;
                    cand.kind = InsertionCandidate::Kind::NewReturnHaul;
                    cand.depot = dep;
                    cand.travel_delta = inst.distance(vehicle, customer) + inst.distance(customer, dep);
                    push(cand);
                }
            }
        } else if (linehaul) {
            const double retarget = retarget_delta(journey, inst, home);
            InsertionCandidate cand;
            cand.kind = InsertionCandidate::Kind::NewClosedTrip;
            cand.depot = home;
            cand.travel_delta = retarget + inst.distance(home, customer) + inst.distance(customer, home);
            push(cand);
            InsertionCandidate open;
            open.kind = InsertionCandidate::Kind::NewOpenTrip;
            open.depot = home;
            open.travel_delta = retarget + inst.distance(home, customer);
            push(open);
        } else {
            for (int dep = 1; dep <= inst.depot_count(); ++dep) {
                InsertionCandidate cand;
                cand.kind = InsertionCandidate::Kind::NewClosedTrip;
                cand.depot = dep;
                cand.travel_delta = retarget_delta(journey, inst, dep) +
                                    inst.distance(dep, customer) + inst.distance(customer, dep);
                push(cand);
            }
        }
    }
}

bool open_flavored(const Solution& sol, const InsertionCandidate& cand) {
    switch (cand.kind) {
        case InsertionCandidate::Kind::NewOpenTrip:
        case InsertionCandidate::Kind::OpenConvert: return true;
        case InsertionCandidate::Kind::InTrip:
            return sol.journeys[static_cast<std::size_t>(cand.journey)]
                       .trips[static_cast<std::size_t>(cand.trip)]
                       .kind == TripKind::Open;
        default: return false;
    }
}

}  // namespace

JourneyCosts JourneyCosts::of(const Solution& sol, const Instance& inst) {
    JourneyCosts costs;
    costs.cost.reserve(sol.journeys.size());
    for (const auto& j : sol.journeys) costs.cost.push_back(journey_cost(j, inst));
    return costs;
}

double JourneyCosts::max_excluding(std::size_t skip) const {
    double worst = 0.0;
    for (std::size_t i = 0; i < cost.size(); ++i) {
        if (i != skip) worst = std::max(worst, cost[i]);
    }
    return worst;
}

std::vector<InsertionCandidate> enumerate_insertions(const Solution& sol, const Instance& inst,
                                                     int customer, const JourneyCosts& costs) {
    std::vector<InsertionCandidate> out;
    enumerate_into(out, sol, inst, customer, costs);
    return out;
}

void apply_insertion(Solution& sol, const Instance& inst, int customer,
                     const InsertionCandidate& cand, JourneyCosts& costs) {
    Journey& journey = sol.journeys[static_cast<std::size_t>(cand.journey)];
    switch (cand.kind) {
        case InsertionCandidate::Kind::InTrip: {
            Trip& trip = journey.trips[static_cast<std::size_t>(cand.trip)];
            trip.customers.insert(trip.customers.begin() + cand.position, customer);
            break;
        }
        case InsertionCandidate::Kind::OpenConvert: {
            Trip& trip = journey.trips[static_cast<std::size_t>(cand.trip)];
            trip.customers.insert(trip.customers.begin() + cand.position, customer);
            trip.kind = TripKind::Open;
            trip.end = Instance::kDummyNode;
            break;
        }
        case InsertionCandidate::Kind::NewClosedTrip: {
            if (journey.trips.empty()) {
                journey.trips.push_back({TripKind::Return, journey.vehicle, {}, cand.depot});
            } else {
                journey.trips.back().end = cand.depot;
            }
            journey.trips.push_back({TripKind::Closed, cand.depot, {customer}, cand.depot});
            break;
        }
        case InsertionCandidate::Kind::NewOpenTrip: {
            if (journey.trips.empty()) {
                journey.trips.push_back({TripKind::Return, journey.vehicle, {}, cand.depot});
            } else {
                journey.trips.back().end = cand.depot;
            }
            journey.trips.push_back({TripKind::Open, cand.depot, {customer}, Instance::kDummyNode});
            break;
        }
        case InsertionCandidate::Kind::NewReturnHaul: {
            journey.trips.push_back({TripKind::Return, journey.vehicle, {customer}, cand.depot});
            break;
        }
        case InsertionCandidate::Kind::NewClosedBeforeOpen: {
            const auto slot = static_cast<std::size_t>(cand.trip);
            const int open_start = journey.trips[slot].start;
            journey.trips[slot - 1].end = cand.depot;
            journey.trips.insert(journey.trips.begin() + cand.trip,
                                 Trip{TripKind::Closed, cand.depot, {customer}, open_start});
            break;
        }
    }
    costs.cost[static_cast<std::size_t>(cand.journey)] += cand.travel_delta;
    (void)inst;
}

// ---- destroy operators ----

namespace {

// Cost the journey sheds when this customer leaves. Splice arithmetic covers
// the common case; singleton trips are re-simulated because the whole trip
// collapses.
double removal_saving(const Solution& sol, const Instance& inst, const CustomerLocation& loc,
                      int customer, double journey_cost_before) {
    const Journey& journey = sol.journeys[static_cast<std::size_t>(loc.journey)];
    const Trip& trip = journey.trips[static_cast<std::size_t>(loc.trip)];
    if (trip.customers.size() > 1) {
        const auto pos = static_cast<std::size_t>(loc.position);
        const int prev = pos > 0 ? trip.customers[pos - 1] : trip.start;
        if (pos + 1 < trip.customers.size()) {
            const int next = trip.customers[pos + 1];
            return inst.distance(prev, customer) + inst.distance(customer, next) -
                   inst.distance(prev, next);
        }
        if (trip.end == Instance::kDummyNode) return inst.distance(prev, customer);
        return inst.distance(prev, customer) + inst.distance(customer, trip.end) -
               inst.distance(prev, trip.end);
    }
    Journey copy = journey;
    auto& cs = copy.trips[static_cast<std::size_t>(loc.trip)].customers;
    cs.erase(std::find(cs.begin(), cs.end(), customer));
    normalize_journey(copy);
    return journey_cost_before - journey_cost(copy, inst);
}

std::size_t rank_pick(std::size_t size, double p_rand, Rng& rng) {
    const double u = rng.next_double();
    auto idx = static_cast<std::size_t>(std::pow(u, p_rand) * static_cast<double>(size));
    return std::min(idx, size - 1);
}

}  // namespace

PartialSolution destroy_worst(const Solution& sol, const Instance& inst, int degree, double p_rand,
                              Rng& rng) {
    check_degree(degree, assigned_customers(sol).size());
    PartialSolution partial{sol, {}};
    std::vector<double> jcost;
    for (const auto& j : partial.solution.journeys) jcost.push_back(journey_cost(j, inst));

    for (int round = 0; round < degree; ++round) {
        struct Entry {
            double saving;
            int id;
        };
        std::vector<Entry> entries;
        for (std::size_t j = 0; j < partial.solution.journeys.size(); ++j) {
            const auto& journey = partial.solution.journeys[j];
            for (std::size_t t = 0; t < journey.trips.size(); ++t) {
                const auto& cs = journey.trips[t].customers;
                for (std::size_t p = 0; p < cs.size(); ++p) {
                    CustomerLocation loc{static_cast<int>(j), static_cast<int>(t),
                                         static_cast<int>(p)};
                    entries.push_back(
                        {removal_saving(partial.solution, inst, loc, cs[p], jcost[j]), cs[p]});
                }
            }
        }
        std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
            if (a.saving != b.saving) return a.saving > b.saving;
            return a.id < b.id;
        });
        const int victim = entries[rank_pick(entries.size(), p_rand, rng)].id;
        const auto loc = locate(partial.solution, victim);
        const int removals[] = {victim};
        remove_customers(partial.solution, inst, removals);
        jcost[static_cast<std::size_t>(loc->journey)] =
            journey_cost(partial.solution.journeys[static_cast<std::size_t>(loc->journey)], inst);
        partial.bank.push_back(victim);
    }
    return partial;
}

PartialSolution destroy_related(const Solution& sol, const Instance& inst, int degree, Rng& rng) {
    const auto assigned = assigned_customers(sol);
    check_degree(degree, assigned.size());

    const int seed = assigned[rng.index(assigned.size())];
    const int seed_depot = anchoring_depot(sol, inst, seed);
    const double scale = inst.max_customer_distance() > 0 ? inst.max_customer_distance() : 1.0;

    struct Entry {
        double relatedness;
        int id;
    };
    std::vector<Entry> entries;
    for (int c : assigned) {
        double r = inst.distance(seed, c) / scale;
        if (anchoring_depot(sol, inst, c) != seed_depot) r += 1.0;
        entries.push_back({r, c});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.relatedness != b.relatedness) return a.relatedness < b.relatedness;
        return a.id < b.id;
    });

    std::vector<int> removals;
    for (int i = 0; i < degree; ++i) removals.push_back(entries[static_cast<std::size_t>(i)].id);
    return clone_and_remove(sol, inst, removals);
}

PartialSolution destroy_history(const Solution& sol, const Instance& inst, int degree,
                                const std::vector<double>& history, Rng& rng) {
    check_degree(degree, assigned_customers(sol).size());
    PartialSolution partial{sol, {}};

    for (int round = 0; round < degree; ++round) {
        struct Entry {
            double excess;
            int id;
        };
        std::vector<Entry> entries;
        for (int c : assigned_customers(partial.solution)) {
            const double now = positional_cost(partial.solution, inst, c);
            const double seen = static_cast<std::size_t>(c) < history.size()
                                    ? history[static_cast<std::size_t>(c)]
                                    : std::numeric_limits<double>::infinity();
            entries.push_back({std::isfinite(seen) ? now - seen : 0.0, c});
        }
        std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
            if (a.excess != b.excess) return a.excess > b.excess;
            return a.id < b.id;
        });
        const int victim = entries[rank_pick(entries.size(), 3.0, rng)].id;
        const int removals[] = {victim};
        remove_customers(partial.solution, inst, removals);
        partial.bank.push_back(victim);
    }
    return partial;
}

PartialSolution destroy_string(const Solution& sol, const Instance& inst, int degree, Rng& rng) {
    const auto flat = assigned_customers(sol);
    check_degree(degree, flat.size());
    const std::size_t start =
        static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(flat.size()) - degree));
    std::vector<int> removals(flat.begin() + static_cast<std::ptrdiff_t>(start),
                              flat.begin() + static_cast<std::ptrdiff_t>(start + static_cast<std::size_t>(degree)));
    return clone_and_remove(sol, inst, removals);
}

PartialSolution destroy_trips(const Solution& sol, const Instance& inst, int degree, Rng& rng) {
    check_degree(degree, assigned_customers(sol).size());
    PartialSolution partial{sol, {}};

    while (static_cast<int>(partial.bank.size()) < degree) {
        std::vector<std::pair<std::size_t, std::size_t>> nonempty;
        for (std::size_t j = 0; j < partial.solution.journeys.size(); ++j) {
            const auto& trips = partial.solution.journeys[j].trips;
            for (std::size_t t = 0; t < trips.size(); ++t) {
                if (trips[t].has_customers()) nonempty.emplace_back(j, t);
            }
        }
        if (nonempty.empty()) break;
        const auto [j, t] = nonempty[rng.index(nonempty.size())];
        const std::vector<int> removals = partial.solution.journeys[j].trips[t].customers;
        remove_customers(partial.solution, inst, removals);
        partial.bank.insert(partial.bank.end(), removals.begin(), removals.end());
    }
    return partial;
}

// ---- repair operators ----

namespace {

struct Pick {
    std::size_t bank_index = 0;
    InsertionCandidate cand;
    bool found = false;
};

std::optional<Solution> greedy_like(const PartialSolution& partial, const Instance& inst,
                                    bool prefer_open) {
    Solution sol = partial.solution;
    std::vector<int> bank = partial.bank;
    JourneyCosts costs = JourneyCosts::of(sol, inst);
    std::vector<InsertionCandidate> buffer;

    while (!bank.empty()) {
        Pick best;
        Pick best_open;
        for (std::size_t b = 0; b < bank.size(); ++b) {
            enumerate_into(buffer, sol, inst, bank[b], costs);
            if (buffer.empty()) return std::nullopt;
            for (const auto& cand : buffer) {
                if (!best.found || cand.better_than(best.cand)) {
                    best = {b, cand, true};
                }
                if (prefer_open && open_flavored(sol, cand) &&
                    (!best_open.found || cand.better_than(best_open.cand))) {
                    best_open = {b, cand, true};
                }
            }
        }
        const Pick& chosen = (prefer_open && best_open.found) ? best_open : best;
        if (!chosen.found) return std::nullopt;
        apply_insertion(sol, inst, bank[chosen.bank_index], chosen.cand, costs);
        bank.erase(bank.begin() + static_cast<std::ptrdiff_t>(chosen.bank_index));
    }
    return sol;
}

}  // namespace

std::optional<Solution> repair_greedy(const PartialSolution& partial, const Instance& inst, Rng& rng) {
    (void)rng;  // tie-breaks are deterministic
    return greedy_like(partial, inst, /*prefer_open=*/false);
}

std::optional<Solution> repair_open_biased(const PartialSolution& partial, const Instance& inst,
                                           Rng& rng) {
    (void)rng;
    return greedy_like(partial, inst, /*prefer_open=*/true);
}

std::optional<Solution> repair_regret(const PartialSolution& partial, const Instance& inst, int k,
                                      Rng& rng) {
    (void)rng;
    if (k < 2) throw std::invalid_argument("repair_regret: k must be >= 2");
    Solution sol = partial.solution;
    std::vector<int> bank = partial.bank;
    JourneyCosts costs = JourneyCosts::of(sol, inst);
    std::vector<InsertionCandidate> buffer;

    while (!bank.empty()) {
        bool have = false;
        std::size_t pick_index = 0;
        InsertionCandidate pick_cand;
        double pick_primary = -std::numeric_limits<double>::infinity();
        double pick_secondary = -std::numeric_limits<double>::infinity();

        for (std::size_t b = 0; b < bank.size(); ++b) {
            enumerate_into(buffer, sol, inst, bank[b], costs);
            if (buffer.empty()) return std::nullopt;
            std::sort(buffer.begin(), buffer.end(),
                      [](const InsertionCandidate& a, const InsertionCandidate& b2) {
                          return a.better_than(b2);
                      });
            double primary;
            double secondary;
            if (buffer.size() < static_cast<std::size_t>(k)) {
                // Too few options: serve before the slots vanish, the fewer
                // options the sooner.
                primary = std::numeric_limits<double>::infinity();
                secondary = -static_cast<double>(buffer.size());
            } else {
                primary = 0.0;
                secondary = 0.0;
                for (int i = 1; i < k; ++i) {
                    primary += buffer[static_cast<std::size_t>(i)].makespan_after -
                               buffer[0].makespan_after;
                    secondary += buffer[static_cast<std::size_t>(i)].travel_delta -
                                 buffer[0].travel_delta;
                }
            }
            const bool wins =
                !have || primary > pick_primary ||
                (primary == pick_primary &&
                 (secondary > pick_secondary ||
                  (secondary == pick_secondary && buffer[0].better_than(pick_cand))));
            if (wins) {
                have = true;
                pick_index = b;
                pick_cand = buffer[0];
                pick_primary = primary;
                pick_secondary = secondary;
            }
        }
        if (!have) return std::nullopt;
        apply_insertion(sol, inst, bank[pick_index], pick_cand, costs);
        bank.erase(bank.begin() + static_cast<std::ptrdiff_t>(pick_index));
    }
    return sol;
}

std::optional<Solution> repair_random(const PartialSolution& partial, const Instance& inst, Rng& rng) {
    Solution sol = partial.solution;
    std::vector<int> bank = partial.bank;
    rng.shuffle(bank);
    JourneyCosts costs = JourneyCosts::of(sol, inst);
    std::vector<InsertionCandidate> buffer;

    for (int customer : bank) {
        enumerate_into(buffer, sol, inst, customer, costs);
        if (buffer.empty()) return std::nullopt;
        apply_insertion(sol, inst, customer, buffer[rng.index(buffer.size())], costs);
    }
    return sol;
}

}  // namespace mavrp
