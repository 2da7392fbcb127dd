#include "mavrp/construct.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "mavrp/rng.hpp"

namespace mavrp {

namespace {

// Phase 1: linehauls go to their home depot; backhauls, nearest-first, go to
// the nearest depot among those currently holding the fewest customers.
std::vector<std::vector<int>> assign_customers(const Instance& inst) {
    const int d = inst.depot_count();
    std::vector<std::vector<int>> by_depot(static_cast<std::size_t>(d + 1));

    for (const auto& c : inst.linehauls()) {
        by_depot[static_cast<std::size_t>(c.home_depot)].push_back(c.id);
    }

    struct Pending {
        int id;
        double nearest;
    };
    std::vector<Pending> backhauls;
    for (const auto& c : inst.backhauls()) {
        double nearest = std::numeric_limits<double>::infinity();
        for (int dep = 1; dep <= d; ++dep) nearest = std::min(nearest, inst.distance(c.id, dep));
        backhauls.push_back({c.id, nearest});
    }
    std::sort(backhauls.begin(), backhauls.end(), [](const Pending& a, const Pending& b) {
        if (a.nearest != b.nearest) return a.nearest < b.nearest;
        return a.id < b.id;
    });

    for (const auto& b : backhauls) {
        std::size_t min_count = std::numeric_limits<std::size_t>::max();
        for (int dep = 1; dep <= d; ++dep) {
            min_count = std::min(min_count, by_depot[static_cast<std::size_t>(dep)].size());
        }
        int chosen = 0;
        double best = std::numeric_limits<double>::infinity();
        for (int dep = 1; dep <= d; ++dep) {
            if (by_depot[static_cast<std::size_t>(dep)].size() != min_count) continue;
            const double dist = inst.distance(b.id, dep);
            if (dist < best) {
                best = dist;
                chosen = dep;
            }
        }
        by_depot[static_cast<std::size_t>(chosen)].push_back(b.id);
    }
    return by_depot;
}

// Phase 2: sequential savings at one depot. Each trip is seeded with a random
// unrouted customer, then grown at either end by the best positive saving
// that keeps the load profile feasible.
std::vector<Trip> build_trips(const Instance& inst, int depot, std::vector<int> unrouted, Rng& rng,
                              double noise) {
    std::vector<Trip> trips;
    const double jitter_scale = noise * inst.map_side();

    while (!unrouted.empty()) {
        const std::size_t seed_at = rng.index(unrouted.size());
        const int seed = unrouted[seed_at];
        unrouted.erase(unrouted.begin() + static_cast<std::ptrdiff_t>(seed_at));

        std::vector<int> route{seed};
        for (;;) {
            double best_score = 0.0;
            std::size_t best_idx = unrouted.size();
            bool best_front = false;

            for (std::size_t i = 0; i < unrouted.size(); ++i) {
                const int c = unrouted[i];
                const double to_depot = inst.distance(depot, c);

                const int back = route.back();
                double saving = to_depot + inst.distance(depot, back) - inst.distance(back, c);
                if (saving > 1e-12) {
                    route.push_back(c);
                    const bool ok = trip_load_feasible(route, inst);
                    route.pop_back();
                    if (ok) {
                        const double score = saving + (jitter_scale > 0 ? rng.uniform(0.0, jitter_scale) : 0.0);
                        if (best_idx == unrouted.size() || score > best_score) {
                            best_score = score;
                            best_idx = i;
                            best_front = false;
                        }
                    }
                }

                const int front = route.front();
                saving = to_depot + inst.distance(depot, front) - inst.distance(c, front);
                if (saving > 1e-12) {
                    route.insert(route.begin(), c);
                    const bool ok = trip_load_feasible(route, inst);
                    route.erase(route.begin());
                    if (ok) {
                        const double score = saving + (jitter_scale > 0 ? rng.uniform(0.0, jitter_scale) : 0.0);
                        if (best_idx == unrouted.size() || score > best_score) {
                            best_score = score;
                            best_idx = i;
                            best_front = true;
                        }
                    }
                }
            }

            if (best_idx == unrouted.size()) break;
            const int chosen = unrouted[best_idx];
            unrouted.erase(unrouted.begin() + static_cast<std::ptrdiff_t>(best_idx));
            if (best_front) {
                route.insert(route.begin(), chosen);
            } else {
                route.push_back(chosen);
            }
        }

        if (!trip_load_feasible(route, inst)) {
            // Single-customer routes are always feasible for valid instances,
            // so this only trips on |q| > Q inputs that slipped validation.
            throw std::runtime_error("construct: no feasible trip for customer " +
                                     std::to_string(route.front()));
        }
        trips.push_back({TripKind::Closed, depot, std::move(route), depot});
    }
    return trips;
}

}  // namespace

Solution construct(const Instance& inst, const ConstructionConfig& cfg) {
    if (cfg.noise < 0) throw std::invalid_argument("construct: noise must be >= 0");
    Rng rng(cfg.seed);
    Solution sol = empty_solution(inst);
    if (inst.customer_count() == 0) return sol;

    const auto by_depot = assign_customers(inst);
    std::vector<Trip> trips;
    for (int dep = 1; dep <= inst.depot_count(); ++dep) {
        auto depot_trips = build_trips(inst, dep, by_depot[static_cast<std::size_t>(dep)], rng, cfg.noise);
        for (auto& t : depot_trips) trips.push_back(std::move(t));
    }

    // Phase 3: longest trips first, each to the vehicle with the smallest
    // journey time that still has trip budget.
    std::vector<double> standalone(trips.size());
    for (std::size_t i = 0; i < trips.size(); ++i) standalone[i] = trip_cost(trips[i], inst);
    std::vector<std::size_t> order(trips.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (standalone[a] != standalone[b]) return standalone[a] > standalone[b];
        return trips[a].customers.front() < trips[b].customers.front();
    });

    std::vector<double> load(sol.journeys.size(), 0.0);
    for (std::size_t oi : order) {
        const Trip& trip = trips[oi];
        std::size_t chosen = sol.journeys.size();
        for (std::size_t k = 0; k < sol.journeys.size(); ++k) {
            if (sol.journeys[k].nonempty_trip_count() >= inst.t_max()) continue;
            if (chosen == sol.journeys.size() || load[k] < load[chosen]) chosen = k;
        }
        if (chosen == sol.journeys.size()) {
            throw std::runtime_error("construct: trip budget exhausted on every vehicle");
        }

        Journey& j = sol.journeys[chosen];
        if (j.trips.empty()) {
            j.trips.push_back({TripKind::Return, j.vehicle, {}, trip.start});
            load[chosen] += inst.distance(j.vehicle, trip.start);
        } else {
            Trip& last = j.trips.back();
            const int from = last.customers.empty() ? last.start : last.customers.back();
            load[chosen] += inst.distance(from, trip.start) - inst.distance(from, last.end);
            last.end = trip.start;
        }
        j.trips.push_back(trip);
        load[chosen] += standalone[oi];
    }
    return sol;
}

}  // namespace mavrp
