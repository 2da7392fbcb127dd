#include "mavrp/exact.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace mavrp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = 1e-12;

struct TripState {
    bool is_return = false;
    int start = 0;
    std::vector<int> seq;
    long linehaul_sum = 0;
    long backhaul_sum = 0;
    bool has_backhaul = false;
};

class Searcher {
public:
    Searcher(const Instance& inst, long long budget) : inst_(inst), budget_(budget) {
        const int d = inst.depot_count();
        customer_count_ = inst.customer_count();
        if (customer_count_ > 30) {
            throw std::invalid_argument("exact: instance too large for exhaustive search");
        }
        ids_.reserve(static_cast<std::size_t>(customer_count_));
        for (int c = inst.first_customer_id(); c < inst.first_vehicle_id(); ++c) ids_.push_back(c);

        min_depot_.resize(ids_.size());
        for (std::size_t i = 0; i < ids_.size(); ++i) {
            double best = kInf;
            for (int dep = 1; dep <= d; ++dep) best = std::min(best, inst.distance(ids_[i], dep));
            min_depot_[i] = best;
        }

        // Cheapest conceivable journey segment serving customer i from an
        // untouched vehicle: reach it (via its home depot for linehauls) and,
        // for backhauls, get back to some depot.
        base_.assign(inst.vehicles().size(), std::vector<double>(ids_.size(), 0.0));
        for (std::size_t k = 0; k < inst.vehicles().size(); ++k) {
            const int v = inst.vehicles()[k].id;
            for (std::size_t i = 0; i < ids_.size(); ++i) {
                const int c = ids_[i];
                if (inst.is_linehaul(c)) {
                    const int h = inst.home_depot(c);
                    base_[k][i] = inst.distance(v, h) + inst.distance(h, c);
                } else {
                    base_[k][i] = inst.distance(v, c) + min_depot_[i];
                }
            }
        }

        work_ = empty_solution(inst);
        jcost_.assign(work_.journeys.size(), 0.0);
        min_served_.assign(work_.journeys.size(), std::numeric_limits<int>::max());
    }

    ExactResult run() {
        start_vehicle(0, full_mask(), 0.0);
        ExactResult result;
        result.nodes_explored = nodes_;
        result.proven = !aborted_;
        if (!found_) {
            if (aborted_) throw std::runtime_error("exact: node budget exhausted before any solution");
            throw std::runtime_error("exact: instance is infeasible");
        }
        result.optimum = best_cost_;
        result.solution = std::move(best_);
        return result;
    }

private:
    std::uint32_t full_mask() const {
        return customer_count_ == 0 ? 0u : (customer_count_ == 32 ? ~0u : ((1u << customer_count_) - 1u));
    }

    bool tick() {
        if (aborted_) return false;
        if (++nodes_ > budget_) {
            aborted_ = true;
            return false;
        }
        return true;
    }

    // Admissible completion bound: every unassigned customer still needs to
    // be reached by the current vehicle (from `node` at `cost` spent) or by a
    // later one.
    double remaining_bound(int k, std::uint32_t mask, int node, double cost, int trip_start) {
        double worst = 0.0;
        for (int i = 0; i < customer_count_; ++i) {
            if (!(mask & (1u << i))) continue;
            const int c = ids_[static_cast<std::size_t>(i)];
            double via_current;
            if (inst_.is_linehaul(c) && inst_.home_depot(c) != trip_start) {
                const int h = inst_.home_depot(c);
                via_current = cost + inst_.distance(node, h) + inst_.distance(h, c);
            } else {
                via_current = cost + inst_.distance(node, c);
            }
            if (inst_.is_backhaul(c)) via_current += min_depot_[static_cast<std::size_t>(i)];
            double best = via_current;
            for (std::size_t k2 = static_cast<std::size_t>(k) + 1; k2 < jcost_.size(); ++k2) {
                best = std::min(best, base_[k2][static_cast<std::size_t>(i)]);
            }
            worst = std::max(worst, best);
        }
        return worst;
    }

    void start_vehicle(int k, std::uint32_t mask, double cmax) {
        if (aborted_ || cmax >= best_cost_ - kEps) return;
        if (!tick()) return;

        auto& journey = work_.journeys[static_cast<std::size_t>(k)];
        const int v = journey.vehicle;

        // Serve nothing with this vehicle.
        journey.trips.clear();
        jcost_[static_cast<std::size_t>(k)] = 0.0;
        finish_vehicle(k, mask, cmax);

        if (mask == 0) return;
        if (std::max(cmax, remaining_bound(k, mask, v, 0.0, 0)) >= best_cost_ - kEps) return;

        // Bridge straight to a depot with an empty return trip.
        for (int dep = 1; dep <= inst_.depot_count(); ++dep) {
            const double cost = inst_.distance(v, dep);
            journey.trips.clear();
            journey.trips.push_back({TripKind::Return, v, {}, dep});
            at_depot(k, mask, cmax, dep, cost, 0);
        }

        // Start the return trip with a backhaul pickup.
        for (int i = 0; i < customer_count_; ++i) {
            if (!(mask & (1u << i))) continue;
            const int c = ids_[static_cast<std::size_t>(i)];
            if (!inst_.is_backhaul(c)) continue;
            TripState ts;
            ts.is_return = true;
            ts.start = v;
            ts.seq.push_back(c);
            ts.backhaul_sum = -inst_.demand(c);
            ts.has_backhaul = true;
            if (ts.backhaul_sum > inst_.capacity()) continue;
            journey.trips.clear();
            in_trip(k, mask & ~(1u << i), cmax, ts, c, inst_.distance(v, c), 0);
        }
        journey.trips.clear();
    }

    void finish_vehicle(int k, std::uint32_t mask, double cmax) {
        const auto uk = static_cast<std::size_t>(k);
        const double total = std::max(cmax, jcost_[uk]);
        if (total >= best_cost_ - kEps) return;

        // Vehicles parked at the same spot are interchangeable: force the one
        // with the smaller first-customer id to come first, empties last.
        int min_id = std::numeric_limits<int>::max();
        for (const auto& t : work_.journeys[uk].trips) {
            for (int c : t.customers) min_id = std::min(min_id, c);
        }
        min_served_[uk] = min_id;
        if (k > 0) {
            const auto& vehicles = inst_.vehicles();
            if (vehicles[uk].pos.x == vehicles[uk - 1].pos.x &&
                vehicles[uk].pos.y == vehicles[uk - 1].pos.y) {
                const int prev = min_served_[uk - 1];
                const bool cur_empty = min_id == std::numeric_limits<int>::max();
                if (prev == std::numeric_limits<int>::max() && !cur_empty) return;
                if (!cur_empty && min_id < prev) return;
            }
        }

        if (uk + 1 < work_.journeys.size()) {
            start_vehicle(k + 1, mask, total);
            return;
        }
        if (mask != 0) return;
        best_cost_ = total;
        best_ = work_;
        found_ = true;
    }

    void at_depot(int k, std::uint32_t mask, double cmax, int depot, double cost, int nonempty) {
        if (aborted_ || std::max(cmax, cost) >= best_cost_ - kEps) return;
        if (!tick()) return;

        // End the journey here.
        jcost_[static_cast<std::size_t>(k)] = cost;
        finish_vehicle(k, mask, cmax);

        if (mask == 0 || nonempty >= inst_.t_max()) return;
        if (std::max(cmax, remaining_bound(k, mask, depot, cost, depot)) >= best_cost_ - kEps) return;

        // Start a fresh trip from this depot.
        for (int i = 0; i < customer_count_; ++i) {
            if (!(mask & (1u << i))) continue;
            const int c = ids_[static_cast<std::size_t>(i)];
            TripState ts;
            ts.is_return = false;
            ts.start = depot;
            if (inst_.is_linehaul(c)) {
                if (inst_.home_depot(c) != depot) continue;
                ts.linehaul_sum = inst_.demand(c);
                if (ts.linehaul_sum > inst_.capacity()) continue;
            } else {
                ts.backhaul_sum = -inst_.demand(c);
                ts.has_backhaul = true;
                if (ts.backhaul_sum > inst_.capacity()) continue;
            }
            ts.seq.push_back(c);
            in_trip(k, mask & ~(1u << i), cmax, ts, c, cost + inst_.distance(depot, c), nonempty);
        }
    }

    void in_trip(int k, std::uint32_t mask, double cmax, TripState& ts, int node, double cost,
                 int nonempty_before) {
        if (aborted_) return;
        const double floor_cost = cost + (ts.has_backhaul || ts.is_return
                                              ? min_return_cost(node)
                                              : 0.0);
        if (std::max(cmax, floor_cost) >= best_cost_ - kEps) return;
        if (!tick()) return;
        if (std::max(cmax, remaining_bound(k, mask, node, cost, ts.is_return ? 0 : ts.start)) >=
            best_cost_ - kEps) {
            return;
        }

        auto& journey = work_.journeys[static_cast<std::size_t>(k)];
        const int closed_count = nonempty_before + 1;

        // Close at a depot.
        if (profile_feasible(ts)) {
            for (int dep = 1; dep <= inst_.depot_count(); ++dep) {
                const double closed_cost = cost + inst_.distance(node, dep);
                if (std::max(cmax, closed_cost) >= best_cost_ - kEps) continue;
                journey.trips.push_back({ts.is_return ? TripKind::Return : TripKind::Closed, ts.start,
                                         ts.seq, dep});
                at_depot(k, mask, cmax, dep, closed_cost, closed_count);
                journey.trips.pop_back();
            }

            // Close as the journey-ending open trip (all-linehaul only).
            if (!ts.is_return && !ts.has_backhaul) {
                journey.trips.push_back({TripKind::Open, ts.start, ts.seq, Instance::kDummyNode});
                jcost_[static_cast<std::size_t>(k)] = cost;
                finish_vehicle(k, mask, cmax);
                journey.trips.pop_back();
            }
        }

        // Extend the trip.
        for (int i = 0; i < customer_count_; ++i) {
            if (!(mask & (1u << i))) continue;
            const int c = ids_[static_cast<std::size_t>(i)];
            if (inst_.is_linehaul(c)) {
                if (ts.is_return || inst_.home_depot(c) != ts.start) continue;
                if (ts.linehaul_sum + inst_.demand(c) > inst_.capacity()) continue;
                ts.linehaul_sum += inst_.demand(c);
                ts.seq.push_back(c);
                in_trip(k, mask & ~(1u << i), cmax, ts, c, cost + inst_.distance(node, c),
                        nonempty_before);
                ts.seq.pop_back();
                ts.linehaul_sum -= inst_.demand(c);
            } else {
                const long pickup = -inst_.demand(c);
                if (ts.backhaul_sum + pickup > inst_.capacity()) continue;
                ts.backhaul_sum += pickup;
                const bool had_backhaul = ts.has_backhaul;
                ts.has_backhaul = true;
                ts.seq.push_back(c);
                in_trip(k, mask & ~(1u << i), cmax, ts, c, cost + inst_.distance(node, c),
                        nonempty_before);
                ts.seq.pop_back();
                ts.has_backhaul = had_backhaul;
                ts.backhaul_sum -= pickup;
            }
        }
    }

    double min_return_cost(int node) const {
        double best = kInf;
        for (int dep = 1; dep <= inst_.depot_count(); ++dep) {
            best = std::min(best, inst_.distance(node, dep));
        }
        return best;
    }

    // Replays the full load profile now that the trip content is final.
    bool profile_feasible(const TripState& ts) const {
        long load = ts.linehaul_sum;
        if (load > inst_.capacity()) return false;
        for (int c : ts.seq) {
            load -= inst_.demand(c);
            if (load < 0 || load > inst_.capacity()) return false;
        }
        return true;
    }

    const Instance& inst_;
    long long budget_;
    long long nodes_ = 0;
    bool aborted_ = false;
    bool found_ = false;
    double best_cost_ = kInf;
    Solution best_;
    Solution work_;
    std::vector<double> jcost_;
    std::vector<int> min_served_;
    int customer_count_ = 0;
    std::vector<int> ids_;
    std::vector<double> min_depot_;
    std::vector<std::vector<double>> base_;
};

}  // namespace

ExactResult solve_exact(const Instance& inst, const ExactOptions& options) {
    for (int c = inst.first_customer_id(); c < inst.first_vehicle_id(); ++c) {
        if (std::abs(inst.demand(c)) > inst.capacity()) {
            throw std::runtime_error("exact: customer " + std::to_string(c) +
                                     " demand exceeds vehicle capacity");
        }
    }
    Searcher searcher(inst, options.node_budget);
    return searcher.run();
}

}  // namespace mavrp
