#include "mavrp/solution.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace mavrp {

int Journey::customer_count() const {
    int count = 0;
    for (const auto& t : trips) count += static_cast<int>(t.customers.size());
    return count;
}

int Journey::nonempty_trip_count() const {
    int count = 0;
    for (const auto& t : trips) count += t.has_customers() ? 1 : 0;
    return count;
}

Solution empty_solution(const Instance& inst) {
    Solution sol;
    sol.journeys.resize(static_cast<std::size_t>(inst.vehicle_count()));
    for (int i = 0; i < inst.vehicle_count(); ++i) {
        sol.journeys[static_cast<std::size_t>(i)].vehicle = inst.vehicles()[static_cast<std::size_t>(i)].id;
    }
    return sol;
}

double trip_cost(const Trip& trip, const Instance& inst) {
    double cost = 0.0;
    int prev = trip.start;
    for (int c : trip.customers) {
        cost += inst.distance(prev, c);
        prev = c;
    }
    if (trip.end != Instance::kDummyNode) cost += inst.distance(prev, trip.end);
    return cost;
}

double journey_cost(const Journey& journey, const Instance& inst) {
    double cost = 0.0;
    for (const auto& t : journey.trips) cost += trip_cost(t, inst);
    return cost;
}

double makespan(const Solution& sol, const Instance& inst) {
    double worst = 0.0;
    for (const auto& j : sol.journeys) worst = std::max(worst, journey_cost(j, inst));
    return worst;
}

namespace {

std::string trip_label(const Journey& j, std::size_t t) {
    return "vehicle " + std::to_string(j.vehicle) + " trip " + std::to_string(t);
}

}  // namespace

Verdict validate(const Solution& sol, const Instance& inst) {
    Verdict verdict;
    auto add = [&](ViolationCode code, std::string detail) {
        verdict.violations.push_back({code, std::move(detail)});
    };

    // (a) every customer exactly once.
    std::vector<int> seen(static_cast<std::size_t>(inst.node_count()) + 1, 0);
    for (const auto& j : sol.journeys) {
        for (const auto& t : j.trips) {
            for (int c : t.customers) {
                if (!inst.is_customer(c)) {
                    add(ViolationCode::Coverage, "node " + std::to_string(c) + " is not a customer");
                } else {
                    ++seen[static_cast<std::size_t>(c)];
                }
            }
        }
    }
    for (int c = inst.first_customer_id(); c < inst.first_vehicle_id(); ++c) {
        const int count = seen[static_cast<std::size_t>(c)];
        if (count == 0) add(ViolationCode::Coverage, "customer " + std::to_string(c) + " is not served");
        if (count > 1) {
            add(ViolationCode::Coverage,
                "customer " + std::to_string(c) + " served " + std::to_string(count) + " times");
        }
    }

    // (b) journey layout, trip kinds and chaining.
    std::vector<int> vehicle_seen(static_cast<std::size_t>(inst.node_count()) + 1, 0);
    for (const auto& j : sol.journeys) {
        if (!inst.is_vehicle(j.vehicle)) {
            add(ViolationCode::Structure, "journey for unknown vehicle " + std::to_string(j.vehicle));
            continue;
        }
        ++vehicle_seen[static_cast<std::size_t>(j.vehicle)];

        for (std::size_t t = 0; t < j.trips.size(); ++t) {
            const Trip& trip = j.trips[t];
            switch (trip.kind) {
                case TripKind::Return:
                    if (t != 0) add(ViolationCode::Structure, trip_label(j, t) + ": return trip not first");
                    if (trip.start != j.vehicle) {
                        add(ViolationCode::Structure,
                            trip_label(j, t) + ": return trip must start at the vehicle terminal");
                    }
                    if (!inst.is_depot(trip.end)) {
                        add(ViolationCode::Structure, trip_label(j, t) + ": return trip must end at a depot");
                    }
                    for (int c : trip.customers) {
                        if (inst.is_linehaul(c)) {
                            add(ViolationCode::Structure,
                                trip_label(j, t) + ": linehaul " + std::to_string(c) + " in return trip");
                        }
                    }
                    break;
                case TripKind::Closed:
                    if (t == 0) {
                        add(ViolationCode::Structure,
                            trip_label(j, t) + ": journey must begin with the return trip");
                    }
                    if (!inst.is_depot(trip.start) || !inst.is_depot(trip.end)) {
                        add(ViolationCode::Structure,
                            trip_label(j, t) + ": closed trip must run depot to depot");
                    }
                    if (trip.customers.empty() && trip.start != trip.end) {
                        add(ViolationCode::Structure,
                            trip_label(j, t) + ": empty trip must stay at its depot");
                    }
                    break;
                case TripKind::Open:
                    if (t == 0) {
                        add(ViolationCode::Structure,
                            trip_label(j, t) + ": journey must begin with the return trip");
                    }
                    if (!inst.is_depot(trip.start)) {
                        add(ViolationCode::Structure, trip_label(j, t) + ": open trip must start at a depot");
                    }
                    if (trip.customers.empty()) {
                        add(ViolationCode::Structure, trip_label(j, t) + ": open trip has no customers");
                    }
                    if (trip.end != Instance::kDummyNode) {
                        add(ViolationCode::Structure,
                            trip_label(j, t) + ": open trip must end at the dummy terminal");
                    }
                    if (t + 1 != j.trips.size()) {
                        add(ViolationCode::Structure, trip_label(j, t) + ": open trip must be the last trip");
                    }
                    break;
            }
            if (t > 0 && j.trips[t - 1].end != trip.start) {
                add(ViolationCode::Structure,
                    trip_label(j, t) + ": starts at " + std::to_string(trip.start) +
                        " but previous trip ends at " + std::to_string(j.trips[t - 1].end));
            }
        }
    }
    for (const auto& v : inst.vehicles()) {
        const int count = vehicle_seen[static_cast<std::size_t>(v.id)];
        if (count != 1) {
            add(ViolationCode::Structure,
                "vehicle " + std::to_string(v.id) + " has " + std::to_string(count) + " journeys");
        }
    }

    // (c) linehauls leave from their home depot.
    for (const auto& j : sol.journeys) {
        for (std::size_t t = 0; t < j.trips.size(); ++t) {
            const Trip& trip = j.trips[t];
            if (trip.kind == TripKind::Return) continue;
            for (int c : trip.customers) {
                if (inst.is_linehaul(c) && inst.home_depot(c) != trip.start) {
                    add(ViolationCode::HomeDepot,
                        trip_label(j, t) + ": linehaul " + std::to_string(c) + " belongs to depot " +
                            std::to_string(inst.home_depot(c)));
                }
            }
        }
    }

    // (d) a trip that picks anything up must end at a depot.
    for (const auto& j : sol.journeys) {
        for (std::size_t t = 0; t < j.trips.size(); ++t) {
            const Trip& trip = j.trips[t];
            if (trip.end != Instance::kDummyNode) continue;
            for (int c : trip.customers) {
                if (inst.is_backhaul(c)) {
                    add(ViolationCode::BackhaulReturn,
                        trip_label(j, t) + ": backhaul " + std::to_string(c) + " on an open trip");
                }
            }
        }
    }

    // (e) load profile: depart with the trip's linehaul load, deliver on
    // linehaul visits, pick up on backhaul visits, stay within [0, Q].
    for (const auto& j : sol.journeys) {
        for (std::size_t t = 0; t < j.trips.size(); ++t) {
            const Trip& trip = j.trips[t];
            long departure = 0;
            for (int c : trip.customers) {
                if (inst.is_linehaul(c)) departure += inst.demand(c);
            }
            if (departure > inst.capacity()) {
                add(ViolationCode::Capacity,
                    trip_label(j, t) + ": departure load " + std::to_string(departure) + " exceeds Q=" +
                        std::to_string(inst.capacity()));
                continue;
            }
            long load = departure;
            for (int c : trip.customers) {
                if (!inst.is_customer(c)) continue;
                if (inst.is_linehaul(c)) {
                    load -= inst.demand(c);
                } else {
                    load += -inst.demand(c);
                }
                if (load < 0 || load > inst.capacity()) {
                    add(ViolationCode::Capacity,
                        trip_label(j, t) + ": load " + std::to_string(load) + " after customer " +
                            std::to_string(c) + " leaves [0, " + std::to_string(inst.capacity()) + "]");
                    break;
                }
            }
        }
    }

    // (f) trip budget per journey.
    for (const auto& j : sol.journeys) {
        const int nonempty = j.nonempty_trip_count();
        if (nonempty > inst.t_max()) {
            add(ViolationCode::TripCount,
                "vehicle " + std::to_string(j.vehicle) + ": " + std::to_string(nonempty) +
                    " non-empty trips exceed t_max=" + std::to_string(inst.t_max()));
        }
    }

    // (g) no customer arc onto itself.
    for (const auto& j : sol.journeys) {
        for (std::size_t t = 0; t < j.trips.size(); ++t) {
            const Trip& trip = j.trips[t];
            for (std::size_t p = 1; p < trip.customers.size(); ++p) {
                if (trip.customers[p] == trip.customers[p - 1]) {
                    add(ViolationCode::SelfLoop,
                        trip_label(j, t) + ": customer " + std::to_string(trip.customers[p]) +
                            " repeated consecutively");
                }
            }
        }
    }

    return verdict;
}

void normalize_journey(Journey& journey) {
    auto& trips = journey.trips;
    // Drop emptied non-return trips outright.
    std::erase_if(trips, [](const Trip& t) { return t.kind != TripKind::Return && !t.has_customers(); });
    // An empty return trip is only kept as a bridge to later trips.
    if (trips.size() == 1 && trips.front().kind == TripKind::Return && !trips.front().has_customers()) {
        trips.clear();
    }
    // Re-stitch: each trip ends where its successor starts.
    for (std::size_t t = 0; t + 1 < trips.size(); ++t) {
        trips[t].end = trips[t + 1].start;
    }
}

void remove_customers(Solution& sol, const Instance& inst, std::span<const int> customers) {
    std::vector<char> drop(static_cast<std::size_t>(inst.node_count()) + 1, 0);
    for (int c : customers) {
        const auto where = locate(sol, c);
        if (!where) throw std::invalid_argument("remove: customer " + std::to_string(c) + " not assigned");
        drop[static_cast<std::size_t>(c)] = 1;
    }
    for (auto& j : sol.journeys) {
        bool touched = false;
        for (auto& t : j.trips) {
            const auto before = t.customers.size();
            std::erase_if(t.customers, [&](int c) { return drop[static_cast<std::size_t>(c)] != 0; });
            touched = touched || t.customers.size() != before;
        }
        if (touched) normalize_journey(j);
    }
}

PartialSolution clone_and_remove(const Solution& sol, const Instance& inst,
                                 std::span<const int> customers) {
    PartialSolution partial;
    partial.solution = sol;
    partial.bank.assign(customers.begin(), customers.end());
    remove_customers(partial.solution, inst, customers);
    return partial;
}

std::optional<CustomerLocation> locate(const Solution& sol, int customer) {
    for (std::size_t j = 0; j < sol.journeys.size(); ++j) {
        const auto& trips = sol.journeys[j].trips;
        for (std::size_t t = 0; t < trips.size(); ++t) {
            const auto& list = trips[t].customers;
            for (std::size_t p = 0; p < list.size(); ++p) {
                if (list[p] == customer) {
                    return CustomerLocation{static_cast<int>(j), static_cast<int>(t),
                                            static_cast<int>(p)};
                }
            }
        }
    }
    return std::nullopt;
}

int anchoring_depot(const Solution& sol, const Instance& inst, int customer) {
    const auto where = locate(sol, customer);
    if (!where) throw std::invalid_argument("anchoring_depot: customer not assigned");
    const Trip& trip =
        sol.journeys[static_cast<std::size_t>(where->journey)].trips[static_cast<std::size_t>(where->trip)];
    if (trip.kind == TripKind::Return) return trip.end;
    (void)inst;
    return trip.start;
}

double positional_cost(const Solution& sol, const Instance& inst, int customer) {
    const auto where = locate(sol, customer);
    if (!where) throw std::invalid_argument("positional_cost: customer not assigned");
    const Trip& trip =
        sol.journeys[static_cast<std::size_t>(where->journey)].trips[static_cast<std::size_t>(where->trip)];
    const auto p = static_cast<std::size_t>(where->position);
    const int prev = p > 0 ? trip.customers[p - 1] : trip.start;
    double cost = inst.distance(prev, customer);
    if (p + 1 < trip.customers.size()) {
        cost += inst.distance(customer, trip.customers[p + 1]);
    } else if (trip.end != Instance::kDummyNode) {
        cost += inst.distance(customer, trip.end);
    }
    return cost;
}

bool trip_load_feasible(std::span<const int> customers, const Instance& inst) {
    long departure = 0;
    for (int c : customers) {
        if (inst.is_linehaul(c)) departure += inst.demand(c);
    }
    if (departure > inst.capacity()) return false;
    long load = departure;
    for (int c : customers) {
        // Delivering q > 0 lowers the load, picking up q <= 0 raises it.
        load -= inst.demand(c);
        if (load < 0 || load > inst.capacity()) return false;
    }
    return true;
}

std::string format_solution(const Solution& sol, const Instance& inst) {
    std::ostringstream out;
    out << "mavrp-solution v1 " << inst.name() << '\n';
    for (const auto& j : sol.journeys) {
        out << "vehicle " << j.vehicle << '\n';
        for (const auto& t : j.trips) {
            switch (t.kind) {
                case TripKind::Return: out << "  return " << t.start; break;
                case TripKind::Closed: out << "  closed " << t.start; break;
                case TripKind::Open: out << "  open " << t.start; break;
            }
            out << " [";
            for (int c : t.customers) out << ' ' << c;
            out << " ] ";
            if (t.end == Instance::kDummyNode) {
                out << "u";
            } else {
                out << t.end;
            }
            out << '\n';
        }
    }
    out << "end\n";
    return out.str();
}

}  // namespace mavrp
