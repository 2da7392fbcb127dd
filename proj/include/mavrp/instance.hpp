#ifndef MAVRP_INSTANCE_HPP_
#define MAVRP_INSTANCE_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mavrp {

struct Position {
    double x = 0.0;
    double y = 0.0;
};

// Travel time between two points: Euclidean distance at unit speed.
double euclid(const Position& a, const Position& b);

enum class CustomerKind { Linehaul, Backhaul };

struct Depot {
    int id = 0;
    Position pos;
};

struct Vehicle {
    int id = 0;
    Position pos;  // start terminal
};

struct Customer {
    int id = 0;
    CustomerKind kind = CustomerKind::Linehaul;
    Position pos;
    int demand = 0;      // > 0 for linehauls, <= 0 for backhauls
    int home_depot = 0;  // depot id for linehauls, 0 for backhauls
};

// A multi-attribute VRP instance: multiple depots, a homogeneous fleet with
// bin capacity Q, linehaul customers tied to a home depot, backhaul customers
// returning goods to any depot. Node ids are laid out as depots 1..d,
// linehauls d+1..d+m, backhauls d+m+1..d+m+n, vehicles d+m+n+1..d+m+n+a.
// Immutable after construction and safe to share across threads.
class Instance {
public:
    // Node id of the dummy terminal that ends an open trip.
    static constexpr int kDummyNode = 0;

    Instance(std::string name, std::vector<Depot> depots, std::vector<Vehicle> vehicles,
             std::vector<Customer> linehauls, std::vector<Customer> backhauls, int capacity,
             int t_max, double map_side);

    const std::string& name() const { return name_; }
    int capacity() const { return capacity_; }
    int t_max() const { return t_max_; }
    double map_side() const { return map_side_; }

    const std::vector<Depot>& depots() const { return depots_; }
    const std::vector<Vehicle>& vehicles() const { return vehicles_; }
    const std::vector<Customer>& linehauls() const { return linehauls_; }
    const std::vector<Customer>& backhauls() const { return backhauls_; }

    int depot_count() const { return static_cast<int>(depots_.size()); }
    int vehicle_count() const { return static_cast<int>(vehicles_.size()); }
    int linehaul_count() const { return static_cast<int>(linehauls_.size()); }
    int backhaul_count() const { return static_cast<int>(backhauls_.size()); }
    int customer_count() const { return linehaul_count() + backhaul_count(); }
    int node_count() const { return depot_count() + customer_count() + vehicle_count(); }

    bool valid_node(int id) const { return id >= 1 && id <= node_count(); }
    bool is_depot(int id) const { return id >= 1 && id <= depot_count(); }
    bool is_linehaul(int id) const { return id > depot_count() && id <= depot_count() + linehaul_count(); }
    bool is_backhaul(int id) const {
        return id > depot_count() + linehaul_count() && id <= depot_count() + customer_count();
    }
    bool is_customer(int id) const { return is_linehaul(id) || is_backhaul(id); }
    bool is_vehicle(int id) const { return id > depot_count() + customer_count() && id <= node_count(); }

    int first_customer_id() const { return depot_count() + 1; }
    int first_vehicle_id() const { return depot_count() + customer_count() + 1; }

    const Customer& customer(int id) const;
    Position position(int id) const;
    int demand(int id) const { return customer(id).demand; }
    int home_depot(int id) const { return customer(id).home_depot; }

    // Arc travel time between two node ids. Throws std::out_of_range on an
    // unknown id; the dummy terminal is not a travel node.
    double distance(int a, int b) const;

    // Largest pairwise distance between customers (0 when fewer than two).
    double max_customer_distance() const { return max_customer_distance_; }

private:
    void check_invariants() const;

    std::string name_;
    std::vector<Depot> depots_;
    std::vector<Vehicle> vehicles_;
    std::vector<Customer> linehauls_;
    std::vector<Customer> backhauls_;
    int capacity_ = 0;
    int t_max_ = 0;
    double map_side_ = 0.0;

    std::vector<Position> positions_;  // by node id, index 0 unused
    std::vector<double> dist_;         // dense (n+1)^2 matrix
    double max_customer_distance_ = 0.0;
};

struct GenerateParams {
    char geography = 'R';  // only random uniform is supported
    int depots = 1;
    int vehicles = 1;
    int linehauls = 0;
    int backhauls = 0;
    int demand_min = 1;  // demand magnitude range, inclusive
    int demand_max = 3;
    int capacity = 6;
    int t_max = 10;
    double map_side = 30.0;
};

// Draws a random instance: coordinates i.i.d. uniform on the square map,
// linehaul home depots uniform over depots, demand magnitudes uniform over
// [demand_min, demand_max]. Deterministic for a fixed seed.
Instance generate_instance(const GenerateParams& params, std::uint64_t seed);

struct NameParts {
    char geography = 'R';
    int depots = 0;
    int vehicles = 0;
    int linehauls = 0;
    int backhauls = 0;
};

// Builds/parses names of the form R_<depots>_<vehicles>_<linehauls>_<backhauls>.
std::string format_name(const NameParts& parts);
std::optional<NameParts> parse_name(const std::string& name);

// Canonical text format. write/read round-trips exactly; parse errors carry
// the offending line and field.
std::string format_instance(const Instance& inst);
Instance parse_instance(std::istream& in, const std::string& origin);
Instance read_instance(const std::string& path);
void write_instance(const Instance& inst, const std::string& path);

}  // namespace mavrp

#endif
