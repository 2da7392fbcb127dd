#include "mavrp/instance.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mavrp/rng.hpp"

namespace mavrp {

double euclid(const Position& a, const Position& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

Instance::Instance(std::string name, std::vector<Depot> depots, std::vector<Vehicle> vehicles,
                   std::vector<Customer> linehauls, std::vector<Customer> backhauls, int capacity,
                   int t_max, double map_side)
    : name_(std::move(name)),
      depots_(std::move(depots)),
      vehicles_(std::move(vehicles)),
      linehauls_(std::move(linehauls)),
      backhauls_(std::move(backhauls)),
      capacity_(capacity),
      t_max_(t_max),
      map_side_(map_side) {
    check_invariants();

    positions_.resize(static_cast<std::size_t>(node_count()) + 1);
    for (const auto& d : depots_) positions_[static_cast<std::size_t>(d.id)] = d.pos;
    for (const auto& c : linehauls_) positions_[static_cast<std::size_t>(c.id)] = c.pos;
    for (const auto& c : backhauls_) positions_[static_cast<std::size_t>(c.id)] = c.pos;
    for (const auto& v : vehicles_) positions_[static_cast<std::size_t>(v.id)] = v.pos;

    const std::size_t n = positions_.size();
    dist_.resize(n * n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = euclid(positions_[i], positions_[j]);
            dist_[i * n + j] = d;
            dist_[j * n + i] = d;
        }
    }
    for (int i = first_customer_id(); i <= depot_count() + customer_count(); ++i) {
        for (int j = i + 1; j <= depot_count() + customer_count(); ++j) {
            max_customer_distance_ = std::max(max_customer_distance_, distance(i, j));
        }
    }
}

const Customer& Instance::customer(int id) const {
    if (is_linehaul(id)) return linehauls_[static_cast<std::size_t>(id - depot_count() - 1)];
    if (is_backhaul(id)) {
        return backhauls_[static_cast<std::size_t>(id - depot_count() - linehaul_count() - 1)];
    }
    throw std::out_of_range("not a customer node id: " + std::to_string(id));
}

Position Instance::position(int id) const {
    if (!valid_node(id)) throw std::out_of_range("unknown node id: " + std::to_string(id));
    return positions_[static_cast<std::size_t>(id)];
}

double Instance::distance(int a, int b) const {
    if (!valid_node(a)) throw std::out_of_range("unknown node id: " + std::to_string(a));
    if (!valid_node(b)) throw std::out_of_range("unknown node id: " + std::to_string(b));
    const std::size_t n = positions_.size();
    return dist_[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)];
}

void Instance::check_invariants() const {
    auto fail = [](const std::string& what) { throw std::invalid_argument("instance: " + what); };

    if (depots_.empty()) fail("needs at least one depot");
    if (vehicles_.empty()) fail("needs at least one vehicle");
    if (capacity_ < 1) fail("capacity must be positive");
    if (t_max_ < 1) fail("t_max must be positive");
    if (!(map_side_ > 0.0)) fail("map_side must be positive");

    const int d = depot_count();
    const int m = linehaul_count();
    const int n = backhaul_count();

    auto check_pos = [&](int id, const Position& p, const char* what) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y) || p.x < 0 || p.y < 0 || p.x > map_side_ ||
            p.y > map_side_) {
            fail(std::string(what) + " " + std::to_string(id) + ": position outside map bounds");
        }
    };

    for (int i = 0; i < d; ++i) {
        if (depots_[static_cast<std::size_t>(i)].id != i + 1) fail("depot ids must be 1..d in order");
        check_pos(depots_[static_cast<std::size_t>(i)].id, depots_[static_cast<std::size_t>(i)].pos, "depot");
    }
    for (int i = 0; i < m; ++i) {
        const auto& c = linehauls_[static_cast<std::size_t>(i)];
        if (c.id != d + 1 + i) fail("linehaul ids must be d+1..d+m in order");
        if (c.kind != CustomerKind::Linehaul) fail("customer in linehaul section has wrong kind");
        check_pos(c.id, c.pos, "linehaul");
        if (c.demand <= 0) {
            fail("linehaul " + std::to_string(c.id) + ": demand must be positive, got " +
                 std::to_string(c.demand));
        }
        if (c.demand > capacity_) {
            fail("linehaul " + std::to_string(c.id) + ": demand exceeds capacity");
        }
        if (c.home_depot < 1 || c.home_depot > d) {
            fail("linehaul " + std::to_string(c.id) + ": home depot " + std::to_string(c.home_depot) +
                 " is not a depot");
        }
    }
    for (int i = 0; i < n; ++i) {
        const auto& c = backhauls_[static_cast<std::size_t>(i)];
        if (c.id != d + m + 1 + i) fail("backhaul ids must be d+m+1..d+m+n in order");
        if (c.kind != CustomerKind::Backhaul) fail("customer in backhaul section has wrong kind");
        check_pos(c.id, c.pos, "backhaul");
        if (c.demand > 0) {
            fail("backhaul " + std::to_string(c.id) + ": demand must be <= 0, got " +
                 std::to_string(c.demand));
        }
        if (-c.demand > capacity_) {
            fail("backhaul " + std::to_string(c.id) + ": demand magnitude exceeds capacity");
        }
        if (c.home_depot != 0) fail("backhaul " + std::to_string(c.id) + ": must not have a home depot");
    }
    for (int i = 0; i < vehicle_count(); ++i) {
        const auto& v = vehicles_[static_cast<std::size_t>(i)];
        if (v.id != d + m + n + 1 + i) fail("vehicle ids must be d+m+n+1.. in order");
        check_pos(v.id, v.pos, "vehicle");
    }
}

Instance generate_instance(const GenerateParams& p, std::uint64_t seed) {
    if (p.geography != 'R') throw std::invalid_argument("generate: only geography 'R' is supported");
    if (p.depots < 1) throw std::invalid_argument("generate: depot count must be >= 1");
    if (p.vehicles < 1) throw std::invalid_argument("generate: vehicle count must be >= 1");
    if (p.linehauls < 0 || p.backhauls < 0 || p.linehauls + p.backhauls < 1) {
        throw std::invalid_argument("generate: needs at least one customer");
    }
    if (p.demand_min < 1 || p.demand_max < p.demand_min) {
        throw std::invalid_argument("generate: bad demand magnitude range");
    }
    if (p.demand_max > p.capacity) {
        throw std::invalid_argument("generate: demand magnitude exceeds capacity");
    }

    Rng rng(seed);
    auto draw_pos = [&] {
        Position pos;
        pos.x = rng.uniform(0.0, p.map_side);
        pos.y = rng.uniform(0.0, p.map_side);
        return pos;
    };

    const int d = p.depots;
    const int m = p.linehauls;
    const int n = p.backhauls;

    std::vector<Depot> depots;
    for (int i = 0; i < d; ++i) depots.push_back({i + 1, draw_pos()});
    std::vector<Vehicle> vehicles;
    for (int i = 0; i < p.vehicles; ++i) vehicles.push_back({d + m + n + 1 + i, draw_pos()});
    std::vector<Customer> linehauls;
    for (int i = 0; i < m; ++i) {
        Customer c;
        c.id = d + 1 + i;
        c.kind = CustomerKind::Linehaul;
        c.pos = draw_pos();
        c.demand = static_cast<int>(rng.uniform_int(p.demand_min, p.demand_max));
        c.home_depot = static_cast<int>(rng.uniform_int(1, d));
        linehauls.push_back(c);
    }
    std::vector<Customer> backhauls;
    for (int i = 0; i < n; ++i) {
        Customer c;
        c.id = d + m + 1 + i;
        c.kind = CustomerKind::Backhaul;
        c.pos = draw_pos();
        c.demand = -static_cast<int>(rng.uniform_int(p.demand_min, p.demand_max));
        c.home_depot = 0;
        backhauls.push_back(c);
    }

    NameParts parts{p.geography, d, p.vehicles, m, n};
    return Instance(format_name(parts), std::move(depots), std::move(vehicles), std::move(linehauls),
                    std::move(backhauls), p.capacity, p.t_max, p.map_side);
}

std::string format_name(const NameParts& parts) {
    std::ostringstream out;
    out << parts.geography << '_' << parts.depots << '_' << parts.vehicles << '_' << parts.linehauls
        << '_' << parts.backhauls;
    return out.str();
}

std::optional<NameParts> parse_name(const std::string& name) {
    NameParts parts;
    if (name.size() < 2 || name[1] != '_') return std::nullopt;
    parts.geography = name[0];
    int fields[4] = {0, 0, 0, 0};
    std::size_t pos = 2;
    for (int f = 0; f < 4; ++f) {
        if (pos >= name.size()) return std::nullopt;
        std::size_t next = name.find('_', pos);
        if (f < 3 && next == std::string::npos) return std::nullopt;
        if (f == 3) next = name.size();
        const std::string token = name.substr(pos, next - pos);
        if (token.empty()) return std::nullopt;
        for (char ch : token) {
            if (ch < '0' || ch > '9') return std::nullopt;
        }
        fields[f] = std::stoi(token);
        pos = next + 1;
    }
    parts.depots = fields[0];
    parts.vehicles = fields[1];
    parts.linehauls = fields[2];
    parts.backhauls = fields[3];
    return parts;
}

namespace {

// Shortest exact round-trip decimal form, so files are byte-stable.
std::string fmt_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    if (std::strtod(buf, nullptr) == v) {
        for (int prec = 1; prec < 17; ++prec) {
            char shorter[64];
            std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
            if (std::strtod(shorter, nullptr) == v) return shorter;
        }
    }
    return buf;
}

struct Reader {
    std::istream& in;
    std::string origin;
    int line_no = 0;

    std::string next_line() {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return line;
        }
        throw std::runtime_error(origin + ": unexpected end of file");
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw std::runtime_error(origin + ":" + std::to_string(line_no) + ": " + what);
    }
};

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
    return tokens;
}

int parse_int(Reader& r, const std::string& token, const char* field) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(token, &used);
        if (used != token.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        r.fail(std::string("bad integer for ") + field + ": '" + token + "'");
    }
}

double parse_real(Reader& r, const std::string& token, const char* field) {
    try {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        r.fail(std::string("bad real for ") + field + ": '" + token + "'");
    }
}

}  // namespace

std::string format_instance(const Instance& inst) {
    std::ostringstream out;
    out << "mavrp-instance v1\n";
    out << "name " << inst.name() << '\n';
    out << "capacity " << inst.capacity() << '\n';
    out << "t_max " << inst.t_max() << '\n';
    out << "map_side " << fmt_real(inst.map_side()) << '\n';
    out << "depots " << inst.depot_count() << '\n';
    for (const auto& d : inst.depots()) {
        out << d.id << ' ' << fmt_real(d.pos.x) << ' ' << fmt_real(d.pos.y) << '\n';
    }
    out << "vehicles " << inst.vehicle_count() << '\n';
    for (const auto& v : inst.vehicles()) {
        out << v.id << ' ' << fmt_real(v.pos.x) << ' ' << fmt_real(v.pos.y) << '\n';
    }
    out << "linehauls " << inst.linehaul_count() << '\n';
    for (const auto& c : inst.linehauls()) {
        out << c.id << ' ' << fmt_real(c.pos.x) << ' ' << fmt_real(c.pos.y) << ' ' << c.demand << ' '
            << c.home_depot << '\n';
    }
    out << "backhauls " << inst.backhaul_count() << '\n';
    for (const auto& c : inst.backhauls()) {
        out << c.id << ' ' << fmt_real(c.pos.x) << ' ' << fmt_real(c.pos.y) << ' ' << c.demand << '\n';
    }
    out << "end\n";
    return out.str();
}

Instance parse_instance(std::istream& in, const std::string& origin) {
    Reader r{in, origin};

    if (r.next_line() != "mavrp-instance v1") r.fail("expected header 'mavrp-instance v1'");

    auto expect_field = [&](const char* key) {
        const std::string line = r.next_line();
        const auto tokens = split_ws(line);
        if (tokens.size() != 2 || tokens[0] != key) {
            r.fail(std::string("expected '") + key + " <value>'");
        }
        return tokens[1];
    };

    const std::string name = expect_field("name");
    const int capacity = parse_int(r, expect_field("capacity"), "capacity");
    const int t_max = parse_int(r, expect_field("t_max"), "t_max");
    const double map_side = parse_real(r, expect_field("map_side"), "map_side");

    const int d = parse_int(r, expect_field("depots"), "depots");
    std::vector<Depot> depots;
    for (int i = 0; i < d; ++i) {
        const auto tokens = split_ws(r.next_line());
        if (tokens.size() != 3) r.fail("depot line needs: id x y");
        depots.push_back({parse_int(r, tokens[0], "depot id"),
                          {parse_real(r, tokens[1], "x"), parse_real(r, tokens[2], "y")}});
    }

    const int a = parse_int(r, expect_field("vehicles"), "vehicles");
    std::vector<Vehicle> vehicles;
    for (int i = 0; i < a; ++i) {
        const auto tokens = split_ws(r.next_line());
        if (tokens.size() != 3) r.fail("vehicle line needs: id x y");
        vehicles.push_back({parse_int(r, tokens[0], "vehicle id"),
                            {parse_real(r, tokens[1], "x"), parse_real(r, tokens[2], "y")}});
    }

    const int m = parse_int(r, expect_field("linehauls"), "linehauls");
    std::vector<Customer> linehauls;
    for (int i = 0; i < m; ++i) {
        const auto tokens = split_ws(r.next_line());
        if (tokens.size() != 5) r.fail("linehaul line needs: id x y demand home_depot");
        Customer c;
        c.id = parse_int(r, tokens[0], "linehaul id");
        c.kind = CustomerKind::Linehaul;
        c.pos = {parse_real(r, tokens[1], "x"), parse_real(r, tokens[2], "y")};
        c.demand = parse_int(r, tokens[3], "demand");
        c.home_depot = parse_int(r, tokens[4], "home_depot");
        linehauls.push_back(c);
    }

    const int n = parse_int(r, expect_field("backhauls"), "backhauls");
    std::vector<Customer> backhauls;
    for (int i = 0; i < n; ++i) {
        const auto tokens = split_ws(r.next_line());
        if (tokens.size() != 4) r.fail("backhaul line needs: id x y demand");
        Customer c;
        c.id = parse_int(r, tokens[0], "backhaul id");
        c.kind = CustomerKind::Backhaul;
        c.pos = {parse_real(r, tokens[1], "x"), parse_real(r, tokens[2], "y")};
        c.demand = parse_int(r, tokens[3], "demand");
        c.home_depot = 0;
        backhauls.push_back(c);
    }

    if (r.next_line() != "end") r.fail("expected 'end'");

    try {
        return Instance(name, std::move(depots), std::move(vehicles), std::move(linehauls),
                        std::move(backhauls), capacity, t_max, map_side);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(origin + ": " + e.what());
    }
}

Instance read_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    return parse_instance(in, path);
}

void write_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write instance file: " + path);
    out << format_instance(inst);
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace mavrp
