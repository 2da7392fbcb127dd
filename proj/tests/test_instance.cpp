#include <doctest.h>

#include <cmath>
#include <sstream>

#include "mavrp/instance.hpp"
#include "mavrp/rng.hpp"

using namespace mavrp;

namespace {

Instance tiny_instance() {
    std::vector<Depot> depots{{1, {0.0, 0.0}}};
    std::vector<Vehicle> vehicles{{4, {1.0, 1.0}}};
    std::vector<Customer> linehauls{{2, CustomerKind::Linehaul, {3.0, 4.0}, 2, 1}};
    std::vector<Customer> backhauls{{3, CustomerKind::Backhaul, {5.0, 5.0}, -1, 0}};
    return Instance("R_1_1_1_1", depots, vehicles, linehauls, backhauls, 6, 10, 30.0);
}

}  // namespace

TEST_CASE("euclid matches hand values") {
    CHECK(euclid({0, 0}, {0, 0}) == 0.0);
    CHECK(euclid({0, 0}, {3, 4}) == doctest::Approx(5.0));
    // sqrt(9 + 16) evaluated by hand
    CHECK(euclid({1, 1}, {4, 5}) == doctest::Approx(5.0));
}

TEST_CASE("distance is a metric") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const Position a{rng.uniform(0, 30), rng.uniform(0, 30)};
        const Position b{rng.uniform(0, 30), rng.uniform(0, 30)};
        const Position c{rng.uniform(0, 30), rng.uniform(0, 30)};
        CHECK(euclid(a, b) >= 0.0);
        CHECK(euclid(a, b) == doctest::Approx(euclid(b, a)));
        CHECK(euclid(a, a) == 0.0);
        CHECK(euclid(a, c) <= euclid(a, b) + euclid(b, c) + 1e-9);
    }
}

TEST_CASE("instance layout and lookups") {
    const Instance inst = tiny_instance();
    CHECK(inst.is_depot(1));
    CHECK(inst.is_linehaul(2));
    CHECK(inst.is_backhaul(3));
    CHECK(inst.is_vehicle(4));
    CHECK(inst.distance(1, 2) == doctest::Approx(5.0));
    CHECK_THROWS_AS((void)inst.distance(1, 99), std::out_of_range);
}

TEST_CASE("instance invariants are enforced") {
    std::vector<Depot> depots{{1, {0.0, 0.0}}};
    std::vector<Vehicle> vehicles{{3, {1.0, 1.0}}};

    SUBCASE("negative linehaul demand") {
        std::vector<Customer> linehauls{{2, CustomerKind::Linehaul, {3.0, 4.0}, -2, 1}};
        CHECK_THROWS_WITH_AS(Instance("x", depots, vehicles, linehauls, {}, 6, 10, 30.0),
                             doctest::Contains("linehaul 2"), std::invalid_argument);
    }
    SUBCASE("missing home depot") {
        std::vector<Customer> linehauls{{2, CustomerKind::Linehaul, {3.0, 4.0}, 2, 0}};
        CHECK_THROWS_AS(Instance("x", depots, vehicles, linehauls, {}, 6, 10, 30.0),
                        std::invalid_argument);
    }
    SUBCASE("demand over capacity") {
        std::vector<Customer> linehauls{{2, CustomerKind::Linehaul, {3.0, 4.0}, 9, 1}};
        CHECK_THROWS_AS(Instance("x", depots, vehicles, linehauls, {}, 6, 10, 30.0),
                        std::invalid_argument);
    }
    SUBCASE("coordinates out of bounds") {
        std::vector<Customer> linehauls{{2, CustomerKind::Linehaul, {31.0, 4.0}, 2, 1}};
        CHECK_THROWS_AS(Instance("x", depots, vehicles, linehauls, {}, 6, 10, 30.0),
                        std::invalid_argument);
    }
}

TEST_CASE("generate produces the requested shape") {
    GenerateParams params;
    params.depots = 2;
    params.vehicles = 2;
    params.linehauls = 5;
    params.backhauls = 7;
    const Instance inst = generate_instance(params, 42);
    CHECK(inst.name() == "R_2_2_5_7");
    CHECK(inst.depot_count() == 2);
    CHECK(inst.vehicle_count() == 2);
    CHECK(inst.linehaul_count() == 5);
    CHECK(inst.backhaul_count() == 7);
    CHECK(inst.capacity() == 6);
}

TEST_CASE("generate minimal instance") {
    GenerateParams params;
    params.linehauls = 1;
    params.demand_min = params.demand_max = 1;
    const Instance inst = generate_instance(params, 3);
    CHECK(inst.name() == "R_1_1_1_0");
    CHECK(inst.linehauls().front().demand == 1);
}

TEST_CASE("generate is deterministic") {
    GenerateParams params;
    params.depots = 2;
    params.vehicles = 3;
    params.linehauls = 4;
    params.backhauls = 5;
    const std::string a = format_instance(generate_instance(params, 99));
    const std::string b = format_instance(generate_instance(params, 99));
    CHECK(a == b);
    const std::string c = format_instance(generate_instance(params, 100));
    CHECK(a != c);
}

TEST_CASE("generate rejects degenerate configs") {
    GenerateParams params;
    params.vehicles = 0;
    params.linehauls = 1;
    CHECK_THROWS_AS(generate_instance(params, 1), std::invalid_argument);
    params.vehicles = 1;
    params.linehauls = 0;
    params.backhauls = 0;
    CHECK_THROWS_AS(generate_instance(params, 1), std::invalid_argument);
}

TEST_CASE("generated instances satisfy every invariant") {
    // The constructor is the invariant checker, so surviving generation plus
    // a spot check of ranges covers the property.
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        GenerateParams params;
        Rng rng(seed);
        params.depots = static_cast<int>(rng.uniform_int(1, 3));
        params.vehicles = static_cast<int>(rng.uniform_int(1, 3));
        params.linehauls = static_cast<int>(rng.uniform_int(0, 6));
        params.backhauls = static_cast<int>(rng.uniform_int(0, 6));
        if (params.linehauls + params.backhauls == 0) params.linehauls = 1;
        const Instance inst = generate_instance(params, seed);
        for (const auto& c : inst.linehauls()) {
            CHECK(c.demand > 0);
            CHECK(c.home_depot >= 1);
            CHECK(c.home_depot <= inst.depot_count());
            CHECK(c.pos.x >= 0.0);
            CHECK(c.pos.x <= inst.map_side());
        }
        for (const auto& c : inst.backhauls()) CHECK(c.demand < 0);
    }
}

TEST_CASE("name round-trip") {
    const auto parts = parse_name("R_2_3_17_19");
    REQUIRE(parts.has_value());
    CHECK(parts->depots == 2);
    CHECK(parts->vehicles == 3);
    CHECK(parts->linehauls == 17);
    CHECK(parts->backhauls == 19);
    CHECK(format_name(*parts) == "R_2_3_17_19");
    CHECK_FALSE(parse_name("nonsense").has_value());
    CHECK_FALSE(parse_name("R_1_2_3").has_value());
}

TEST_CASE("instance file round-trip is exact") {
    GenerateParams params;
    params.depots = 2;
    params.vehicles = 2;
    params.linehauls = 3;
    params.backhauls = 4;
    const Instance inst = generate_instance(params, 7);
    const std::string text = format_instance(inst);
    std::istringstream in(text);
    const Instance reread = parse_instance(in, "mem");
    CHECK(format_instance(reread) == text);
}

TEST_CASE("instance parser reports bad fields with context") {
    const Instance inst = tiny_instance();
    std::string text = format_instance(inst);

    SUBCASE("negative linehaul demand") {
        auto pos = text.find("3 4 2 1");
        REQUIRE(pos != std::string::npos);
        text.replace(pos, 7, "3 4 -2 1");
        std::istringstream in(text);
        CHECK_THROWS_WITH_AS(parse_instance(in, "mem"), doctest::Contains("linehaul 2"),
                             std::runtime_error);
    }
    SUBCASE("missing home depot field") {
        auto pos = text.find("3 4 2 1");
        REQUIRE(pos != std::string::npos);
        text.replace(pos, 7, "3 4 2");
        std::istringstream in(text);
        CHECK_THROWS_WITH_AS(parse_instance(in, "mem"), doctest::Contains("home_depot"),
                             std::runtime_error);
    }
    SUBCASE("garbage number") {
        auto pos = text.find("capacity 6");
        REQUIRE(pos != std::string::npos);
        text.replace(pos, 10, "capacity six");
        std::istringstream in(text);
        CHECK_THROWS_WITH_AS(parse_instance(in, "mem"), doctest::Contains("capacity"),
                             std::runtime_error);
    }
}
