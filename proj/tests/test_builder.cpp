#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "adtcap/builder.hpp"

using namespace adtcap;

TEST_CASE("levels_from_snr follows the half-log rule") {
    CHECK(levels_from_snr(64.0) == 3);
    CHECK(levels_from_snr(1.0) == 0);
    CHECK(levels_from_snr(2.0) == 1);
    CHECK(levels_from_snr(4.0) == 1);
    CHECK(levels_from_snr(5.0) == 2);
    CHECK(levels_from_snr(0.25) == 0);  // below noise level, clamped
    CHECK_THROWS_AS(levels_from_snr(0.0), std::domain_error);
    CHECK_THROWS_AS(levels_from_snr(-3.0), std::domain_error);
}

TEST_CASE("build_from_gains wires top-aligned parallel unit edges") {
    GainSpec spec;
    spec.layers = {{"S"}, {"D"}};
    spec.links = {{"S", "D", 3}};
    auto net = build_from_gains(spec, {{"S", 3}, {"D", 3}});
    CHECK(net.validate().empty());
    REQUIRE(net.edges().size() == 3);
    for (int q = 0; q < 3; ++q) {
        Edge e = net.edges()[q];
        CHECK(e.input_index == q);
        CHECK(e.output_index == q);
        CHECK(e.coeff == 1);
    }
    CHECK(cut_value(net, Cut{{0}}) == 3);
}

TEST_CASE("build_from_gains with zero levels yields no edges") {
    GainSpec spec;
    spec.layers = {{"S"}, {"D"}};
    spec.links = {{"S", "D", 0}};
    auto net = build_from_gains(spec, {{"S", 2}, {"D", 2}});
    CHECK(net.validate().empty());
    CHECK(net.edges().empty());
}

TEST_CASE("two transmitters sharing a receiver level interfere") {
    GainSpec spec;
    spec.layers = {{"S"}, {"A", "B"}, {"D"}};
    spec.links = {{"S", "A", 1}, {"S", "B", 1}, {"A", "D", 1}, {"B", "D", 1}};
    auto net = build_from_gains(spec, {{"S", 2}, {"A", 1}, {"B", 1}, {"D", 1}});
    CHECK(net.validate().empty());
    // both relays land on the single top level of D
    int d_out = net.output_gid(net.destination(), 0);
    CHECK(net.edges_into_output(d_out).size() == 2);
}

TEST_CASE("build_from_gains rejects bad specs") {
    GainSpec overflow;
    overflow.layers = {{"S"}, {"D"}};
    overflow.links = {{"S", "D", 4}};
    CHECK_THROWS_AS(build_from_gains(overflow, {{"S", 3}, {"D", 3}}), std::invalid_argument);

    GainSpec skip;
    skip.layers = {{"S"}, {"R"}, {"D"}};
    skip.links = {{"S", "D", 1}};
    CHECK_THROWS_AS(build_from_gains(skip, {{"S", 1}, {"R", 1}, {"D", 1}}),
                    std::invalid_argument);

    GainSpec unknown;
    unknown.layers = {{"S"}, {"D"}};
    unknown.links = {{"S", "X", 1}};
    CHECK_THROWS_AS(build_from_gains(unknown, {{"S", 1}, {"D", 1}}), std::invalid_argument);
}

TEST_CASE("random_network with zero density is edgeless") {
    GenParams p;
    p.layers = 3;
    p.edge_density = 0.0;
    p.seed = 11;
    auto net = random_network(p);
    CHECK(net.validate().empty());
    CHECK(net.edges().empty());
}

TEST_CASE("random_network with full density is complete bipartite per layer") {
    GenParams p;
    p.layers = 2;
    p.max_levels_per_node = 2;
    p.edge_density = 1.0;
    p.field_p = 2;
    // find the first seed where both endpoints draw two levels
    for (uint64_t seed = 0;; ++seed) {
        p.seed = seed;
        auto net = random_network(p);
        if (net.node(0).inputs == 2 && net.node(1).outputs == 2) {
            CHECK(net.edges().size() == 4);
            // all-ones 2x2 over F_2: the only S-D cut has rank 1
            CHECK(cut_value(net, Cut{{0}}) == 1);
            break;
        }
        REQUIRE(seed < 100);
    }
}

TEST_CASE("random_network is reproducible and valid") {
    for (uint64_t seed : {0ULL, 1ULL, 42ULL, 0xdeadbeefULL}) {
        GenParams p;
        p.layers = 4;
        p.max_nodes_per_layer = 3;
        p.max_levels_per_node = 3;
        p.edge_density = 0.5;
        p.field_p = 5;
        p.seed = seed;
        auto a = random_network(p);
        auto b = random_network(p);
        CHECK(a == b);
        CHECK(a.validate().empty());
        for (const Edge& e : a.edges()) {
            CHECK(e.coeff >= 1);
            CHECK(e.coeff < 5);
        }
    }
}

TEST_CASE("random_network parameter validation") {
    GenParams p;
    p.layers = 1;
    CHECK_THROWS_AS(random_network(p), std::invalid_argument);
    p.layers = 3;
    p.edge_density = 1.5;
    CHECK_THROWS_AS(random_network(p), std::invalid_argument);
}
