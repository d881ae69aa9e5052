#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "adtcap/network.hpp"
#include "support/netbuild.hpp"

using namespace adtcap;
using testsupport::NetBuilder;

namespace {

LayeredNetwork minimal_net() {
    return NetBuilder(2)
        .layer({{"S", 1, 0}})
        .layer({{"D", 0, 1}})
        .edge("S", 0, "D", 0)
        .build();
}

LayeredNetwork diamond_net() {
    return NetBuilder(2)
        .layer({{"S", 2, 0}})
        .layer({{"A", 1, 1}, {"B", 1, 1}})
        .layer({{"D", 0, 2}})
        .edge("S", 0, "A", 0)
        .edge("S", 1, "B", 0)
        .edge("A", 0, "D", 0)
        .edge("B", 0, "D", 1)
        .build();
}

bool has_error(const std::vector<ValidationError>& errs, const std::string& needle) {
    return std::any_of(errs.begin(), errs.end(), [&](const ValidationError& e) {
        return e.message.find(needle) != std::string::npos;
    });
}

}  // namespace

TEST_CASE("minimal legal network validates") {
    CHECK(minimal_net().validate().empty());
}

TEST_CASE("edge skipping a layer is rejected") {
    auto net = NetBuilder(2)
                   .layer({{"S", 1, 0}})
                   .layer({{"R", 1, 1}})
                   .layer({{"D", 0, 1}})
                   .edge("S", 0, "D", 0)
                   .build();
    CHECK(has_error(net.validate(), "non-adjacent layers"));
}

TEST_CASE("duplicate edge on the same port pair is rejected") {
    auto net = NetBuilder(2)
                   .layer({{"S", 1, 0}})
                   .layer({{"D", 0, 1}})
                   .edge("S", 0, "D", 0)
                   .edge("S", 0, "D", 0)
                   .build();
    CHECK(has_error(net.validate(), "duplicate edge"));
}

TEST_CASE("validate reports endpoint structure problems") {
    auto net = NetBuilder(2)
                   .layer({{"S", 1, 1}})  // source must not have outputs
                   .layer({{"D", 1, 1}})  // destination must not have inputs
                   .edge("S", 0, "D", 0)
                   .build();
    auto errs = net.validate();
    CHECK(has_error(errs, "zero output ports"));
    CHECK(has_error(errs, "zero input ports"));
}

TEST_CASE("validate reports out-of-range ports, zero coefficients, duplicate ids") {
    auto net = NetBuilder(3)
                   .layer({{"S", 2, 0}})
                   .layer({{"A", 1, 1}, {"A", 1, 1}})
                   .edge("S", 5, "A", 0)
                   .edge("S", 1, "A", 0, 3)  // 3 mod 3 == 0
                   .build();
    auto errs = net.validate();
    CHECK(has_error(errs, "input port out of range"));
    CHECK(has_error(errs, "coefficient must be nonzero"));
    CHECK(has_error(errs, "duplicate node id"));
    CHECK(has_error(errs, "destination"));
}

TEST_CASE("adjacency basics") {
    auto net = minimal_net();
    CHECK(adjacency(net, {}, {}).rows() == 0);

    std::vector<int> xs{net.input_gid(0, 0)};
    std::vector<int> ys{net.output_gid(net.destination(), 0)};
    FMatrix m = adjacency(net, xs, ys);
    REQUIRE(m.rows() == 1);
    REQUIRE(m.cols() == 1);
    CHECK(m.at(0, 0) == 1);
}

TEST_CASE("broadcast input produces a full row") {
    auto net = NetBuilder(2)
                   .layer({{"S", 1, 0}})
                   .layer({{"D", 0, 2}})
                   .edge("S", 0, "D", 0)
                   .edge("S", 0, "D", 1)
                   .build();
    std::vector<int> xs{net.input_gid(0, 0)};
    std::vector<int> ys{net.output_gid(1, 0), net.output_gid(1, 1)};
    FMatrix m = adjacency(net, xs, ys);
    CHECK(m.at(0, 0) == 1);
    CHECK(m.at(0, 1) == 1);
    CHECK(cut_value(net, Cut{{0}}) == 1);  // one broadcast row has rank 1
}

TEST_CASE("adjacency is order-equivariant in the row list") {
    auto net = diamond_net();
    std::vector<int> xs{net.input_gid(0, 0), net.input_gid(0, 1)};
    std::vector<int> ys{net.output_gid(1, 0), net.output_gid(2, 0)};
    FMatrix m = adjacency(net, xs, ys);
    std::swap(xs[0], xs[1]);
    FMatrix swapped = adjacency(net, xs, ys);
    for (size_t c = 0; c < 2; ++c) {
        CHECK(m.at(0, c) == swapped.at(1, c));
        CHECK(m.at(1, c) == swapped.at(0, c));
    }
}

TEST_CASE("adjacency rejects unknown ports") {
    auto net = minimal_net();
    std::vector<int> bad{17};
    CHECK_THROWS_AS(adjacency(net, bad, {}), std::invalid_argument);
}

TEST_CASE("cut_edges on the boundary cuts") {
    auto net = diamond_net();
    auto from_s = cut_edges(net, Cut{{0}});
    REQUIRE(from_s.size() == 2);
    for (const Edge& e : from_s)
        CHECK(e.from_node == net.source());

    Cut all_but_d{{0, 1, 2}};
    auto into_d = cut_edges(net, all_but_d);
    REQUIRE(into_d.size() == 2);
    for (const Edge& e : into_d)
        CHECK(e.to_node == net.destination());
}

TEST_CASE("cut_edges on a cross-layer cut, hand enumerated") {
    auto net = diamond_net();
    auto crossing = cut_edges(net, Cut{{0, 1}});  // S and A
    // expected: S.x1 -> B.y0 and A.x0 -> D.y0
    REQUIRE(crossing.size() == 2);
    CHECK(crossing[0] == Edge{0, 1, 2, 0, 1});
    CHECK(crossing[1] == Edge{1, 0, 3, 0, 1});
}

TEST_CASE("cut invariants are enforced") {
    auto net = diamond_net();
    CHECK_THROWS_AS(cut_edges(net, Cut{{1}}), std::invalid_argument);            // no source
    CHECK_THROWS_AS(cut_edges(net, Cut{{0, 3}}), std::invalid_argument);         // destination
    CHECK_THROWS_AS(cut_edges(net, Cut{{0, 99}}), std::invalid_argument);        // unknown
}

TEST_CASE("cut_value basics and the edge-count bound") {
    auto net = diamond_net();
    CHECK(cut_value(net, Cut{{0}}) == 2);
    CHECK(cut_value(net, Cut{{0, 1}}) == 2);
    CHECK(cut_value(net, Cut{{0, 1, 2}}) == 2);

    // every subset cut satisfies value <= crossing edge count
    for (const Cut& c : {Cut{{0}}, Cut{{0, 1}}, Cut{{0, 2}}, Cut{{0, 1, 2}}})
        CHECK(cut_value(net, c) <= cut_edges(net, c).size());
}

TEST_CASE("cut with no crossing edges has value zero") {
    auto net = NetBuilder(2)
                   .layer({{"S", 1, 0}})
                   .layer({{"R", 1, 1}})
                   .layer({{"D", 0, 1}})
                   .edge("S", 0, "R", 0)
                   .build();  // R -> D missing entirely
    CHECK(cut_value(net, Cut{{0, 1}}) == 0);
}

TEST_CASE("network stats") {
    auto net = diamond_net();
    NetworkStats s = network_stats(net);
    CHECK(s.layers == 3);
    CHECK(s.max_nodes_per_layer == 2);
    CHECK(s.num_inputs == 4);
    CHECK(s.num_outputs == 4);
    CHECK(s.num_edges == 4);
    CHECK(s.max_edges_per_input == 1);
    CHECK(s.max_inputs_per_node == 2);
}

TEST_CASE("isolated ports are legal") {
    auto net = NetBuilder(2)
                   .layer({{"S", 3, 0}})
                   .layer({{"D", 0, 2}})
                   .edge("S", 0, "D", 0)
                   .build();
    CHECK(net.validate().empty());
}
