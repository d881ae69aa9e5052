#pragma once

// Compact test-side network construction by node id.

#include <string>
#include <vector>

#include "adtcap/network.hpp"

namespace testsupport {

class NetBuilder {
public:
    explicit NetBuilder(uint32_t p = 2) : field_(p) {}

    NetBuilder& layer(std::vector<adtcap::NodeSpec> nodes) {
        layers_.push_back(std::move(nodes));
        return *this;
    }

    NetBuilder& edge(const std::string& from, int x, const std::string& to, int y,
                     uint32_t coeff = 1) {
        pending_.push_back({from, x, to, y, coeff});
        return *this;
    }

    adtcap::LayeredNetwork build() const {
        adtcap::LayeredNetwork skeleton(field_, layers_, {});
        std::vector<adtcap::Edge> edges;
        for (const auto& pe : pending_)
            edges.push_back({skeleton.node_index(pe.from), pe.x, skeleton.node_index(pe.to),
                             pe.y, pe.coeff});
        return adtcap::LayeredNetwork(field_, layers_, edges);
    }

private:
    struct PendingEdge {
        std::string from;
        int x;
        std::string to;
        int y;
        uint32_t coeff;
    };
    adtcap::FieldSpec field_;
    std::vector<std::vector<adtcap::NodeSpec>> layers_;
    std::vector<PendingEdge> pending_;
};

}  // namespace testsupport
