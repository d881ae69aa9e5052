#include "adtcap/builder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "adtcap/rng.hpp"

namespace adtcap {

int levels_from_snr(double snr) {
    if (!std::isfinite(snr) || snr <= 0.0)
        throw std::domain_error("levels_from_snr: snr must be positive and finite");
    double n = std::ceil(0.5 * std::log2(snr));
    return n < 0.0 ? 0 : static_cast<int>(n);
}

LayeredNetwork build_from_gains(const GainSpec& spec,
                                const std::map<std::string, int>& level_count,
                                FieldSpec field) {
    std::map<std::string, std::pair<int, int>> where;  // id -> (layer, index)
    std::vector<std::vector<NodeSpec>> layers;
    int last = static_cast<int>(spec.layers.size()) - 1;
    for (int l = 0; l <= last; ++l) {
        std::vector<NodeSpec> row;
        for (const std::string& id : spec.layers[l]) {
            auto lv = level_count.find(id);
            if (lv == level_count.end())
                throw std::invalid_argument("build_from_gains: no level count for node '" + id +
                                            "'");
            if (lv->second < 0)
                throw std::invalid_argument("build_from_gains: negative level count for '" + id +
                                            "'");
            NodeSpec n{id, lv->second, lv->second};
            if (l == 0)
                n.outputs = 0;
            if (l == last)
                n.inputs = 0;
            where[id] = {l, static_cast<int>(row.size())};
            row.push_back(n);
        }
        layers.push_back(std::move(row));
    }

    LayeredNetwork skeleton(field, layers, {});
    std::vector<Edge> edges;
    for (const GainSpec::Link& link : spec.links) {
        auto f = where.find(link.from), t = where.find(link.to);
        if (f == where.end() || t == where.end())
            throw std::invalid_argument("build_from_gains: link references unknown node");
        if (t->second.first != f->second.first + 1)
            throw std::invalid_argument("build_from_gains: link '" + link.from + "' -> '" +
                                        link.to + "' does not join consecutive layers");
        if (link.levels < 0)
            throw std::invalid_argument("build_from_gains: negative link level count");
        int from_idx = skeleton.node_index(link.from);
        int to_idx = skeleton.node_index(link.to);
        if (link.levels > skeleton.node(from_idx).inputs ||
            link.levels > skeleton.node(to_idx).outputs)
            throw std::invalid_argument("build_from_gains: link '" + link.from + "' -> '" +
                                        link.to + "' exceeds a node level count");
        for (int q = 0; q < link.levels; ++q)
            edges.push_back({from_idx, q, to_idx, q, 1});
    }
    return LayeredNetwork(field, layers, edges);
}

LayeredNetwork random_network(const GenParams& params) {
    if (params.layers < 2)
        throw std::invalid_argument("random_network: need at least 2 layers");
    if (params.max_nodes_per_layer < 1 || params.max_levels_per_node < 1)
        throw std::invalid_argument("random_network: per-layer bounds must be positive");
    if (params.edge_density < 0.0 || params.edge_density > 1.0)
        throw std::invalid_argument("random_network: edge density out of [0,1]");

    FieldSpec field(params.field_p);
    SplitMix64 rng(params.seed);

    std::vector<std::vector<NodeSpec>> layers;
    for (int l = 0; l < params.layers; ++l) {
        bool endpoint = l == 0 || l == params.layers - 1;
        int count = endpoint ? 1 : 1 + static_cast<int>(rng.below(params.max_nodes_per_layer));
        std::vector<NodeSpec> row;
        for (int i = 0; i < count; ++i) {
            int levels = 1 + static_cast<int>(rng.below(params.max_levels_per_node));
            NodeSpec n;
            n.id = l == 0 ? "S"
                          : (l == params.layers - 1 ? "D"
                                                    : "n" + std::to_string(l) + "_" +
                                                          std::to_string(i));
            n.inputs = l == params.layers - 1 ? 0 : levels;
            n.outputs = l == 0 ? 0 : levels;
            row.push_back(std::move(n));
        }
        layers.push_back(std::move(row));
    }

    LayeredNetwork skeleton(field, layers, {});
    std::vector<Edge> edges;
    for (int l = 0; l + 1 < params.layers; ++l) {
        auto [fb, fe] = skeleton.layer_node_range(l);
        auto [tb, te] = skeleton.layer_node_range(l + 1);
        for (int fn = fb; fn < fe; ++fn)
            for (int x = 0; x < skeleton.node(fn).inputs; ++x)
                for (int tn = tb; tn < te; ++tn)
                    for (int y = 0; y < skeleton.node(tn).outputs; ++y)
                        if (rng.unit() < params.edge_density) {
                            uint32_t c = 1 + static_cast<uint32_t>(rng.below(field.p - 1));
                            edges.push_back({fn, x, tn, y, c});
                        }
    }
    return LayeredNetwork(field, layers, edges);
}

}  // namespace adtcap
