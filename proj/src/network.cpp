#include "adtcap/network.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace adtcap {

LayeredNetwork::LayeredNetwork(FieldSpec field, std::vector<std::vector<NodeSpec>> layers,
                               std::vector<Edge> edges)
    : field_(field), raw_layers_(std::move(layers)), edges_(std::move(edges)) {
    layer_begin_.reserve(raw_layers_.size());
    for (const auto& layer : raw_layers_) {
        layer_begin_.push_back(static_cast<int>(nodes_.size()));
        layer_sizes_.push_back(static_cast<int>(layer.size()));
        for (const auto& n : layer) {
            layer_of_.push_back(static_cast<int>(layer_begin_.size()) - 1);
            nodes_.push_back(n);
        }
    }

    input_begin_.resize(nodes_.size() + 1, 0);
    output_begin_.resize(nodes_.size() + 1, 0);
    for (size_t n = 0; n < nodes_.size(); ++n) {
        input_begin_[n + 1] = input_begin_[n] + std::max(0, nodes_[n].inputs);
        output_begin_[n + 1] = output_begin_[n] + std::max(0, nodes_[n].outputs);
    }
    input_node_.resize(input_begin_.back());
    output_node_.resize(output_begin_.back());
    for (size_t n = 0; n < nodes_.size(); ++n) {
        for (int g = input_begin_[n]; g < input_begin_[n + 1]; ++g)
            input_node_[g] = static_cast<int>(n);
        for (int g = output_begin_[n]; g < output_begin_[n + 1]; ++g)
            output_node_[g] = static_cast<int>(n);
    }

    for (size_t n = 0; n < nodes_.size(); ++n)
        id_index_.emplace(nodes_[n].id, static_cast<int>(n));

    // Edge indices skip malformed edges; validate() reports them.
    std::vector<std::vector<PortEdge>> by_input(input_node_.size());
    std::vector<std::vector<PortEdge>> by_output(output_node_.size());
    for (const Edge& e : edges_) {
        if (!edge_ports_in_range(e))
            continue;
        int ig = input_gid(e.from_node, e.input_index);
        int og = output_gid(e.to_node, e.output_index);
        uint32_t c = e.coeff % field_.p;
        by_input[ig].push_back({og, c});
        by_output[og].push_back({ig, c});
        coeff_[(static_cast<uint64_t>(ig) << 32) | static_cast<uint32_t>(og)] = c;
    }
    auto flatten = [](std::vector<std::vector<PortEdge>>& src, std::vector<int>& begin,
                      std::vector<PortEdge>& flat) {
        begin.resize(src.size() + 1, 0);
        for (size_t i = 0; i < src.size(); ++i) {
            std::sort(src[i].begin(), src[i].end(),
                      [](const PortEdge& a, const PortEdge& b) { return a.peer_gid < b.peer_gid; });
            begin[i + 1] = begin[i] + static_cast<int>(src[i].size());
            flat.insert(flat.end(), src[i].begin(), src[i].end());
        }
    };
    flatten(by_input, out_edge_begin_, out_edges_);
    flatten(by_output, in_edge_begin_, in_edges_);
}

bool LayeredNetwork::edge_ports_in_range(const Edge& e) const {
    return e.from_node >= 0 && e.from_node < num_nodes() && e.to_node >= 0 &&
           e.to_node < num_nodes() && e.input_index >= 0 &&
           e.input_index < nodes_[e.from_node].inputs && e.output_index >= 0 &&
           e.output_index < nodes_[e.to_node].outputs;
}

std::pair<int, int> LayeredNetwork::cut_input_range(int l) const {
    auto [nb, ne] = layer_node_range(l);
    return {input_begin_[nb], input_begin_[ne]};
}

std::pair<int, int> LayeredNetwork::cut_output_range(int l) const {
    auto [nb, ne] = layer_node_range(l + 1);
    return {output_begin_[nb], output_begin_[ne]};
}

int LayeredNetwork::node_index(const std::string& id) const {
    auto it = id_index_.find(id);
    return it == id_index_.end() ? -1 : it->second;
}

std::vector<ValidationError> LayeredNetwork::validate() const {
    std::vector<ValidationError> errs;
    auto err = [&](std::string msg) { errs.push_back({std::move(msg)}); };

    if (num_layers() < 2) {
        err("network must have at least 2 layers");
        return errs;
    }
    if (layer_sizes_.front() != 1)
        err("layer 0 must contain exactly the source node");
    else if (nodes_.front().outputs != 0)
        err("source node '" + nodes_.front().id + "' must have zero output ports");
    if (layer_sizes_.back() != 1)
        err("last layer must contain exactly the destination node");
    else if (nodes_.back().inputs != 0)
        err("destination node '" + nodes_.back().id + "' must have zero input ports");

    for (int n = 0; n < num_nodes(); ++n) {
        if (nodes_[n].inputs < 0 || nodes_[n].outputs < 0)
            err("node '" + nodes_[n].id + "': negative port count");
    }
    {
        std::set<std::string> seen;
        for (const auto& n : nodes_)
            if (!seen.insert(n.id).second)
                err("duplicate node id '" + n.id + "'");
    }

    std::set<std::pair<int, int>> port_pairs;
    for (size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        std::string where = "edge " + std::to_string(i);
        if (e.from_node < 0 || e.from_node >= num_nodes() || e.to_node < 0 ||
            e.to_node >= num_nodes()) {
            err(where + ": unknown endpoint node");
            continue;
        }
        where += " (" + nodes_[e.from_node].id + ".x" + std::to_string(e.input_index) + " -> " +
                 nodes_[e.to_node].id + ".y" + std::to_string(e.output_index) + ")";
        if (layer_of_[e.to_node] != layer_of_[e.from_node] + 1)
            err(where + ": non-adjacent layers (" + std::to_string(layer_of_[e.from_node]) +
                " -> " + std::to_string(layer_of_[e.to_node]) + ")");
        if (e.input_index < 0 || e.input_index >= nodes_[e.from_node].inputs)
            err(where + ": input port out of range");
        if (e.output_index < 0 || e.output_index >= nodes_[e.to_node].outputs)
            err(where + ": output port out of range");
        if (e.coeff % field_.p == 0)
            err(where + ": edge coefficient must be nonzero in F_" + std::to_string(field_.p));
        if (edge_ports_in_range(e)) {
            auto key = std::make_pair(input_gid(e.from_node, e.input_index),
                                      output_gid(e.to_node, e.output_index));
            if (!port_pairs.insert(key).second)
                err(where + ": duplicate edge on the same port pair");
        }
    }
    return errs;
}

FMatrix adjacency(const LayeredNetwork& net, std::span<const int> input_gids,
                  std::span<const int> output_gids) {
    for (int g : input_gids)
        if (g < 0 || g >= net.num_inputs())
            throw std::invalid_argument("adjacency: unknown input port");
    for (int g : output_gids)
        if (g < 0 || g >= net.num_outputs())
            throw std::invalid_argument("adjacency: unknown output port");
    FMatrix m(input_gids.size(), output_gids.size(), net.field());
    for (size_t r = 0; r < input_gids.size(); ++r)
        for (size_t c = 0; c < output_gids.size(); ++c)
            m.set(r, c, net.coeff(input_gids[r], output_gids[c]));
    return m;
}

std::vector<Edge> cut_edges(const LayeredNetwork& net, const Cut& cut) {
    std::vector<char> in_omega(net.num_nodes(), 0);
    for (int n : cut.omega) {
        if (n < 0 || n >= net.num_nodes())
            throw std::invalid_argument("cut: unknown node index");
        in_omega[n] = 1;
    }
    if (!in_omega[net.source()] || in_omega[net.destination()])
        throw std::invalid_argument("cut: omega must contain the source and not the destination");
    std::vector<Edge> out;
    for (const Edge& e : net.edges())
        if (in_omega[e.from_node] && !in_omega[e.to_node])
            out.push_back(e);
    return out;
}

size_t cut_value(const LayeredNetwork& net, const Cut& cut) {
    std::vector<Edge> crossing = cut_edges(net, cut);
    std::vector<int> xs, ys;
    for (const Edge& e : crossing) {
        xs.push_back(net.input_gid(e.from_node, e.input_index));
        ys.push_back(net.output_gid(e.to_node, e.output_index));
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    return rank(adjacency(net, xs, ys));
}

NetworkStats network_stats(const LayeredNetwork& net) {
    NetworkStats s;
    s.layers = net.num_layers();
    for (int l = 0; l < net.num_layers(); ++l) {
        auto [b, e] = net.layer_node_range(l);
        s.max_nodes_per_layer = std::max(s.max_nodes_per_layer, e - b);
    }
    s.num_inputs = net.num_inputs();
    s.num_outputs = net.num_outputs();
    s.num_edges = net.edges().size();
    for (int g = 0; g < net.num_inputs(); ++g)
        s.max_edges_per_input =
            std::max(s.max_edges_per_input, static_cast<int>(net.edges_from_input(g).size()));
    for (int n = 0; n < net.num_nodes(); ++n)
        s.max_inputs_per_node = std::max(s.max_inputs_per_node, net.node(n).inputs);
    return s;
}

}  // namespace adtcap
