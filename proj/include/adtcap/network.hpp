#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "adtcap/matrix.hpp"

namespace adtcap {

/// A node declaration: transmit signal levels (inputs) and receive signal
/// levels (outputs). Edges run from an input of a layer-l node to an output
/// of a layer-(l+1) node.
struct NodeSpec {
    std::string id;
    int inputs = 0;
    int outputs = 0;

    bool operator==(const NodeSpec&) const = default;
};

struct Edge {
    int from_node = -1;
    int input_index = -1;
    int to_node = -1;
    int output_index = -1;
    uint32_t coeff = 1;

    bool operator==(const Edge&) const = default;
};

struct ValidationError {
    std::string message;
};

/// Node bipartition; omega holds node indices, source side.
struct Cut {
    std::vector<int> omega;
};

/// Layered deterministic relay network. Immutable once built; validate()
/// reports every violated structural invariant instead of throwing.
class LayeredNetwork {
public:
    LayeredNetwork() = default;
    LayeredNetwork(FieldSpec field, std::vector<std::vector<NodeSpec>> layers,
                   std::vector<Edge> edges);

    const FieldSpec& field() const { return field_; }
    int num_layers() const { return static_cast<int>(layer_sizes_.size()); }
    int num_nodes() const { return static_cast<int>(nodes_.size()); }
    const NodeSpec& node(int n) const { return nodes_[n]; }
    int layer_of(int n) const { return layer_of_[n]; }
    /// Node indices are dense in declaration order, layer by layer.
    std::pair<int, int> layer_node_range(int layer) const {
        return {layer_begin_[layer], layer_begin_[layer] + layer_sizes_[layer]};
    }
    const std::vector<Edge>& edges() const { return edges_; }

    int source() const { return 0; }
    int destination() const { return num_nodes() - 1; }

    // Global dense port ids.
    int num_inputs() const { return static_cast<int>(input_node_.size()); }
    int num_outputs() const { return static_cast<int>(output_node_.size()); }
    int input_gid(int node, int port) const { return input_begin_[node] + port; }
    int output_gid(int node, int port) const { return output_begin_[node] + port; }
    int input_node(int gid) const { return input_node_[gid]; }
    int input_port(int gid) const { return gid - input_begin_[input_node_[gid]]; }
    int output_node(int gid) const { return output_node_[gid]; }
    int output_port(int gid) const { return gid - output_begin_[output_node_[gid]]; }
    std::pair<int, int> node_input_range(int node) const {
        return {input_begin_[node], input_begin_[node] + nodes_[node].inputs};
    }
    std::pair<int, int> node_output_range(int node) const {
        return {output_begin_[node], output_begin_[node] + nodes_[node].outputs};
    }

    /// Gid range of all inputs in layer cut l (inputs of layer-l nodes),
    /// 0 <= l <= num_layers()-2.
    std::pair<int, int> cut_input_range(int l) const;
    /// Gid range of all outputs in layer cut l (outputs of layer-(l+1) nodes).
    std::pair<int, int> cut_output_range(int l) const;

    struct PortEdge {
        int peer_gid;  // output gid when outgoing, input gid when incoming
        uint32_t coeff;
    };
    /// Outgoing edges of an input, ascending peer gid.
    std::span<const PortEdge> edges_from_input(int in_gid) const {
        return {out_edges_.data() + out_edge_begin_[in_gid],
                out_edges_.data() + out_edge_begin_[in_gid + 1]};
    }
    /// Incoming edges of an output, ascending peer gid.
    std::span<const PortEdge> edges_into_output(int out_gid) const {
        return {in_edges_.data() + in_edge_begin_[out_gid],
                in_edges_.data() + in_edge_begin_[out_gid + 1]};
    }
    /// Coefficient of edge (input, output), 0 when absent.
    uint32_t coeff(int in_gid, int out_gid) const {
        auto it = coeff_.find((static_cast<uint64_t>(in_gid) << 32) |
                              static_cast<uint32_t>(out_gid));
        return it == coeff_.end() ? 0 : it->second;
    }

    int node_index(const std::string& id) const;  // -1 when unknown

    /// Every violated structural invariant, with locations; empty means ok.
    std::vector<ValidationError> validate() const;

    bool operator==(const LayeredNetwork& o) const {
        return field_ == o.field_ && raw_layers_ == o.raw_layers_ && edges_ == o.edges_;
    }

    const std::vector<std::vector<NodeSpec>>& raw_layers() const { return raw_layers_; }

private:
    FieldSpec field_{2};
    std::vector<std::vector<NodeSpec>> raw_layers_;
    std::vector<NodeSpec> nodes_;
    std::vector<int> layer_of_;
    std::vector<int> layer_begin_;
    std::vector<int> layer_sizes_;
    std::vector<Edge> edges_;

    std::vector<int> input_begin_, output_begin_;
    std::vector<int> input_node_, output_node_;
    std::vector<int> out_edge_begin_, in_edge_begin_;
    std::vector<PortEdge> out_edges_, in_edges_;
    std::unordered_map<uint64_t, uint32_t> coeff_;
    std::unordered_map<std::string, int> id_index_;

    bool edge_ports_in_range(const Edge& e) const;
};

/// Adjacency matrix T over explicit port lists; row/column order follows the
/// list order. Throws on unknown ports.
FMatrix adjacency(const LayeredNetwork& net, std::span<const int> input_gids,
                  std::span<const int> output_gids);

/// Edges leaving omega: from-node inside, to-node outside.
std::vector<Edge> cut_edges(const LayeredNetwork& net, const Cut& cut);

/// Rank over F_p of the adjacency matrix of the crossing edges.
size_t cut_value(const LayeredNetwork& net, const Cut& cut);

struct NetworkStats {
    int layers = 0;
    int max_nodes_per_layer = 0;
    int num_inputs = 0;
    int num_outputs = 0;
    size_t num_edges = 0;
    int max_edges_per_input = 0;  // d in the outgoing-edges sense
    int max_inputs_per_node = 0;
};
NetworkStats network_stats(const LayeredNetwork& net);

}  // namespace adtcap
