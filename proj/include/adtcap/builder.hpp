#pragma once

#include <map>
#include <string>
#include <vector>

#include "adtcap/network.hpp"

namespace adtcap {

/// Link-level description of a deterministic relay network: each link
/// carries the number of signal levels above noise.
struct GainSpec {
    struct Link {
        std::string from;
        std::string to;
        int levels = 0;
    };
    std::vector<std::vector<std::string>> layers;
    std::vector<Link> links;
};

/// n = ceil(0.5 * log2(snr)), floored at 0. Throws std::domain_error for
/// snr <= 0.
int levels_from_snr(double snr);

/// Builds the layered network for a GainSpec: a link with n levels wires the
/// top n inputs of the transmitter one-to-one (coefficient 1) onto the top n
/// outputs of the receiver, port 0 being the most significant level.
/// level_count gives each node's per-side port count; the source gets no
/// outputs and the destination no inputs. Throws std::invalid_argument on
/// unknown nodes, non-adjacent links, or level overflow.
LayeredNetwork build_from_gains(const GainSpec& spec,
                                const std::map<std::string, int>& level_count,
                                FieldSpec field = FieldSpec(2));

struct GenParams {
    int layers = 3;               // L >= 2
    int max_nodes_per_layer = 3;  // intermediate layers pick 1..max nodes
    int max_levels_per_node = 3;  // every node picks 1..max ports per side
    double edge_density = 0.5;    // probability of each candidate edge
    uint32_t field_p = 2;
    uint64_t seed = 0;
};

/// Seed-deterministic random layered network; the result always validates.
/// Every (input, output) pair between adjacent layers becomes an edge with
/// probability edge_density, with a uniform nonzero coefficient.
LayeredNetwork random_network(const GenParams& params);

}  // namespace adtcap
