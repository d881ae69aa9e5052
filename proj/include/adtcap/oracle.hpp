#pragma once

#include <cstdint>
#include <string>

#include "adtcap/network.hpp"
#include "adtcap/solver.hpp"

namespace adtcap {

struct OracleResult {
    size_t capacity = 0;
    Cut argmin_cut;
    uint64_t cuts_examined = 0;
};

struct OracleOptions {
    /// Hard cap on intermediate node count; enumeration is 2^n.
    int max_intermediate_nodes = 22;
    /// Partition the bitmask space across OpenMP workers. The result is
    /// identical to the serial kernel for any thread count.
    bool parallel = true;
};

/// Ground truth by exhaustion: minimum cut value over all S-D cuts, including
/// cross-layer cuts, with the first minimizer in bitmask enumeration order.
/// Throws std::length_error when the network exceeds the node cap.
OracleResult brute_force_capacity(const LayeredNetwork& net, const OracleOptions& opts = {});

/// Plain serial enumeration, kept as the reference implementation for the
/// parallel kernel.
OracleResult brute_force_capacity_serial(const LayeredNetwork& net,
                                         int max_intermediate_nodes = 22);

struct VerifyReport {
    bool ok = true;
    std::string message;
};

/// Independent check of a claimed path set: S-D connectivity with one edge
/// per layer cut, per-layer matchings, and per-layer full rank. Reports the
/// first violated condition with its location.
VerifyReport verify_paths(const LayeredNetwork& net, const PathSet& paths);

/// Second, slower oracle: exhaustive search for the largest set of linearly
/// independent S-D paths by depth-first enumeration with rank checks. For
/// tiny fixtures only; throws std::length_error beyond max_nodes.
size_t max_li_paths_exhaustive(const LayeredNetwork& net, int max_nodes = 8);

}  // namespace adtcap
