#pragma once

#include <map>
#include <string>
#include <vector>

#include "adtcap/network.hpp"

namespace adtcap {

struct SolverConfig {
    /// Replace the improved per-node backward rewiring with the original
    /// trigger: only after a failed forward move, freeing only the target
    /// node's own matched path edge. May undercount capacity; exists to
    /// reproduce known failure cases of the original algorithm.
    bool legacy_backward = false;
    /// Never revisit an input already reached by a same-layer rewiring.
    /// Same caveat as above.
    bool legacy_same_layer = false;
    /// Verify matching/rank invariants after every committed mutation and
    /// snapshot-compare state around every rolled-back branch. Throws
    /// std::logic_error on any violation. Test harness use.
    bool self_check = false;
};

struct IterationCounters {
    uint64_t node_visits = 0;
    uint64_t type1_visits = 0;
    uint64_t type2_visits = 0;
    uint64_t same_layer_rewirings = 0;
    uint64_t backward_rewirings = 0;
    uint64_t eliminations = 0;  // O(k^3) dependency solves and removable-input searches
    uint64_t stale_dependency_recomputes = 0;
    uint64_t forward_checks = 0;
    uint64_t forward_moves = 0;

    IterationCounters& operator+=(const IterationCounters& o);
};

/// The linearly independent S-D paths found by the solver; each path is an
/// edge sequence of length L-1 crossing each layer cut once.
struct PathSet {
    std::vector<std::vector<Edge>> paths;
};

struct SolveResult {
    size_t capacity = 0;
    PathSet paths;
    std::vector<IterationCounters> per_iteration;  // includes the final failed iteration
    IterationCounters totals;

    /// Flat counter view for result files and the bench harness.
    std::map<std::string, uint64_t> counter_map() const;
};

/// Unicast capacity by path augmentation with same-layer and backward
/// rewiring. With default flags the result equals the minimum cut value over
/// all S-D cuts. Throws std::invalid_argument when the network fails
/// validation.
SolveResult solve_capacity(const LayeredNetwork& net, const SolverConfig& cfg = {});

/// Used edges per layer cut (U^l) derived from a path set.
std::vector<std::vector<Edge>> used_edges_per_layer(const LayeredNetwork& net,
                                                    const PathSet& paths);

}  // namespace adtcap
