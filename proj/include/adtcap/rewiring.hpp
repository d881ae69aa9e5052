#pragma once

#include <functional>
#include <span>
#include <vector>

#include "adtcap/field.hpp"

namespace adtcap {

/// Edge within one layer cut, by global port ids.
struct CutEdge {
    int input = -1;
    int output = -1;

    bool operator==(const CutEdge&) const = default;
};

/// Alternating path as an edge sequence; edges alternate between unused and
/// used relative to the layer matching.
using AltPath = std::vector<CutEdge>;

/// Adjacent used outputs of an input, ascending output id. The only view of
/// the graph the path searches need.
using UsedNeighborFn = std::function<std::vector<int>(int input)>;

/// Input-to-input alternating paths, one BFS for all targets: each returned
/// path starts with an unused edge out of source_input and ends with the
/// target's matched edge (even edge count). Aligned with targets. Throws
/// std::logic_error if some target is unreachable, which indicates the
/// dependency set disagrees with the matching.
std::vector<AltPath> find_alternating_paths(int source_input, std::span<const int> targets,
                                            const UsedNeighborFn& used_neighbors,
                                            const std::vector<int>& match_of_input,
                                            const std::vector<int>& match_of_output);

/// Output-to-input alternating path starting and ending with used edges (odd
/// edge count); the first edge is start_output's matched edge. Throws
/// std::logic_error when no path exists.
AltPath find_backward_path(int start_output, int target_input,
                           const UsedNeighborFn& used_neighbors,
                           const std::vector<int>& match_of_output);

/// Dependency of one input's row on used inputs' rows, keyed by global
/// input id (ascending), all coefficients nonzero.
struct InputDependency {
    std::vector<int> inputs;
    std::vector<uint32_t> coeffs;

    bool operator==(const InputDependency&) const = default;
};

/// O(|dep|) dependency update when `swapped` leaves the used set and `source`
/// replaces it: the new dependency of `swapped` is dep - swapped + source with
/// coefficients -a_j / a_s (and 1 / a_s for the source term), a_s being
/// swapped's old coefficient. Over F_2 the signs vanish.
InputDependency dependency_after_swap(const InputDependency& dep_of_source, int source,
                                      int swapped, FieldSpec field);

}  // namespace adtcap
