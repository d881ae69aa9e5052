#include "adtcap/rewiring.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace adtcap {

namespace {

// Backtracks one input-to-input path from its terminal input. prev_input[y]
// is the input whose unused edge discovered output y; reached_via[v] the
// output whose matched edge discovered input v.
AltPath assemble_forward_path(int source, int terminal,
                              const std::unordered_map<int, int>& prev_input,
                              const std::unordered_map<int, int>& reached_via) {
    AltPath rev;
    int v = terminal;
    while (true) {
        int y = reached_via.at(v);
        rev.push_back({v, y});  // used edge
        int u = prev_input.at(y);
        rev.push_back({u, y});  // unused edge
        if (u == source)
            break;
        v = u;
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
}

}  // namespace

std::vector<AltPath> find_alternating_paths(int source_input, std::span<const int> targets,
                                            const UsedNeighborFn& used_neighbors,
                                            const std::vector<int>& match_of_input,
                                            const std::vector<int>& match_of_output) {
    std::vector<AltPath> out(targets.size());
    if (targets.empty())
        return out;

    std::unordered_map<int, int> prev_input;   // output -> discovering input
    std::unordered_map<int, int> reached_via;  // input -> discovering output
    std::deque<int> queue{source_input};
    size_t remaining = targets.size();

    while (!queue.empty() && remaining > 0) {
        int u = queue.front();
        queue.pop_front();
        int matched_y = match_of_input[u];  // -1 for the source
        for (int y : used_neighbors(u)) {
            if (y == matched_y || prev_input.count(y))
                continue;  // matched edge is not an unused step; visit once
            prev_input.emplace(y, u);
            int v = match_of_output[y];
            if (v < 0 || reached_via.count(v))
                continue;
            reached_via.emplace(v, y);
            queue.push_back(v);
            auto it = std::find(targets.begin(), targets.end(), v);
            if (it != targets.end()) {
                out[it - targets.begin()] =
                    assemble_forward_path(source_input, v, prev_input, reached_via);
                --remaining;
            }
        }
    }
    if (remaining > 0)
        throw std::logic_error(
            "find_alternating_paths: dependency target unreachable from source");
    return out;
}

AltPath find_backward_path(int start_output, int target_input,
                           const UsedNeighborFn& used_neighbors,
                           const std::vector<int>& match_of_output) {
    // Walk output-to-output: take the matched edge of the current output,
    // then any unused edge of that input into another used output.
    std::unordered_map<int, int> prev_output;  // output -> predecessor output
    std::deque<int> queue{start_output};
    prev_output.emplace(start_output, -1);
    int terminal = -1;

    while (!queue.empty() && terminal < 0) {
        int y = queue.front();
        queue.pop_front();
        int x = match_of_output[y];
        if (x < 0)
            throw std::logic_error("find_backward_path: unmatched output on path");
        if (x == target_input) {
            terminal = y;
            break;
        }
        for (int y2 : used_neighbors(x)) {
            if (y2 == y || prev_output.count(y2))
                continue;
            prev_output.emplace(y2, y);
            queue.push_back(y2);
        }
    }
    if (terminal < 0)
        throw std::logic_error("find_backward_path: target input unreachable");

    AltPath rev;
    int y = terminal;
    while (true) {
        int prev = prev_output.at(y);
        rev.push_back({match_of_output[y], y});  // used edge
        if (prev < 0)
            break;
        rev.push_back({match_of_output[prev], y});  // unused edge from prev's input
        y = prev;
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
}

InputDependency dependency_after_swap(const InputDependency& dep_of_source, int source,
                                      int swapped, FieldSpec field) {
    auto pos = std::find(dep_of_source.inputs.begin(), dep_of_source.inputs.end(), swapped);
    if (pos == dep_of_source.inputs.end())
        throw std::invalid_argument("dependency_after_swap: swapped input not in dependency");
    uint32_t a_s = dep_of_source.coeffs[pos - dep_of_source.inputs.begin()];
    uint32_t inv_s = field.inv(a_s);

    InputDependency out;
    out.inputs.reserve(dep_of_source.inputs.size());
    out.coeffs.reserve(dep_of_source.coeffs.size());
    bool source_emitted = false;
    auto emit_source = [&] {
        out.inputs.push_back(source);
        out.coeffs.push_back(inv_s);
        source_emitted = true;
    };
    for (size_t i = 0; i < dep_of_source.inputs.size(); ++i) {
        int in = dep_of_source.inputs[i];
        if (in == swapped)
            continue;
        if (!source_emitted && source < in)
            emit_source();
        out.inputs.push_back(in);
        out.coeffs.push_back(field.neg(field.mul(dep_of_source.coeffs[i], inv_s)));
    }
    if (!source_emitted)
        emit_source();
    return out;
}

}  // namespace adtcap
