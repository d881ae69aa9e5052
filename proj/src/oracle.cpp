#include "adtcap/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "adtcap/matrix.hpp"

namespace adtcap {

namespace {

struct FlatEdge {
    int from_node, to_node;
    int in_gid, out_gid;
};

std::vector<FlatEdge> flatten_edges(const LayeredNetwork& net) {
    std::vector<FlatEdge> out;
    out.reserve(net.edges().size());
    for (const Edge& e : net.edges())
        out.push_back({e.from_node, e.to_node, net.input_gid(e.from_node, e.input_index),
                       net.output_gid(e.to_node, e.output_index)});
    return out;
}

// Cut value for one bitmask over the intermediate nodes (bit i = node i+1).
size_t mask_cut_value(const LayeredNetwork& net, const std::vector<FlatEdge>& flat,
                      uint64_t mask) {
    int d = net.destination();
    auto inside = [&](int node) {
        if (node == 0)
            return true;
        if (node == d)
            return false;
        return (mask >> (node - 1) & 1) != 0;
    };
    std::vector<int> xs, ys;
    for (const FlatEdge& e : flat)
        if (inside(e.from_node) && !inside(e.to_node)) {
            xs.push_back(e.in_gid);
            ys.push_back(e.out_gid);
        }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    return rank(adjacency(net, xs, ys));
}

Cut mask_to_cut(uint64_t mask, int intermediates) {
    Cut cut;
    cut.omega.push_back(0);
    for (int i = 0; i < intermediates; ++i)
        if (mask >> i & 1)
            cut.omega.push_back(i + 1);
    return cut;
}

int checked_intermediates(const LayeredNetwork& net, int cap) {
    auto errs = net.validate();
    if (!errs.empty())
        throw std::invalid_argument("oracle: invalid network: " + errs.front().message);
    int m = net.num_nodes() - 2;
    if (m > cap)
        throw std::length_error("oracle: " + std::to_string(m) +
                                " intermediate nodes exceed the enumeration limit of " +
                                std::to_string(cap));
    return m;
}

}  // namespace

OracleResult brute_force_capacity_serial(const LayeredNetwork& net, int max_intermediate_nodes) {
    int m = checked_intermediates(net, max_intermediate_nodes);
    std::vector<FlatEdge> flat = flatten_edges(net);
    uint64_t total = 1ULL << m;

    uint64_t best_mask = 0;
    size_t best = mask_cut_value(net, flat, 0);
    for (uint64_t mask = 1; mask < total; ++mask) {
        size_t v = mask_cut_value(net, flat, mask);
        if (v < best) {
            best = v;
            best_mask = mask;
        }
    }
    return {best, mask_to_cut(best_mask, m), total};
}

OracleResult brute_force_capacity(const LayeredNetwork& net, const OracleOptions& opts) {
    int m = checked_intermediates(net, opts.max_intermediate_nodes);
    if (!opts.parallel)
        return brute_force_capacity_serial(net, opts.max_intermediate_nodes);

    std::vector<FlatEdge> flat = flatten_edges(net);
    int64_t total = 1LL << m;
    size_t best = SIZE_MAX;
    uint64_t best_mask = 0;

#pragma omp parallel
    {
        size_t local_best = SIZE_MAX;
        uint64_t local_mask = 0;
#pragma omp for schedule(static) nowait
        for (int64_t mask = 0; mask < total; ++mask) {
            size_t v = mask_cut_value(net, flat, static_cast<uint64_t>(mask));
            if (v < local_best ||
                (v == local_best && static_cast<uint64_t>(mask) < local_mask)) {
                local_best = v;
                local_mask = static_cast<uint64_t>(mask);
            }
        }
#pragma omp critical
        {
            if (local_best < best || (local_best == best && local_mask < best_mask)) {
                best = local_best;
                best_mask = local_mask;
            }
        }
    }
    return {best, mask_to_cut(best_mask, m), static_cast<uint64_t>(total)};
}

VerifyReport verify_paths(const LayeredNetwork& net, const PathSet& paths) {
    int cuts = net.num_layers() - 1;
    auto fail = [](std::string msg) { return VerifyReport{false, std::move(msg)}; };

    for (size_t p = 0; p < paths.paths.size(); ++p) {
        const auto& path = paths.paths[p];
        std::string where = "path " + std::to_string(p);
        if (static_cast<int>(path.size()) != cuts)
            return fail(where + ": length " + std::to_string(path.size()) + " != " +
                        std::to_string(cuts) + ", disconnected path");
        for (int i = 0; i < cuts; ++i) {
            const Edge& e = path[i];
            std::string at = where + ", layer cut " + std::to_string(i);
            if (e.from_node < 0 || e.from_node >= net.num_nodes() || e.to_node < 0 ||
                e.to_node >= net.num_nodes())
                return fail(at + ": unknown node");
            if (e.input_index < 0 || e.input_index >= net.node(e.from_node).inputs ||
                e.output_index < 0 || e.output_index >= net.node(e.to_node).outputs)
                return fail(at + ": port out of range");
            if (net.layer_of(e.from_node) != i || net.layer_of(e.to_node) != i + 1)
                return fail(at + ": edge does not cross this layer cut");
            if (net.coeff(net.input_gid(e.from_node, e.input_index),
                          net.output_gid(e.to_node, e.output_index)) == 0)
                return fail(at + ": no such edge in the network");
        }
        if (path.front().from_node != net.source())
            return fail(where + ": does not start at the source");
        if (path.back().to_node != net.destination())
            return fail(where + ": does not end at the destination");
        for (int i = 0; i + 1 < cuts; ++i)
            if (path[i].to_node != path[i + 1].from_node)
                return fail(where + ": edges " + std::to_string(i) + "," + std::to_string(i + 1) +
                            " do not share a node, disconnected path");
    }

    for (int l = 0; l < cuts; ++l) {
        std::vector<int> xs, ys;
        for (size_t p = 0; p < paths.paths.size(); ++p) {
            const Edge& e = paths.paths[p][l];
            xs.push_back(net.input_gid(e.from_node, e.input_index));
            ys.push_back(net.output_gid(e.to_node, e.output_index));
        }
        auto dup = [](std::vector<int> v) {
            std::sort(v.begin(), v.end());
            return std::adjacent_find(v.begin(), v.end()) != v.end();
        };
        if (dup(xs) || dup(ys))
            return fail("layer cut " + std::to_string(l) + ": used edges are not a matching");
        std::vector<int> sx = xs, sy = ys;
        std::sort(sx.begin(), sx.end());
        std::sort(sy.begin(), sy.end());
        if (rank(adjacency(net, sx, sy)) != paths.paths.size())
            return fail("layer cut " + std::to_string(l) + ": rank deficit, paths are not LI");
    }
    return {};
}

namespace {

void enumerate_paths(const LayeredNetwork& net, int node, std::vector<Edge>& prefix,
                     std::vector<std::vector<Edge>>& out, size_t cap) {
    if (node == net.destination()) {
        out.push_back(prefix);
        if (out.size() > cap)
            throw std::length_error("exhaustive oracle: too many S-D paths");
        return;
    }
    auto [ib, ie] = net.node_input_range(node);
    for (int g = ib; g < ie; ++g)
        for (const auto& pe : net.edges_from_input(g)) {
            int to = net.output_node(pe.peer_gid);
            prefix.push_back({node, net.input_port(g), to, net.output_port(pe.peer_gid),
                              pe.coeff});
            enumerate_paths(net, to, prefix, out, cap);
            prefix.pop_back();
        }
}

struct LiSearch {
    const LayeredNetwork& net;
    const std::vector<std::vector<Edge>>& all;
    std::vector<std::vector<int>> used_x, used_y;  // per cut, sorted insertion
    size_t best = 0;

    bool can_add(const std::vector<Edge>& path) {
        for (size_t l = 0; l < used_x.size(); ++l) {
            int x = net.input_gid(path[l].from_node, path[l].input_index);
            int y = net.output_gid(path[l].to_node, path[l].output_index);
            if (std::find(used_x[l].begin(), used_x[l].end(), x) != used_x[l].end() ||
                std::find(used_y[l].begin(), used_y[l].end(), y) != used_y[l].end())
                return false;
            std::vector<int> xs = used_x[l], ys = used_y[l];
            xs.push_back(x);
            ys.push_back(y);
            std::sort(xs.begin(), xs.end());
            std::sort(ys.begin(), ys.end());
            if (rank(adjacency(net, xs, ys)) != xs.size())
                return false;
        }
        return true;
    }

    void toggle(const std::vector<Edge>& path, bool add) {
        for (size_t l = 0; l < used_x.size(); ++l) {
            int x = net.input_gid(path[l].from_node, path[l].input_index);
            int y = net.output_gid(path[l].to_node, path[l].output_index);
            if (add) {
                used_x[l].push_back(x);
                used_y[l].push_back(y);
            } else {
                used_x[l].pop_back();
                used_y[l].pop_back();
            }
        }
    }

    void search(size_t from, size_t count) {
        best = std::max(best, count);
        if (count + (all.size() - from) <= best)
            return;
        for (size_t p = from; p < all.size(); ++p) {
            if (!can_add(all[p]))
                continue;
            toggle(all[p], true);
            search(p + 1, count + 1);
            toggle(all[p], false);
        }
    }
};

}  // namespace

size_t max_li_paths_exhaustive(const LayeredNetwork& net, int max_nodes) {
    auto errs = net.validate();
    if (!errs.empty())
        throw std::invalid_argument("oracle: invalid network: " + errs.front().message);
    if (net.num_nodes() > max_nodes)
        throw std::length_error("exhaustive oracle: network exceeds " +
                                std::to_string(max_nodes) + " nodes");
    std::vector<std::vector<Edge>> all;
    std::vector<Edge> prefix;
    enumerate_paths(net, net.source(), prefix, all, 200000);

    LiSearch s{net, all, {}, {}, 0};
    s.used_x.resize(net.num_layers() - 1);
    s.used_y.resize(net.num_layers() - 1);
    s.search(0, 0);
    return s.best;
}

}  // namespace adtcap
