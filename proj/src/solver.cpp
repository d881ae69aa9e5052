#include "adtcap/solver.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <stdexcept>

#include "adtcap/matrix.hpp"
#include "adtcap/rewiring.hpp"

namespace adtcap {

IterationCounters& IterationCounters::operator+=(const IterationCounters& o) {
    node_visits += o.node_visits;
    type1_visits += o.type1_visits;
    type2_visits += o.type2_visits;
    same_layer_rewirings += o.same_layer_rewirings;
    backward_rewirings += o.backward_rewirings;
    eliminations += o.eliminations;
    stale_dependency_recomputes += o.stale_dependency_recomputes;
    forward_checks += o.forward_checks;
    forward_moves += o.forward_moves;
    return *this;
}

std::map<std::string, uint64_t> SolveResult::counter_map() const {
    return {
        {"backward_rewirings", totals.backward_rewirings},
        {"eliminations", totals.eliminations},
        {"forward_checks", totals.forward_checks},
        {"forward_moves", totals.forward_moves},
        {"iterations", per_iteration.size()},
        {"node_visits", totals.node_visits},
        {"same_layer_rewirings", totals.same_layer_rewirings},
        {"stale_dependency_recomputes", totals.stale_dependency_recomputes},
        {"type1_visits", totals.type1_visits},
        {"type2_visits", totals.type2_visits},
    };
}

namespace {

constexpr uint8_t kType1 = 1;
constexpr uint8_t kType2 = 2;

enum class Phase { type2_inputs, type1_inputs, backward, done };
enum class Pending { none, forward, same_layer, backward, phi };

struct CachedDependency {
    InputDependency dep;
    uint64_t version = 0;
};

struct Snapshot {
    size_t journal_mark;
    int cut;
    uint64_t version;
    std::vector<int> mi;  // match_of_input over the cut's input range
    std::vector<int> mo;  // match_of_output over the cut's output range
};

struct Frame {
    int node = -1;
    Phase phase = Phase::type2_inputs;

    int input_scan = 0;       // next input port offset to consider
    int current_input = -1;   // gid of the input being explored
    size_t edge_idx = 0;      // next outgoing edge of current_input
    InputDependency lam;      // dependency of current_input
    bool alt_ready = false;
    std::vector<AltPath> alt_paths;
    size_t target_idx = 0;

    int output_scan = 0;  // next output port offset (backward phase)

    Pending pending = Pending::none;
    size_t undo_mark = 0;

    // failed-forward-move bookkeeping for the legacy phi behavior
    int fwd_output = -1;
    int fwd_child = -1;
    int phi_scan = 0;
    size_t phi_undo = 0;
};

class Engine {
public:
    Engine(const LayeredNetwork& net, const SolverConfig& cfg)
        : net_(net),
          cfg_(cfg),
          match_of_input_(net.num_inputs(), -1),
          match_of_output_(net.num_outputs(), -1),
          node_mark_(net.num_nodes(), 0),
          input_mark_(net.num_inputs(), 0),
          output_mark_(net.num_outputs(), 0),
          input_type_(net.num_inputs(), kType1),
          lambda_cache_(net.num_inputs()),
          layer_version_(std::max(0, net.num_layers() - 1), 0),
          start_used_output_(net.num_outputs(), 0) {}

    bool run_iteration(IterationCounters& counters);
    PathSet extract_paths() const;

private:
    const LayeredNetwork& net_;
    SolverConfig cfg_;

    std::vector<int> match_of_input_;
    std::vector<int> match_of_output_;
    std::vector<uint8_t> node_mark_, input_mark_, output_mark_;
    std::vector<uint8_t> input_type_;
    std::vector<std::optional<CachedDependency>> lambda_cache_;
    std::vector<uint64_t> layer_version_;
    std::vector<uint8_t> start_used_output_;
    uint64_t version_counter_ = 0;

    struct JournalEntry {
        int cut;
        int input;
        int output;
        bool added;
        uint64_t prev_version;
    };
    std::vector<JournalEntry> journal_;
    std::vector<Snapshot> snapshots_;
    std::vector<Frame> frames_;
    IterationCounters* counters_ = nullptr;
    bool success_ = false;

    int cut_of_input(int gid) const { return net_.layer_of(net_.input_node(gid)); }

    void bump_version(int cut) { layer_version_[cut] = ++version_counter_; }

    void add_used(int x, int y) {
        assert(match_of_input_[x] == -1 && match_of_output_[y] == -1);
        int cut = cut_of_input(x);
        journal_.push_back({cut, x, y, true, layer_version_[cut]});
        match_of_input_[x] = y;
        match_of_output_[y] = x;
        bump_version(cut);
    }

    void remove_used(int x, int y) {
        assert(match_of_input_[x] == y && match_of_output_[y] == x);
        int cut = cut_of_input(x);
        journal_.push_back({cut, x, y, false, layer_version_[cut]});
        match_of_input_[x] = -1;
        match_of_output_[y] = -1;
        bump_version(cut);
    }

    void undo_to(size_t mark) {
        while (journal_.size() > mark) {
            const JournalEntry& e = journal_.back();
            if (e.added) {
                match_of_input_[e.input] = -1;
                match_of_output_[e.output] = -1;
            } else {
                match_of_input_[e.input] = e.output;
                match_of_output_[e.output] = e.input;
            }
            layer_version_[e.cut] = e.prev_version;
            journal_.pop_back();
        }
        if (cfg_.self_check)
            check_rollback(mark);
    }

    std::vector<int> used_inputs(int cut) const {
        auto [b, e] = net_.cut_input_range(cut);
        std::vector<int> out;
        for (int g = b; g < e; ++g)
            if (match_of_input_[g] != -1)
                out.push_back(g);
        return out;
    }

    std::vector<int> used_outputs(int cut) const {
        auto [b, e] = net_.cut_output_range(cut);
        std::vector<int> out;
        for (int g = b; g < e; ++g)
            if (match_of_output_[g] != -1)
                out.push_back(g);
        return out;
    }

    UsedNeighborFn used_neighbors() {
        return [this](int input) {
            std::vector<int> out;
            for (const auto& pe : net_.edges_from_input(input))
                if (match_of_output_[pe.peer_gid] != -1)
                    out.push_back(pe.peer_gid);
            return out;
        };
    }

    InputDependency compute_dependency(int x) {
        ++counters_->eliminations;
        int cut = cut_of_input(x);
        std::vector<int> ux = used_inputs(cut);
        std::vector<int> uy = used_outputs(cut);
        FMatrix basis(ux.size(), uy.size(), net_.field());
        for (size_t r = 0; r < ux.size(); ++r)
            for (size_t c = 0; c < uy.size(); ++c)
                basis.set(r, c, net_.coeff(ux[r], uy[c]));
        std::vector<uint32_t> target(uy.size());
        for (size_t c = 0; c < uy.size(); ++c)
            target[c] = net_.coeff(x, uy[c]);
        auto sol = solve_dependency(basis, target);
        if (!sol)
            throw std::logic_error("solver: used basis lost full rank");
        InputDependency dep;
        for (size_t i = 0; i < sol->lambda.size(); ++i) {
            dep.inputs.push_back(ux[sol->lambda[i]]);
            dep.coeffs.push_back(sol->coeffs[i]);
        }
        return dep;
    }

    InputDependency dependency_for(int x, bool& was_stale) {
        int cut = cut_of_input(x);
        const auto& cached = lambda_cache_[x];
        if (cached && cached->version == layer_version_[cut]) {
            was_stale = false;
            return cached->dep;
        }
        was_stale = true;
        InputDependency dep = compute_dependency(x);
        lambda_cache_[x] = {dep, layer_version_[cut]};
        return dep;
    }

    bool forward_rank_grows(const InputDependency& lam, int y, uint32_t t_xy) const {
        const FieldSpec& f = net_.field();
        uint32_t acc = 0;
        for (size_t i = 0; i < lam.inputs.size(); ++i)
            acc = f.add(acc, f.mul(lam.coeffs[i], net_.coeff(lam.inputs[i], y)));
        return t_xy != acc;
    }

    void apply_alternating(const AltPath& path) {
        std::vector<CutEdge> to_remove, to_add;
        for (const CutEdge& e : path) {
            if (match_of_input_[e.input] == e.output)
                to_remove.push_back(e);
            else
                to_add.push_back(e);
        }
        for (const CutEdge& e : to_remove)
            remove_used(e.input, e.output);
        for (const CutEdge& e : to_add)
            add_used(e.input, e.output);
    }

    void push_frame(int node) {
        node_mark_[node] = 1;
        ++counters_->node_visits;
        Frame f;
        f.node = node;
        frames_.push_back(std::move(f));
    }

    void take_snapshot(int cut) {
        if (!cfg_.self_check)
            return;
        Snapshot s;
        s.journal_mark = journal_.size();
        s.cut = cut;
        s.version = layer_version_[cut];
        auto [ib, ie] = net_.cut_input_range(cut);
        s.mi.assign(match_of_input_.begin() + ib, match_of_input_.begin() + ie);
        auto [ob, oe] = net_.cut_output_range(cut);
        s.mo.assign(match_of_output_.begin() + ob, match_of_output_.begin() + oe);
        snapshots_.push_back(std::move(s));
    }

    void check_rollback(size_t mark) {
        if (snapshots_.empty() || snapshots_.back().journal_mark != mark)
            return;
        const Snapshot& s = snapshots_.back();
        auto [ib, ie] = net_.cut_input_range(s.cut);
        auto [ob, oe] = net_.cut_output_range(s.cut);
        bool ok = layer_version_[s.cut] == s.version &&
                  std::equal(s.mi.begin(), s.mi.end(), match_of_input_.begin() + ib) &&
                  std::equal(s.mo.begin(), s.mo.end(), match_of_output_.begin() + ob);
        if (!ok)
            throw std::logic_error("solver: rollback left the layer state changed");
        snapshots_.pop_back();
    }

    void check_cut_invariants(int cut) {
        if (!cfg_.self_check)
            return;
        std::vector<int> ux = used_inputs(cut);
        std::vector<int> uy = used_outputs(cut);
        if (ux.size() != uy.size())
            throw std::logic_error("solver: used sets are not a matching");
        for (int x : ux) {
            int y = match_of_input_[x];
            if (match_of_output_[y] != x || net_.coeff(x, y) == 0)
                throw std::logic_error("solver: matching references a non-edge");
        }
        if (rank(adjacency(net_, ux, uy)) != ux.size())
            throw std::logic_error("solver: used edges lost linear independence");
    }

    // Square full-rank basis of a cut holding k+1 used edges; used by the
    // backward rewiring to pick the removable input.
    int removable_input_for(int y_out, int cut) {
        ++counters_->eliminations;
        std::vector<int> ux = used_inputs(cut);
        std::vector<int> uy = used_outputs(cut);
        FMatrix m(ux.size(), uy.size(), net_.field());
        for (size_t r = 0; r < ux.size(); ++r)
            for (size_t c = 0; c < uy.size(); ++c)
                m.set(r, c, net_.coeff(ux[r], uy[c]));
        size_t y_col = std::lower_bound(uy.begin(), uy.end(), y_out) - uy.begin();
        return ux[find_removable_input(m, y_col)];
    }

    void step(Frame& f);
    void step_inputs(Frame& f, bool type2_phase);
    void step_backward(Frame& f);
    void child_failed(Frame& f);
    bool try_phi(Frame& f);
};

void Engine::step_inputs(Frame& f, bool type2_phase) {
    const uint8_t want_type = type2_phase ? kType2 : kType1;
    auto [ib, ie] = net_.node_input_range(f.node);

    while (true) {
        if (f.current_input == -1) {
            // pick the next eligible input, ascending port order
            int found = -1;
            for (int g = ib + f.input_scan; g < ie; ++g) {
                if (match_of_input_[g] == -1 && !input_mark_[g] && input_type_[g] == want_type) {
                    found = g;
                    break;
                }
                // scan position only moves past ineligible ports; an input
                // can become eligible later through rewiring, but that always
                // arrives via a fresh frame for this node
            }
            if (found == -1) {
                f.phase = type2_phase ? Phase::type1_inputs
                                      : (cfg_.legacy_backward ? Phase::done : Phase::backward);
                f.input_scan = 0;
                return;
            }
            f.input_scan = found - ib + 1;
            f.current_input = found;
            f.edge_idx = 0;
            f.alt_ready = false;
            input_mark_[found] = 1;
            if (type2_phase) {
                ++counters_->type2_visits;
                bool stale = false;
                f.lam = dependency_for(found, stale);
                if (stale)
                    ++counters_->stale_dependency_recomputes;
            } else {
                ++counters_->type1_visits;
                f.lam = compute_dependency(found);
                lambda_cache_[f.current_input] = {f.lam, layer_version_[cut_of_input(found)]};
            }
        }

        // forward moves over the current input's edges
        auto edges = net_.edges_from_input(f.current_input);
        while (f.edge_idx < edges.size()) {
            const auto& pe = edges[f.edge_idx];
            ++f.edge_idx;
            int y = pe.peer_gid;
            if (match_of_output_[y] != -1 || node_mark_[net_.output_node(y)])
                continue;
            ++counters_->forward_checks;
            if (!forward_rank_grows(f.lam, y, pe.coeff))
                continue;
            ++counters_->forward_moves;
            int cut = cut_of_input(f.current_input);
            f.undo_mark = journal_.size();
            take_snapshot(cut);
            add_used(f.current_input, y);
            check_cut_invariants(cut);
            int target_node = net_.output_node(y);
            if (target_node == net_.destination()) {
                success_ = true;
                return;
            }
            f.pending = Pending::forward;
            f.fwd_output = y;
            f.fwd_child = target_node;
            push_frame(target_node);
            return;
        }

        if (type2_phase) {
            f.current_input = -1;
            continue;
        }

        // same-layer rewirings from a type-1 input
        if (!f.alt_ready) {
            if (!f.lam.inputs.empty())
                f.alt_paths = find_alternating_paths(f.current_input, f.lam.inputs,
                                                     used_neighbors(), match_of_input_,
                                                     match_of_output_);
            f.target_idx = 0;
            f.alt_ready = true;
        }
        while (f.target_idx < f.lam.inputs.size()) {
            size_t t_idx = f.target_idx;
            ++f.target_idx;
            int target = f.lam.inputs[t_idx];
            if (cfg_.legacy_same_layer && input_mark_[target])
                continue;  // the original marking blocks every revisit
            ++counters_->same_layer_rewirings;
            int cut = cut_of_input(f.current_input);
            f.undo_mark = journal_.size();
            take_snapshot(cut);
            apply_alternating(f.alt_paths[t_idx]);
            check_cut_invariants(cut);
            input_mark_[target] = 0;
            input_type_[target] = kType2;
            lambda_cache_[target] = {
                dependency_after_swap(f.lam, f.current_input, target, net_.field()),
                layer_version_[cut]};
            f.pending = Pending::same_layer;
            push_frame(net_.input_node(target));
            return;
        }

        f.current_input = -1;
    }
}

void Engine::step_backward(Frame& f) {
    int layer = net_.layer_of(f.node);
    if (layer == 0) {  // the source has no outputs
        f.phase = Phase::done;
        return;
    }
    int cut = layer - 1;
    auto [ob, oe] = net_.node_output_range(f.node);
    for (int g = ob + f.output_scan; g < oe; ++g) {
        if (match_of_output_[g] == -1 || output_mark_[g] || !start_used_output_[g])
            continue;
        f.output_scan = g - ob + 1;
        output_mark_[g] = 1;
        ++counters_->backward_rewirings;
        int x = removable_input_for(g, cut);
        AltPath path = find_backward_path(g, x, used_neighbors(), match_of_output_);
        f.undo_mark = journal_.size();
        take_snapshot(cut);
        apply_alternating(path);
        check_cut_invariants(cut);
        input_mark_[x] = 0;
        input_type_[x] = kType1;
        f.pending = Pending::backward;
        push_frame(net_.input_node(x));
        return;
    }
    f.phase = Phase::done;
}

void Engine::step(Frame& f) {
    switch (f.phase) {
        case Phase::type2_inputs:
            step_inputs(f, true);
            break;
        case Phase::type1_inputs:
            step_inputs(f, false);
            break;
        case Phase::backward:
            step_backward(f);
            break;
        case Phase::done:
            break;
    }
}

// Legacy phi behavior: after a failed forward move into fwd_child, free one
// of that node's own used path edges (keeping the layer independent) and
// explore the freed input's node.
bool Engine::try_phi(Frame& f) {
    int cut = cut_of_input(f.current_input);
    auto [ob, oe] = net_.node_output_range(f.fwd_child);
    for (int g = ob + f.phi_scan; g < oe; ++g) {
        if (g == f.fwd_output || match_of_output_[g] == -1 || output_mark_[g])
            continue;
        int x = match_of_output_[g];
        // removal must keep the remaining used edges independent
        std::vector<int> ux = used_inputs(cut), uy = used_outputs(cut);
        std::erase(ux, x);
        std::erase(uy, g);
        ++counters_->eliminations;
        if (rank(adjacency(net_, ux, uy)) != ux.size())
            continue;
        f.phi_scan = g - ob + 1;
        output_mark_[g] = 1;
        f.phi_undo = journal_.size();
        take_snapshot(cut);
        remove_used(x, g);
        check_cut_invariants(cut);
        input_mark_[x] = 0;
        input_type_[x] = kType1;
        f.pending = Pending::phi;
        push_frame(net_.input_node(x));
        return true;
    }
    return false;
}

void Engine::child_failed(Frame& f) {
    switch (f.pending) {
        case Pending::forward:
            if (cfg_.legacy_backward) {
                f.phi_scan = 0;
                if (try_phi(f))
                    return;
            }
            undo_to(f.undo_mark);
            f.pending = Pending::none;
            break;
        case Pending::phi:
            undo_to(f.phi_undo);
            if (try_phi(f))
                return;
            undo_to(f.undo_mark);  // roll the forward move back as well
            f.pending = Pending::none;
            break;
        case Pending::same_layer:
        case Pending::backward:
            undo_to(f.undo_mark);
            f.pending = Pending::none;
            break;
        case Pending::none:
            throw std::logic_error("solver: child completed without a pending operation");
    }
}

bool Engine::run_iteration(IterationCounters& counters) {
    counters_ = &counters;
    std::fill(node_mark_.begin(), node_mark_.end(), 0);
    std::fill(input_mark_.begin(), input_mark_.end(), 0);
    std::fill(output_mark_.begin(), output_mark_.end(), 0);
    std::fill(input_type_.begin(), input_type_.end(), kType1);
    for (auto& c : lambda_cache_)
        c.reset();
    for (int g = 0; g < net_.num_outputs(); ++g)
        start_used_output_[g] = match_of_output_[g] != -1;
    journal_.clear();
    snapshots_.clear();
    frames_.clear();
    success_ = false;

    std::vector<int> pre_mi, pre_mo;
    if (cfg_.self_check) {
        pre_mi = match_of_input_;
        pre_mo = match_of_output_;
    }

    push_frame(net_.source());
    while (!frames_.empty() && !success_) {
        size_t top = frames_.size() - 1;
        step(frames_[top]);
        if (success_)
            break;
        // step() either pushed a child (leaving this frame mid-phase) or ran
        // to a stop; re-index, the vector may have reallocated
        if (frames_[top].phase == Phase::done) {
            frames_.pop_back();
            if (frames_.empty())
                break;
            child_failed(frames_.back());
        }
    }

    if (cfg_.self_check && !success_ &&
        (match_of_input_ != pre_mi || match_of_output_ != pre_mo))
        throw std::logic_error("solver: failed iteration did not restore the initial state");
    frames_.clear();
    snapshots_.clear();
    return success_;
}

PathSet Engine::extract_paths() const {
    PathSet out;
    auto [sb, se] = net_.node_input_range(net_.source());
    for (int g = sb; g < se; ++g) {
        if (match_of_input_[g] == -1)
            continue;
        std::vector<Edge> path;
        int in_gid = g;
        while (true) {
            int y = match_of_input_[in_gid];
            int from = net_.input_node(in_gid);
            int to = net_.output_node(y);
            path.push_back({from, net_.input_port(in_gid), to, net_.output_port(y),
                            net_.coeff(in_gid, y)});
            if (to == net_.destination())
                break;
            // continue through the r-th used input of the node we entered
            // through its r-th used output; any node-consistent pairing
            // yields linearly independent paths, this one is deterministic
            auto [ob, oe] = net_.node_output_range(to);
            int r = 0;
            for (int og = ob; og < y; ++og)
                if (match_of_output_[og] != -1)
                    ++r;
            auto [nib, nie] = net_.node_input_range(to);
            int next = -1;
            for (int ig = nib; ig < nie; ++ig) {
                if (match_of_input_[ig] == -1)
                    continue;
                if (r == 0) {
                    next = ig;
                    break;
                }
                --r;
            }
            if (next == -1)
                throw std::logic_error("solver: flow conservation violated during extraction");
            in_gid = next;
        }
        out.paths.push_back(std::move(path));
    }
    return out;
}

}  // namespace

SolveResult solve_capacity(const LayeredNetwork& net, const SolverConfig& cfg) {
    auto errs = net.validate();
    if (!errs.empty())
        throw std::invalid_argument("solve_capacity: invalid network: " + errs.front().message);

    Engine engine(net, cfg);
    SolveResult result;
    while (true) {
        IterationCounters it;
        bool ok = engine.run_iteration(it);
        result.per_iteration.push_back(it);
        result.totals += it;
        if (!ok)
            break;
        ++result.capacity;
    }
    result.paths = engine.extract_paths();
    if (result.paths.paths.size() != result.capacity)
        throw std::logic_error("solver: extracted path count disagrees with capacity");
    return result;
}

std::vector<std::vector<Edge>> used_edges_per_layer(const LayeredNetwork& net,
                                                    const PathSet& paths) {
    std::vector<std::vector<Edge>> by_cut(std::max(0, net.num_layers() - 1));
    for (const auto& path : paths.paths)
        for (const Edge& e : path) {
            int cut = net.layer_of(e.from_node);
            if (cut >= 0 && cut < static_cast<int>(by_cut.size()))
                by_cut[cut].push_back(e);
        }
    return by_cut;
}

}  // namespace adtcap
