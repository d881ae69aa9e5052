#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "adtcap/builder.hpp"
#include "adtcap/io.hpp"
#include "adtcap/oracle.hpp"
#include "adtcap/solver.hpp"

using namespace adtcap;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int fail_usage(const std::string& kind, const std::string& message) {
    std::cerr << error_json(kind, message);
    return kExitUsage;
}

/// Loads and validates a network file; on failure reports and returns
/// nullopt.
std::optional<LayeredNetwork> load_network(const std::string& path, int& exit_code) {
    auto text = read_file(path);
    if (!text) {
        exit_code = fail_usage("io", "cannot read '" + path + "'");
        return std::nullopt;
    }
    auto parsed = parse_network(*text);
    if (std::holds_alternative<ParseError>(parsed)) {
        exit_code = fail_usage("parse", path + ": " + std::get<ParseError>(parsed).message);
        return std::nullopt;
    }
    LayeredNetwork net = std::get<LayeredNetwork>(std::move(parsed));
    auto errs = net.validate();
    if (!errs.empty()) {
        std::string all;
        for (const auto& e : errs)
            all += (all.empty() ? "" : "; ") + e.message;
        exit_code = fail_usage("validate", path + ": " + all);
        return std::nullopt;
    }
    exit_code = kExitOk;
    return net;
}

int run_capacity(const std::string& path, bool with_paths, bool with_counters,
                 const SolverConfig& cfg) {
    int code = kExitOk;
    auto net = load_network(path, code);
    if (!net)
        return code;
    SolveResult r = solve_capacity(*net, cfg);
    ResultDoc doc;
    doc.capacity = r.capacity;
    if (with_paths)
        doc.paths = r.paths;
    if (with_counters)
        doc.counters = r.counter_map();
    std::cout << serialize_result(*net, doc);
    return kExitOk;
}

int run_oracle(const std::string& path, int limit, bool serial, bool double_check) {
    int code = kExitOk;
    auto net = load_network(path, code);
    if (!net)
        return code;
    OracleOptions opts;
    opts.max_intermediate_nodes = limit;
    opts.parallel = !serial;
    OracleResult r;
    try {
        r = brute_force_capacity(*net, opts);
    } catch (const std::length_error& e) {
        return fail_usage("size", e.what());
    }
    if (double_check) {
        try {
            size_t paths = max_li_paths_exhaustive(*net);
            if (paths != r.capacity) {
                std::cerr << error_json("oracle-mismatch",
                                        "exhaustive LI-path search found " +
                                            std::to_string(paths) + ", min-cut found " +
                                            std::to_string(r.capacity));
                return kExitViolation;
            }
        } catch (const std::length_error& e) {
            return fail_usage("size", e.what());
        }
    }
    ResultDoc doc;
    doc.capacity = r.capacity;
    std::vector<std::string> ids;
    for (int n : r.argmin_cut.omega)
        ids.push_back(net->node(n).id);
    doc.argmin_cut = std::move(ids);
    doc.cuts_examined = r.cuts_examined;
    std::cout << serialize_result(*net, doc);
    return kExitOk;
}

int run_verify(const std::string& net_path, const std::string& result_path) {
    int code = kExitOk;
    auto net = load_network(net_path, code);
    if (!net)
        return code;
    auto text = read_file(result_path);
    if (!text)
        return fail_usage("io", "cannot read '" + result_path + "'");
    auto parsed = parse_result(*net, *text);
    if (std::holds_alternative<ParseError>(parsed))
        return fail_usage("parse", result_path + ": " + std::get<ParseError>(parsed).message);
    const ResultDoc& doc = std::get<ResultDoc>(parsed);

    PathSet paths = doc.paths.value_or(PathSet{});
    VerifyReport rep = verify_paths(*net, paths);
    if (rep.ok && doc.capacity != paths.paths.size()) {
        rep.ok = false;
        rep.message = "claimed capacity " + std::to_string(doc.capacity) + " != " +
                      std::to_string(paths.paths.size()) + " verified paths";
    }
    nlohmann::ordered_json out{{"ok", rep.ok}};
    if (!rep.ok)
        out["violation"] = rep.message;
    std::cout << out.dump(2) << "\n";
    return rep.ok ? kExitOk : kExitViolation;
}

int run_gen(const GenParams& params) {
    try {
        std::cout << serialize_network(random_network(params));
    } catch (const std::invalid_argument& e) {
        return fail_usage("usage", e.what());
    }
    return kExitOk;
}

int run_bench(const std::vector<int>& sizes, int trials, uint64_t seed, int layers, int levels,
              double density, uint32_t field_p, const std::string& csv_path) {
    struct Row {
        uint64_t seed;
        int L, M, vx;
        size_t edges;
        uint32_t p;
        size_t capacity;
        int64_t wall_ns;
        IterationCounters totals;
    };
    std::vector<Row> rows;
    for (int size : sizes) {
        for (int t = 0; t < trials; ++t) {
            GenParams gp;
            gp.layers = layers;
            gp.max_nodes_per_layer = size;
            gp.max_levels_per_node = levels;
            gp.edge_density = density;
            gp.field_p = field_p;
            gp.seed = seed + static_cast<uint64_t>(rows.size());
            LayeredNetwork net = random_network(gp);
            auto t0 = std::chrono::steady_clock::now();
            SolveResult r = solve_capacity(net);
            auto t1 = std::chrono::steady_clock::now();
            NetworkStats st = network_stats(net);
            rows.push_back({gp.seed, gp.layers, st.max_nodes_per_layer, st.num_inputs,
                            st.num_edges, field_p, r.capacity,
                            std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0)
                                .count(),
                            r.totals});
        }
    }

    std::ostringstream csv;
    csv << "seed,L,M,Vx,E,p,C,wall_ns,eliminations,type1_visits,type2_visits,"
           "backward_rewirings\n";
    for (const Row& r : rows)
        csv << r.seed << ',' << r.L << ',' << r.M << ',' << r.vx << ',' << r.edges << ','
            << r.p << ',' << r.capacity << ',' << r.wall_ns << ',' << r.totals.eliminations
            << ',' << r.totals.type1_visits << ',' << r.totals.type2_visits << ','
            << r.totals.backward_rewirings << '\n';

    if (csv_path.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out)
            return fail_usage("io", "cannot write '" + csv_path + "'");
        out << csv.str();
    }
    return kExitOk;
}

int run_export_dot(const std::string& net_path, const std::string& result_path) {
    int code = kExitOk;
    auto net = load_network(net_path, code);
    if (!net)
        return code;
    std::optional<PathSet> paths;
    if (!result_path.empty()) {
        auto text = read_file(result_path);
        if (!text)
            return fail_usage("io", "cannot read '" + result_path + "'");
        auto parsed = parse_result(*net, *text);
        if (std::holds_alternative<ParseError>(parsed))
            return fail_usage("parse",
                              result_path + ": " + std::get<ParseError>(parsed).message);
        paths = std::get<ResultDoc>(parsed).paths.value_or(PathSet{});
    }
    std::cout << to_dot(*net, paths ? &*paths : nullptr);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unicast capacity tools for layered deterministic relay networks"};
    app.require_subcommand(1);

    // capacity
    std::string cap_file;
    bool cap_paths = false, cap_counters = false;
    SolverConfig cap_cfg;
    auto* cap = app.add_subcommand("capacity", "Solve a network's unicast capacity");
    cap->add_option("file", cap_file, "network JSON file")->required();
    cap->add_flag("--paths", cap_paths, "include the LI path set in the result");
    cap->add_flag("--counters", cap_counters, "include solver counters in the result");
    cap->add_flag("--legacy-backward", cap_cfg.legacy_backward,
                  "original backward rewiring behavior (may undercount)");
    cap->add_flag("--legacy-same-layer", cap_cfg.legacy_same_layer,
                  "original same-layer marking behavior (may undercount)");

    // oracle
    std::string ora_file;
    int ora_limit = 22;
    bool ora_serial = false, ora_double = false;
    auto* ora = app.add_subcommand("oracle", "Exhaustive minimum cut value");
    ora->add_option("file", ora_file, "network JSON file")->required();
    ora->add_option("--limit", ora_limit, "maximum intermediate node count")
        ->default_val(22);
    ora->add_flag("--serial", ora_serial, "use the serial reference enumeration");
    ora->add_flag("--double-check", ora_double,
                  "also run the exhaustive LI-path search (tiny networks)");

    // verify
    std::string ver_net, ver_result;
    auto* ver = app.add_subcommand("verify", "Check a result file against its network");
    ver->add_option("network", ver_net, "network JSON file")->required();
    ver->add_option("result", ver_result, "result JSON file")->required();

    // gen
    GenParams gen_params;
    auto* gen = app.add_subcommand("gen", "Generate a random network");
    gen->add_option("--layers", gen_params.layers, "layer count")->default_val(3);
    gen->add_option("--max-nodes", gen_params.max_nodes_per_layer,
                    "max nodes per intermediate layer")
        ->default_val(3);
    gen->add_option("--max-levels", gen_params.max_levels_per_node, "max signal levels per node")
        ->default_val(3);
    gen->add_option("--density", gen_params.edge_density, "edge probability")->default_val(0.5);
    gen->add_option("--field", gen_params.field_p, "prime field size")->default_val(2);
    gen->add_option("--seed", gen_params.seed, "generator seed")->default_val(0);

    // bench
    std::vector<int> bench_sizes{2, 3, 4};
    int bench_trials = 5, bench_layers = 4, bench_levels = 3;
    double bench_density = 0.5;
    uint32_t bench_field = 2;
    uint64_t bench_seed = 0;
    std::string bench_csv;
    auto* bench = app.add_subcommand("bench", "Solver benchmark with counter columns");
    bench->add_option("--sizes", bench_sizes, "max-nodes-per-layer values")
        ->delimiter(',');
    bench->add_option("--trials", bench_trials, "trials per size")->default_val(5);
    bench->add_option("--seed", bench_seed, "base seed")->default_val(0);
    bench->add_option("--layers", bench_layers, "layer count")->default_val(4);
    bench->add_option("--levels", bench_levels, "max signal levels per node")->default_val(3);
    bench->add_option("--density", bench_density, "edge probability")->default_val(0.5);
    bench->add_option("--field", bench_field, "prime field size")->default_val(2);
    bench->add_option("--csv", bench_csv, "write CSV here instead of stdout");

    // export-dot
    std::string dot_net, dot_result;
    auto* dot = app.add_subcommand("export-dot", "Render the network as DOT");
    dot->add_option("network", dot_net, "network JSON file")->required();
    dot->add_option("result", dot_result, "optional result JSON file for path colors");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << error_json("usage", e.what());
        return kExitUsage;
    }

    try {
        if (cap->parsed())
            return run_capacity(cap_file, cap_paths, cap_counters, cap_cfg);
        if (ora->parsed())
            return run_oracle(ora_file, ora_limit, ora_serial, ora_double);
        if (ver->parsed())
            return run_verify(ver_net, ver_result);
        if (gen->parsed())
            return run_gen(gen_params);
        if (bench->parsed())
            return run_bench(bench_sizes, bench_trials, bench_seed, bench_layers, bench_levels,
                             bench_density, bench_field, bench_csv);
        if (dot->parsed())
            return run_export_dot(dot_net, dot_result);
    } catch (const std::exception& e) {
        std::cerr << error_json("internal", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
