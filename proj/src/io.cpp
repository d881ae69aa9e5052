#include "adtcap/io.hpp"

#include <array>

#include "json.hpp"

namespace adtcap {

using ordered_json = nlohmann::ordered_json;

namespace {

const char* require_uint(const nlohmann::json& j, const char* key, uint64_t& out) {
    if (!j.contains(key))
        return "missing";
    if (!j[key].is_number_unsigned())
        return "not a non-negative integer";
    out = j[key].get<uint64_t>();
    return nullptr;
}

}  // namespace

std::variant<LayeredNetwork, ParseError> parse_network(const std::string& text) {
    nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
    auto fail = [](std::string m) { return ParseError{std::move(m)}; };
    if (doc.is_discarded())
        return fail("network file is not valid JSON");
    if (!doc.is_object())
        return fail("network document must be a JSON object");

    uint64_t p = 0;
    if (const char* why = require_uint(doc, "field", p))
        return fail(std::string("\"field\": ") + why);
    if (p < 2 || p > (1u << 20) || !is_prime(static_cast<uint32_t>(p)))
        return fail("\"field\" must be a small prime");
    FieldSpec field(static_cast<uint32_t>(p));

    if (!doc.contains("layers") || !doc["layers"].is_array())
        return fail("\"layers\" must be an array of layers");
    std::vector<std::vector<NodeSpec>> layers;
    for (const auto& layer : doc["layers"]) {
        if (!layer.is_array())
            return fail("each layer must be an array of nodes");
        std::vector<NodeSpec> row;
        for (const auto& n : layer) {
            if (!n.is_object() || !n.contains("id") || !n["id"].is_string())
                return fail("each node needs a string \"id\"");
            uint64_t in = 0, out = 0;
            if (const char* why = require_uint(n, "inputs", in))
                return fail("node \"" + n["id"].get<std::string>() + "\" inputs: " + why);
            if (const char* why = require_uint(n, "outputs", out))
                return fail("node \"" + n["id"].get<std::string>() + "\" outputs: " + why);
            row.push_back({n["id"].get<std::string>(), static_cast<int>(in),
                           static_cast<int>(out)});
        }
        layers.push_back(std::move(row));
    }

    LayeredNetwork skeleton(field, layers, {});
    std::vector<Edge> edges;
    if (doc.contains("edges")) {
        if (!doc["edges"].is_array())
            return fail("\"edges\" must be an array");
        for (const auto& e : doc["edges"]) {
            if (!e.is_object() || !e.contains("from") || !e["from"].is_string() ||
                !e.contains("to") || !e["to"].is_string())
                return fail("each edge needs string \"from\" and \"to\" node ids");
            int from = skeleton.node_index(e["from"].get<std::string>());
            int to = skeleton.node_index(e["to"].get<std::string>());
            if (from < 0)
                return fail("edge references unknown node \"" + e["from"].get<std::string>() +
                            "\"");
            if (to < 0)
                return fail("edge references unknown node \"" + e["to"].get<std::string>() +
                            "\"");
            uint64_t x = 0, y = 0, coeff = 1;
            if (const char* why = require_uint(e, "x", x))
                return fail(std::string("edge \"x\": ") + why);
            if (const char* why = require_uint(e, "y", y))
                return fail(std::string("edge \"y\": ") + why);
            if (e.contains("coeff")) {
                if (const char* why = require_uint(e, "coeff", coeff))
                    return fail(std::string("edge \"coeff\": ") + why);
            }
            edges.push_back({from, static_cast<int>(x), to, static_cast<int>(y),
                             static_cast<uint32_t>(coeff)});
        }
    }
    return LayeredNetwork(field, std::move(layers), std::move(edges));
}

std::string serialize_network(const LayeredNetwork& net) {
    ordered_json doc;
    doc["field"] = net.field().p;
    doc["layers"] = ordered_json::array();
    for (const auto& layer : net.raw_layers()) {
        ordered_json row = ordered_json::array();
        for (const NodeSpec& n : layer)
            row.push_back({{"id", n.id}, {"inputs", n.inputs}, {"outputs", n.outputs}});
        doc["layers"].push_back(std::move(row));
    }
    doc["edges"] = ordered_json::array();
    for (const Edge& e : net.edges()) {
        ordered_json je{{"from", net.node(e.from_node).id},
                        {"x", e.input_index},
                        {"to", net.node(e.to_node).id},
                        {"y", e.output_index}};
        if (e.coeff != 1)
            je["coeff"] = e.coeff;
        doc["edges"].push_back(std::move(je));
    }
    return doc.dump(2) + "\n";
}

std::string serialize_result(const LayeredNetwork& net, const ResultDoc& doc) {
    ordered_json out;
    out["capacity"] = doc.capacity;
    if (doc.paths) {
        out["paths"] = ordered_json::array();
        for (const auto& path : doc.paths->paths) {
            ordered_json jp = ordered_json::array();
            for (const Edge& e : path)
                jp.push_back({{"from", net.node(e.from_node).id},
                              {"x", e.input_index},
                              {"to", net.node(e.to_node).id},
                              {"y", e.output_index}});
            out["paths"].push_back(std::move(jp));
        }
    }
    if (doc.counters)
        out["counters"] = *doc.counters;
    if (doc.argmin_cut)
        out["argmin_cut"] = *doc.argmin_cut;
    if (doc.cuts_examined)
        out["cuts_examined"] = *doc.cuts_examined;
    return out.dump(2) + "\n";
}

std::variant<ResultDoc, ParseError> parse_result(const LayeredNetwork& net,
                                                 const std::string& text) {
    nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
    auto fail = [](std::string m) { return ParseError{std::move(m)}; };
    if (doc.is_discarded())
        return fail("result file is not valid JSON");
    if (!doc.is_object())
        return fail("result document must be a JSON object");
    ResultDoc out;
    uint64_t cap = 0;
    if (const char* why = require_uint(doc, "capacity", cap))
        return fail(std::string("\"capacity\": ") + why);
    out.capacity = cap;
    if (doc.contains("paths")) {
        if (!doc["paths"].is_array())
            return fail("\"paths\" must be an array");
        PathSet ps;
        for (const auto& jp : doc["paths"]) {
            if (!jp.is_array())
                return fail("each path must be an array of edges");
            std::vector<Edge> path;
            for (const auto& je : jp) {
                if (!je.is_object() || !je.contains("from") || !je["from"].is_string() ||
                    !je.contains("to") || !je["to"].is_string())
                    return fail("each path edge needs \"from\" and \"to\" node ids");
                int from = net.node_index(je["from"].get<std::string>());
                int to = net.node_index(je["to"].get<std::string>());
                if (from < 0 || to < 0)
                    return fail("path edge references an unknown node");
                uint64_t x = 0, y = 0;
                if (const char* why = require_uint(je, "x", x))
                    return fail(std::string("path edge \"x\": ") + why);
                if (const char* why = require_uint(je, "y", y))
                    return fail(std::string("path edge \"y\": ") + why);
                uint32_t coeff = 0;
                if (je["x"].get<int>() < net.node(from).inputs &&
                    je["y"].get<int>() < net.node(to).outputs)
                    coeff = net.coeff(net.input_gid(from, static_cast<int>(x)),
                                      net.output_gid(to, static_cast<int>(y)));
                path.push_back({from, static_cast<int>(x), to, static_cast<int>(y), coeff});
            }
            ps.paths.push_back(std::move(path));
        }
        out.paths = std::move(ps);
    }
    return out;
}

std::string error_json(const std::string& kind, const std::string& message) {
    ordered_json e{{"error", kind}, {"message", message}};
    return e.dump() + "\n";
}

std::string to_dot(const LayeredNetwork& net, const PathSet* paths) {
    static const std::array<const char*, 8> palette = {
        "red", "green", "blue", "purple", "orange", "brown", "cyan3", "magenta"};

    // edge (input gid, output gid) -> path index
    std::map<std::pair<int, int>, size_t> colored;
    if (paths)
        for (size_t p = 0; p < paths->paths.size(); ++p)
            for (const Edge& e : paths->paths[p])
                colored[{net.input_gid(e.from_node, e.input_index),
                         net.output_gid(e.to_node, e.output_index)}] = p;

    std::string dot = "digraph network {\n  rankdir=LR;\n  node [shape=box];\n";
    for (int l = 0; l < net.num_layers(); ++l) {
        auto [b, e] = net.layer_node_range(l);
        dot += "  { rank=same;";
        for (int n = b; n < e; ++n)
            dot += " \"" + net.node(n).id + "\";";
        dot += " }\n";
    }
    for (const Edge& e : net.edges()) {
        dot += "  \"" + net.node(e.from_node).id + "\" -> \"" + net.node(e.to_node).id + "\"";
        std::string attrs = "taillabel=\"x" + std::to_string(e.input_index) + "\", headlabel=\"y" +
                            std::to_string(e.output_index) + "\"";
        if (e.coeff != 1)
            attrs += ", label=\"" + std::to_string(e.coeff) + "\"";
        auto it = colored.find({net.input_gid(e.from_node, e.input_index),
                                net.output_gid(e.to_node, e.output_index)});
        if (it != colored.end())
            attrs += ", color=" + std::string(palette[it->second % palette.size()]) +
                     ", penwidth=2";
        dot += " [" + attrs + "];\n";
    }
    dot += "}\n";
    return dot;
}

}  // namespace adtcap
