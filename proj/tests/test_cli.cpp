#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

// End-to-end checks of the command line binary: spawns the real executable
// and inspects exit codes and output bytes.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "support/fixtures.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(ADTCAP_CLI_BIN) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0)
        out.append(buf, n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

fs::path scratch_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "adtcap_cli_test";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string write_scratch(const std::string& name, const std::string& text) {
    fs::path p = scratch_dir() / name;
    std::ofstream(p) << text;
    return p.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::string kMinimalNet = R"({
  "field": 2,
  "layers": [[{"id": "S", "inputs": 1, "outputs": 0}],
             [{"id": "D", "inputs": 0, "outputs": 1}]],
  "edges": [{"from": "S", "x": 0, "to": "D", "y": 0}]
})";

}  // namespace

TEST_CASE("capacity of the minimal network") {
    std::string net = write_scratch("minimal.json", kMinimalNet);
    auto r = run("capacity " + net);
    CHECK(r.code == 0);
    CHECK(r.out.find("\"capacity\": 1") != std::string::npos);
}

TEST_CASE("capacity of an edgeless network is zero") {
    std::string net = write_scratch("edgeless.json", R"({
      "field": 2,
      "layers": [[{"id": "S", "inputs": 1, "outputs": 0}],
                 [{"id": "D", "inputs": 0, "outputs": 1}]],
      "edges": []
    })");
    auto r = run("capacity " + net);
    CHECK(r.code == 0);
    CHECK(r.out.find("\"capacity\": 0") != std::string::npos);
}

TEST_CASE("fixture A through the CLI: default, legacy, oracle") {
    std::string net = testsupport::fixture_path("fixture_a.json");
    CHECK(run("capacity " + net).out.find("\"capacity\": 4") != std::string::npos);
    CHECK(run("capacity " + net + " --legacy-backward").out.find("\"capacity\": 3") !=
          std::string::npos);
    auto oracle = run("oracle " + net + " --double-check");
    CHECK(oracle.code == 0);
    CHECK(oracle.out.find("\"capacity\": 4") != std::string::npos);
    CHECK(oracle.out.find("\"argmin_cut\"") != std::string::npos);
}

TEST_CASE("fixture B through the CLI: default, legacy, oracle") {
    std::string net = testsupport::fixture_path("fixture_b.json");
    CHECK(run("capacity " + net).out.find("\"capacity\": 2") != std::string::npos);
    CHECK(run("capacity " + net + " --legacy-same-layer").out.find("\"capacity\": 1") !=
          std::string::npos);
    CHECK(run("oracle " + net).out.find("\"capacity\": 2") != std::string::npos);
}

TEST_CASE("verify accepts the solver's own output") {
    std::string net = testsupport::fixture_path("fixture_a.json");
    auto cap = run("capacity " + net + " --paths");
    REQUIRE(cap.code == 0);
    std::string result = write_scratch("own_result.json", cap.out);
    auto ver = run("verify " + net + " " + result);
    CHECK(ver.code == 0);
    CHECK(ver.out.find("\"ok\": true") != std::string::npos);
}

TEST_CASE("verify flags a tampered path") {
    std::string net = testsupport::fixture_path("fixture_b.json");
    auto cap = run("capacity " + net + " --paths");
    REQUIRE(cap.code == 0);
    // delete one edge object from the first path (the first {...} after "paths")
    std::string text = cap.out;
    size_t paths_at = text.find("\"paths\"");
    REQUIRE(paths_at != std::string::npos);
    size_t open = text.find('{', paths_at);
    size_t close = text.find('}', open);
    text.erase(open, close - open + 2);  // object plus trailing comma
    std::string result = write_scratch("tampered.json", text);
    auto ver = run("verify " + net + " " + result);
    CHECK(ver.code == 1);
    CHECK(ver.out.find("disconnected") != std::string::npos);
}

TEST_CASE("verify reports a rank deficit for dependent paths") {
    std::string net = write_scratch("allones.json", R"({
      "field": 2,
      "layers": [[{"id": "S", "inputs": 2, "outputs": 0}],
                 [{"id": "D", "inputs": 0, "outputs": 2}]],
      "edges": [{"from": "S", "x": 0, "to": "D", "y": 0},
                {"from": "S", "x": 0, "to": "D", "y": 1},
                {"from": "S", "x": 1, "to": "D", "y": 0},
                {"from": "S", "x": 1, "to": "D", "y": 1}]
    })");
    std::string result = write_scratch("dependent.json", R"({
      "capacity": 2,
      "paths": [[{"from": "S", "x": 0, "to": "D", "y": 0}],
                [{"from": "S", "x": 1, "to": "D", "y": 1}]]
    })");
    auto ver = run("verify " + net + " " + result);
    CHECK(ver.code == 1);
    CHECK(ver.out.find("rank deficit") != std::string::npos);
}

TEST_CASE("verify checks the claimed capacity") {
    std::string net = write_scratch("minimal2.json", kMinimalNet);
    std::string result = write_scratch("wrongcap.json", R"({"capacity": 3, "paths": []})");
    auto ver = run("verify " + net + " " + result);
    CHECK(ver.code == 1);
    CHECK(ver.out.find("claimed capacity") != std::string::npos);
}

TEST_CASE("gen is deterministic and honors its flags") {
    auto a = run("gen --layers 4 --max-nodes 3 --max-levels 3 --density 0.5 --seed 123");
    auto b = run("gen --layers 4 --max-nodes 3 --max-levels 3 --density 0.5 --seed 123");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);

    auto empty = run("gen --layers 2 --density 0 --seed 5");
    CHECK(empty.out.find("\"edges\": []") != std::string::npos);

    auto f3 = run("gen --layers 3 --density 1 --field 3 --seed 9");
    CHECK(f3.code == 0);
    auto parsed = adtcap::parse_network(f3.out);
    REQUIRE(std::holds_alternative<adtcap::LayeredNetwork>(parsed));
    for (const auto& e : std::get<adtcap::LayeredNetwork>(parsed).edges()) {
        CHECK(e.coeff >= 1);
        CHECK(e.coeff <= 2);
    }
}

TEST_CASE("generated networks round trip through capacity and verify") {
    auto gen = run("gen --layers 4 --max-nodes 3 --max-levels 3 --density 0.6 --seed 77");
    std::string net = write_scratch("gen77.json", gen.out);
    auto cap = run("capacity " + net + " --paths --counters");
    REQUIRE(cap.code == 0);
    std::string result = write_scratch("gen77_result.json", cap.out);
    CHECK(run("verify " + net + " " + result).code == 0);
}

TEST_CASE("bench emits the pinned CSV columns") {
    auto header_only = run("bench --trials 0");
    CHECK(header_only.code == 0);
    CHECK(header_only.out ==
          "seed,L,M,Vx,E,p,C,wall_ns,eliminations,type1_visits,type2_visits,"
          "backward_rewirings\n");

    std::string csv_a = (scratch_dir() / "bench_a.csv").string();
    std::string csv_b = (scratch_dir() / "bench_b.csv").string();
    CHECK(run("bench --sizes 2,3 --trials 3 --seed 42 --csv " + csv_a).code == 0);
    CHECK(run("bench --sizes 2,3 --trials 3 --seed 42 --csv " + csv_b).code == 0);
    // identical up to the timing column
    auto strip_wall = [](const std::string& text) {
        std::istringstream in(text);
        std::string line, out;
        while (std::getline(in, line)) {
            int col = 0;
            size_t start = 0, pos;
            std::string kept;
            while ((pos = line.find(',', start)) != std::string::npos) {
                if (col != 7)
                    kept += line.substr(start, pos - start) + ",";
                start = pos + 1;
                ++col;
            }
            kept += line.substr(start);
            out += kept + "\n";
        }
        return out;
    };
    CHECK(strip_wall(slurp(csv_a)) == strip_wall(slurp(csv_b)));
}

TEST_CASE("export-dot renders, with and without a result") {
    std::string net = testsupport::fixture_path("fixture_a.json");
    auto plain = run("export-dot " + net);
    CHECK(plain.code == 0);
    CHECK(plain.out.find("rankdir=LR") != std::string::npos);
    CHECK(plain.out.find("color=") == std::string::npos);

    auto cap = run("capacity " + net + " --paths");
    std::string result = write_scratch("dot_result.json", cap.out);
    auto colored = run("export-dot " + net + " " + result);
    CHECK(colored.code == 0);
    // four LI paths, four distinct colors
    for (const char* c : {"color=red", "color=green", "color=blue", "color=purple"})
        CHECK(colored.out.find(c) != std::string::npos);
}

TEST_CASE("error paths exit with code 2 and a JSON line") {
    auto missing = run("capacity /no/such/file.json");
    CHECK(missing.code == 2);
    CHECK(missing.out.find("\"error\"") != std::string::npos);

    std::string garbage = write_scratch("garbage.json", "{ nope");
    CHECK(run("capacity " + garbage).code == 2);

    std::string invalid = write_scratch("invalid.json", R"({
      "field": 2,
      "layers": [[{"id": "S", "inputs": 1, "outputs": 1}],
                 [{"id": "D", "inputs": 0, "outputs": 1}]],
      "edges": []
    })");
    auto v = run("capacity " + invalid);
    CHECK(v.code == 2);
    CHECK(v.out.find("zero output ports") != std::string::npos);

    CHECK(run("no-such-subcommand").code == 2);

    // oracle size cap is an explicit error, not a truncation
    auto big = run("gen --layers 6 --max-nodes 4 --seed 1");
    std::string bignet = write_scratch("big.json", big.out);
    auto capped = run("oracle " + bignet + " --limit 2");
    CHECK(capped.code == 2);
    CHECK(capped.out.find("enumeration limit") != std::string::npos);
}

TEST_CASE("oracle --serial matches the parallel default") {
    auto gen = run("gen --layers 4 --max-nodes 3 --max-levels 3 --density 0.5 --seed 31");
    std::string net = write_scratch("gen31.json", gen.out);
    auto par = run("oracle " + net);
    auto ser = run("oracle " + net + " --serial");
    CHECK(par.code == 0);
    CHECK(par.out == ser.out);
}
