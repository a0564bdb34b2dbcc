#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "cli.hpp"
#include "graphmap/graph.hpp"
#include "graphmap/index.hpp"
#include "graphmap/perfmodel.hpp"

using namespace graphmap;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("graphmap_cli_" + std::to_string(std::rand()));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string operator/(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
};

void write(const std::string& path, const std::string& text) {
    std::ofstream(path) << text;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::map<std::string, std::string> stats(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string key;
    std::string value;
    while (in >> key >> value) {
        out[key] = value;
    }
    return out;
}

std::vector<std::vector<std::string>> tsv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cols;
        std::istringstream ls(line);
        std::string col;
        while (std::getline(ls, col, '\t')) {
            cols.push_back(col);
        }
        rows.push_back(cols);
    }
    return rows;
}

} // namespace

TEST_CASE("build-graph") {
    TempDir dir;
    write(dir / "g.gfa", "S\ta\tACGT\nS\tb\tGG\nS\tc\tT\nL\tb\t+\ta\t+\t0M\nL\ta\t+\tc\t+\t0M\n");
    Run r = run({"build-graph", dir / "g.gfa", "-o", dir / "g.gg"});
    REQUIRE(r.code == cli::kOk);
    auto s = stats(r.out);
    CHECK(s["nodes"] == "3");
    CHECK(s["edges"] == "2");
    CHECK(s["chars"] == "7");
    std::string bytes = slurp(dir / "g.gg");
    CHECK(bytes.size() == serialized_graph_bytes(3, 2, 7));
    GenomeGraph g = deserialize_graph(std::vector<uint8_t>(bytes.begin(), bytes.end()));
    CHECK(g.is_topologically_sorted());
    CHECK(g.node_string(0) == "GG");

    write(dir / "cyc.gfa", "S\ta\tA\nS\tb\tC\nL\ta\t+\tb\t+\t0M\nL\tb\t+\ta\t+\t0M\n");
    Run cyc = run({"build-graph", dir / "cyc.gfa", "-o", dir / "cyc.gg"});
    CHECK(cyc.code == cli::kParse);
    CHECK(cyc.err.find("cycle") != std::string::npos);

    Run missing = run({"build-graph", dir / "nope.gfa", "-o", dir / "x.gg"});
    CHECK(missing.code == cli::kIo);
    Run usage = run({"build-graph"});
    CHECK(usage.code == cli::kUsage);
    CHECK(run({"--help"}).code == cli::kOk);
}

TEST_CASE("build-index") {
    TempDir dir;
    write(dir / "g.gfa", "S\t1\tACGTTGCATTGACCA\nS\t2\tGGATCCA\nL\t1\t+\t2\t+\t0M\n");
    REQUIRE(run({"build-graph", dir / "g.gfa", "-o", dir / "g.gg"}).code == 0);

    Run r = run({"build-index", dir / "g.gg", "-o", dir / "g.mi", "-w", "3", "-k", "5", "--bucket-bits", "4"});
    REQUIRE(r.code == cli::kOk);
    auto s = stats(r.out);
    std::string bytes = slurp(dir / "g.mi");
    perf::FootprintReport fp = perf::footprint_report(
        {}, {4, std::stoull(s["distinct_minimizers"]), std::stoull(s["total_locations"])});
    CHECK(bytes.size() == fp.index_bytes);
    CHECK(s["bytes"] == std::to_string(bytes.size()));

    REQUIRE(run({"build-index", dir / "g.gg", "-o", dir / "g2.mi", "-w", "3", "-k", "5", "--bucket-bits", "4"}).code ==
            0);
    CHECK(slurp(dir / "g2.mi") == bytes);

    Run dense = run({"build-index", dir / "g.gg", "-o", dir / "d.mi", "-w", "1", "-k", "5", "--bucket-bits", "4"});
    REQUIRE(dense.code == 0);
    CHECK(stats(dense.out)["total_locations"] == std::to_string((15 - 4) + (7 - 4)));

    Run lex = run({"build-index", dir / "g.gg", "-o", dir / "l.mi", "-k", "5", "--score", "lex", "--strand",
                   "canonical", "--bucket-bits", "2"});
    CHECK(lex.code == 0);

    CHECK(run({"build-index", dir / "g.gg", "-o", dir / "z.mi", "-w", "0"}).code == cli::kConfig);
    CHECK(run({"build-index", dir / "g.gg", "-o", dir / "z.mi", "-k", "40"}).code == cli::kParse);
    CHECK(run({"build-index", dir / "g.gg", "-o", dir / "z.mi", "--score", "bogus"}).code == cli::kUsage);
    CHECK(run({"build-index", dir / "g.gfa", "-o", dir / "z.mi"}).code == cli::kParse);
}

TEST_CASE("simulate, map and verify") {
    TempDir dir;
    std::string prefix = dir / "sim";
    Run sim = run({"simulate", "-o", prefix, "--length", "100000", "--reads", "150", "--seed", "3"});
    REQUIRE(sim.code == 0);
    REQUIRE(run({"build-graph", prefix + ".gfa", "-o", prefix + ".gg"}).code == 0);
    REQUIRE(run({"build-index", prefix + ".gg", "-o", prefix + ".mi", "--bucket-bits", "12"}).code == 0);

    Run map = run({"map", prefix + ".gg", prefix + ".mi", prefix + ".fa", "--verify"});
    REQUIRE(map.code == cli::kOk);
    CHECK(map.err.find("verify: 0 failures") != std::string::npos);
    auto rows = tsv(map.out);
    REQUIRE(rows.size() == 150);

    // truth is in the FASTA headers: start=<linear> node=<id>:<offset>
    std::istringstream fa(slurp(prefix + ".fa"));
    std::string line;
    size_t i = 0;
    size_t exact = 0;
    while (std::getline(fa, line)) {
        if (line.empty() || line[0] != '>') {
            continue;
        }
        std::string node = line.substr(line.find("node=") + 5);
        node = node.substr(0, node.find(' '));
        const auto& row = rows[i++];
        REQUIRE(row.size() == 8);
        if (row[1] == "mapped" && row[4] == "0" && row[2] == node) {
            ++exact;
        }
    }
    CHECK(exact * 100 >= 99 * rows.size());

    Run threaded = run({"map", prefix + ".gg", prefix + ".mi", prefix + ".fa", "--threads", "4"});
    CHECK(threaded.out == map.out);

    Run gaf = run({"map", prefix + ".gg", prefix + ".mi", prefix + ".fa", "--gaf-like", "-o", dir / "out.tsv"});
    CHECK(gaf.code == 0);
    CHECK(gaf.out.empty());
    auto gaf_rows = tsv(slurp(dir / "out.tsv"));
    REQUIRE(gaf_rows.size() == 150);
    CHECK(gaf_rows[0].size() == 9);
    CHECK(gaf_rows[0][8][0] == '>');

    Run narrow = run({"map", prefix + ".gg", prefix + ".mi", prefix + ".fa", "--window", "64"});
    CHECK(narrow.code == 0);
    Run bad_window = run({"map", prefix + ".gg", prefix + ".mi", prefix + ".fa", "--window", "64", "--overlap",
                          "64"});
    CHECK(bad_window.code == cli::kConfig);

    write(dir / "empty.fa", "");
    Run empty = run({"map", prefix + ".gg", prefix + ".mi", dir / "empty.fa"});
    CHECK(empty.code == 0);
    CHECK(empty.out.empty());

    write(dir / "odd.fq", "@n1\nACGTNNACGT\n+\nIIIIIIIIII\n@u1\nACGTACGTTTGACAGATTAC\n+\nIIIIIIIIIIIIIIIIIIII\n");
    Run odd = run({"map", prefix + ".gg", prefix + ".mi", dir / "odd.fq"});
    CHECK(odd.code == 0);
    auto odd_rows = tsv(odd.out);
    REQUIRE(odd_rows.size() == 2);
    CHECK(odd_rows[0][1] == "skipped");
    CHECK(odd_rows[1][0] == "u1");

    CHECK(run({"map", prefix + ".gg", prefix + ".mi", dir / "missing.fa"}).code == cli::kIo);
    CHECK(run({"map", prefix + ".mi", prefix + ".gg", prefix + ".fa"}).code == cli::kParse);
}

TEST_CASE("simulate is deterministic") {
    TempDir dir;
    REQUIRE(run({"simulate", "-o", dir / "a", "--length", "5000", "--reads", "5", "--seed", "9"}).code == 0);
    REQUIRE(run({"simulate", "-o", dir / "b", "--length", "5000", "--reads", "5", "--seed", "9"}).code == 0);
    CHECK(slurp(dir / "a.gfa") == slurp(dir / "b.gfa"));
    CHECK(slurp(dir / "a.fa") == slurp(dir / "b.fa"));

    setenv("GRAPHMAP_SEED", "9", 1);
    REQUIRE(run({"simulate", "-o", dir / "c", "--length", "5000", "--reads", "5"}).code == 0);
    unsetenv("GRAPHMAP_SEED");
    CHECK(slurp(dir / "c.fa") == slurp(dir / "a.fa"));

    CHECK(run({"simulate", "-o", dir / "d", "--read-min", "10", "--read-max", "5"}).code == cli::kConfig);
}

TEST_CASE("perf-report") {
    Run narrow = run({"perf-report", "--window", "64", "--format", "kv"});
    REQUIRE(narrow.code == 0);
    CHECK(narrow.out.find("overlap=24\n") != std::string::npos);
    CHECK(narrow.out.find("windows=250\n") != std::string::npos);
    CHECK(narrow.out.find("total_cycles=42250\n") != std::string::npos);

    Run wide = run({"perf-report", "--format", "kv"});
    CHECK(wide.out.find("windows=125\n") != std::string::npos);
    CHECK(wide.out.find("total_cycles=34000\n") != std::string::npos);
    CHECK(wide.out.find("scratchpad.bitvector.bytes=131072\n") != std::string::npos);
    CHECK(wide.out.find("scratchpad.hop_queue.bytes=12288\n") != std::string::npos);
    CHECK(wide.out.find("pe_write_bytes_per_cycle=16\n") != std::string::npos);

    Run text = run({"perf-report", "--nodes", "2", "--edges", "1", "--chars", "4"});
    CHECK(text.code == 0);
    CHECK(text.out.find("graph_bytes\t" + std::to_string(serialized_graph_bytes(2, 1, 4))) != std::string::npos);

    CHECK(run({"perf-report", "--window", "96"}).code == cli::kConfig);
    CHECK(run({"perf-report", "--format", "xml"}).code == cli::kUsage);
}
