#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>
#include <thread>

#include "graphmap/error.hpp"
#include "graphmap/graph.hpp"
#include "graphmap/index.hpp"
#include "graphmap/mapper.hpp"
#include "graphmap/oracle.hpp"
#include "graphmap/perfmodel.hpp"
#include "graphmap/reads.hpp"
#include "graphmap/simulate.hpp"

namespace graphmap::cli {

namespace {

int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::Config:
    case ErrorCode::Width:
    case ErrorCode::Bounds:
    case ErrorCode::EmptyIndex:
        return kConfig;
    case ErrorCode::Io:
        return kIo;
    default:
        return kParse;
    }
}

std::vector<uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open " + path);
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::vector<uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot write " + path);
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw Error(ErrorCode::Io, "write failed for " + path);
    }
}

void write_text(const std::string& path, const std::string& text) {
    write_file(path, std::vector<uint8_t>(text.begin(), text.end()));
}

struct BuildGraphOptions {
    std::string gfa;
    std::string out;
};

int cmd_build_graph(const BuildGraphOptions& opt, std::ostream& out) {
    std::ifstream in(opt.gfa);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open " + opt.gfa);
    }
    ParsedGfa parsed = parse_gfa(in);
    SortedGraph sorted = topo_sort(parsed.graph);
    std::vector<uint8_t> bytes = serialize_graph(sorted.graph);
    write_file(opt.out, bytes);
    out << "nodes\t" << sorted.graph.node_count() << '\n'
        << "edges\t" << sorted.graph.edge_count() << '\n'
        << "chars\t" << sorted.graph.char_count() << '\n'
        << "bytes\t" << bytes.size() << '\n';
    return kOk;
}

struct BuildIndexOptions {
    std::string graph;
    std::string out;
    uint32_t w = 10;
    uint32_t k = 15;
    uint32_t bucket_bits = 24;
    ScoreMode score = ScoreMode::Hash;
    StrandMode strand = StrandMode::Forward;
};

int cmd_build_index(const BuildIndexOptions& opt, std::ostream& out) {
    GenomeGraph graph = deserialize_graph(read_file(opt.graph));
    MinimizerParams params{opt.w, opt.k, opt.score, opt.strand};
    MinimizerIndex index = MinimizerIndex::build(graph, params, opt.bucket_bits);
    std::vector<uint8_t> bytes = serialize_index(index);
    write_file(opt.out, bytes);
    out << format_index_stats(index.stats()) << "bytes\t" << bytes.size() << '\n';
    return kOk;
}

struct MapOptions {
    std::string graph;
    std::string index;
    std::string reads;
    std::string out;
    double error_rate = 0.1;
    uint32_t hop_limit = kDefaultHopLimit;
    uint32_t window = 128;
    uint32_t overlap = 0;  // 0: 3/8 of the window
    double freq_fraction = 0.0002;
    unsigned threads = 1;
    bool verify = false;
    bool gaf_like = false;
};

std::string node_path(const std::vector<GlobalOffset>& path) {
    std::string s;
    for (size_t i = 0; i < path.size(); ++i) {
        if (i == 0 || path[i].node_id != path[i - 1].node_id) {
            s += '>';
            s += std::to_string(path[i].node_id);
        }
    }
    return s.empty() ? "*" : s;
}

struct MapLine {
    std::string text;
    bool verify_failed = false;
    std::string verify_message;
};

MapLine map_one(const SequenceRecord& rec, const Mapper& mapper, const GenomeGraph& graph, const MapOptions& opt) {
    MapLine line;
    std::ostringstream os;
    std::vector<Base> bases;
    if (!try_encode_sequence(rec.sequence, bases) || bases.empty()) {
        os << rec.id << "\tskipped\t*\t*\t*\t*\t0\t0";
        if (opt.gaf_like) {
            os << "\t*";
        }
        line.text = os.str();
        return line;
    }
    MappingOutcome res = mapper.map(bases);
    if (!res.mapped) {
        os << rec.id << "\tunmapped\t*\t*\t*\t*\t" << res.seed_stats.seeds << "\t0";
        if (opt.gaf_like) {
            os << "\t*";
        }
        line.text = os.str();
        return line;
    }
    const AlignmentResult& aln = res.alignment;
    os << rec.id << "\tmapped\t";
    if (aln.path.empty()) {
        os << '*';
    }
    else {
        os << aln.path.front().node_id << ':' << aln.path.front().offset;
    }
    os << '\t' << res.region.x << '-' << res.region.y << '\t' << aln.edit_distance << '\t'
       << aln.cigar.to_string() << '\t' << res.seed_stats.seeds << '\t' << aln.windows.size();
    if (opt.gaf_like) {
        os << '\t' << node_path(aln.path);
    }
    line.text = os.str();

    if (opt.verify) {
        oracle::ReplayResult replay = oracle::replay_cigar(graph, aln.path, bases, aln.cigar);
        if (!replay.ok || replay.edits != aln.edit_distance) {
            line.verify_failed = true;
            line.verify_message = rec.id + ": " +
                                  (replay.ok ? "replayed edits differ from reported distance" : replay.message);
        }
    }
    return line;
}

int cmd_map(const MapOptions& opt, std::ostream& out, std::ostream& err) {
    GenomeGraph graph = deserialize_graph(read_file(opt.graph));
    MinimizerIndex index = deserialize_index(read_file(opt.index));

    MapParams params;
    params.error_rate = opt.error_rate;
    params.hop_limit = opt.hop_limit;
    params.window = WindowConfig::with_width(opt.window);
    if (opt.overlap != 0) {
        params.window.overlap = opt.overlap;
    }
    params.freq_fraction = opt.freq_fraction;
    Mapper mapper(graph, index, params);

    std::vector<SequenceRecord> records;
    SequenceReader reader(opt.reads);
    while (std::optional<SequenceRecord> rec = reader.next()) {
        records.push_back(std::move(*rec));
    }

    std::vector<MapLine> lines(records.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next++; i < records.size(); i = next++) {
            lines[i] = map_one(records[i], mapper, graph, opt);
        }
    };
    unsigned threads = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(records.size())));
    if (threads <= 1) {
        worker();
    }
    else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }

    std::ofstream file;
    if (!opt.out.empty()) {
        file.open(opt.out);
        if (!file) {
            throw Error(ErrorCode::Io, "cannot write " + opt.out);
        }
    }
    std::ostream& sink = opt.out.empty() ? out : file;
    uint64_t failures = 0;
    for (const MapLine& line : lines) {
        sink << line.text << '\n';
        if (line.verify_failed) {
            ++failures;
            err << "verify: " << line.verify_message << '\n';
        }
    }
    if (opt.verify) {
        err << "verify: " << failures << " failures\n";
    }
    return failures == 0 ? kOk : kVerify;
}

struct PerfOptions {
    uint64_t read_length = 10000;
    perf::AcceleratorConfig config;
    bool overlap_set = false;
    std::string format = "text";
    uint64_t nodes = 0;
    uint64_t edges = 0;
    uint64_t chars = 0;
    uint64_t minimizers = 0;
    uint64_t locations = 0;
    uint32_t bucket_bits = 24;
    bool footprint = false;
};

int cmd_perf_report(PerfOptions opt, std::ostream& out) {
    if (!opt.overlap_set) {
        opt.config.overlap = opt.config.window * 3 / 8;
    }
    perf::PerfReport report = perf::perf_report(opt.read_length, opt.config);
    out << (opt.format == "kv" ? perf::format_key_values(report) : perf::format_text(report));
    if (opt.footprint) {
        perf::FootprintReport fp = perf::footprint_report({opt.nodes, opt.edges, opt.chars},
                                                          {opt.bucket_bits, opt.minimizers, opt.locations});
        out << "graph_bytes\t" << fp.graph_bytes << '\n'
            << "index_bytes\t" << fp.index_bytes << '\n';
    }
    return kOk;
}

struct SimulateOptions {
    std::string prefix;
    uint64_t length = 100000;
    double variant_rate = 0.001;
    uint64_t reads = 100;
    uint64_t read_min = 100;
    uint64_t read_max = 1000;
    double edit_rate = 0.0;
    uint64_t seed = 1;
};

int cmd_simulate(const SimulateOptions& opt, std::ostream& out) {
    if (opt.read_min == 0 || opt.read_min > opt.read_max) {
        throw Error(ErrorCode::Config, "read length range is empty");
    }
    sim::Rng rng(opt.seed);
    sim::GraphParams gp;
    gp.backbone_length = opt.length;
    gp.variant_rate = opt.variant_rate;
    sim::SimulatedGraph g = sim::random_graph(gp, rng);
    write_text(opt.prefix + ".gfa", write_gfa(g.graph));

    std::ostringstream fa;
    std::uniform_int_distribution<uint64_t> len(opt.read_min, opt.read_max);
    for (uint64_t r = 0; r < opt.reads; ++r) {
        sim::SampledRead read = sim::sample_read(g.graph, len(rng), rng);
        sim::PlantedEdits planted = sim::plant_edits(read.bases, opt.edit_rate, rng);
        const GlobalOffset& s = read.path.front();
        fa << ">r" << r << " start=" << s.linear_pos << " node=" << s.node_id << ':' << s.offset
           << " edits=" << planted.edits << '\n'
           << decode_sequence(planted.bases) << '\n';
    }
    write_text(opt.prefix + ".fa", fa.str());
    out << "nodes\t" << g.graph.node_count() << '\n'
        << "edges\t" << g.graph.edge_count() << '\n'
        << "chars\t" << g.graph.char_count() << '\n'
        << "reads\t" << opt.reads << '\n';
    return kOk;
}

uint64_t default_seed() {
    const char* env = std::getenv("GRAPHMAP_SEED");
    if (env == nullptr || *env == '\0') {
        return 1;
    }
    char* end = nullptr;
    uint64_t v = std::strtoull(env, &end, 10);
    if (*end != '\0') {
        throw Error(ErrorCode::Config, std::string("GRAPHMAP_SEED is not a number: ") + env);
    }
    return v;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"graphmap: sequence-to-graph read mapping", "graphmap"};
    app.require_subcommand(1);

    BuildGraphOptions bg;
    CLI::App* build_graph = app.add_subcommand("build-graph", "Parse and sort a GFA graph, write .gg");
    build_graph->add_option("gfa", bg.gfa, "GFA v1 input")->required();
    build_graph->add_option("-o,--out", bg.out, "Output .gg file")->required();

    const std::map<std::string, ScoreMode> score_map{{"hash", ScoreMode::Hash}, {"lex", ScoreMode::Lexicographic}};
    const std::map<std::string, StrandMode> strand_map{{"fwd", StrandMode::Forward},
                                                       {"canonical", StrandMode::Canonical}};

    BuildIndexOptions bi;
    CLI::App* build_index = app.add_subcommand("build-index", "Build the minimizer index of a .gg graph");
    build_index->add_option("graph", bi.graph, "Input .gg file")->required();
    build_index->add_option("-o,--out", bi.out, "Output .mi file")->required();
    build_index->add_option("-w", bi.w, "Minimizer window (k-mers)")->capture_default_str();
    build_index->add_option("-k", bi.k, "k-mer length")->capture_default_str();
    build_index->add_option("--bucket-bits", bi.bucket_bits, "log2 of the bucket count")->capture_default_str();
    build_index->add_option("--score", bi.score, "k-mer ordering")->transform(CLI::CheckedTransformer(score_map));
    build_index->add_option("--strand", bi.strand, "Strand mode")->transform(CLI::CheckedTransformer(strand_map));

    MapOptions mo;
    CLI::App* map = app.add_subcommand("map", "Map FASTA/FASTQ reads, one TSV line per read");
    map->add_option("graph", mo.graph, "Input .gg file")->required();
    map->add_option("index", mo.index, "Input .mi file")->required();
    map->add_option("reads", mo.reads, "FASTA or FASTQ, optionally gzipped")->required();
    map->add_option("-o,--out", mo.out, "Output TSV (default stdout)");
    map->add_option("-E,--error-rate", mo.error_rate, "Error rate E")->capture_default_str();
    map->add_option("--hop-limit", mo.hop_limit, "Longest edge hop kept")->capture_default_str();
    map->add_option("--window", mo.window, "Window width W")->capture_default_str();
    map->add_option("--overlap", mo.overlap, "Window overlap O (default 3W/8)");
    map->add_option("--freq-fraction", mo.freq_fraction, "Most frequent minimizer fraction to drop")
        ->capture_default_str();
    map->add_option("--threads", mo.threads, "Worker threads")->capture_default_str();
    map->add_flag("--verify", mo.verify, "Replay every CIGAR against the graph");
    map->add_flag("--gaf-like", mo.gaf_like, "Append an approximate GAF-style node path");

    PerfOptions po;
    CLI::App* perf_cmd = app.add_subcommand("perf-report", "Analytical accelerator model");
    perf_cmd->add_option("--read-length", po.read_length)->capture_default_str();
    perf_cmd->add_option("--window", po.config.window)->capture_default_str();
    CLI::Option* overlap_opt = perf_cmd->add_option("--overlap", po.config.overlap, "Default 3W/8");
    perf_cmd->add_option("--pe-count", po.config.pe_count)->capture_default_str();
    perf_cmd->add_option("--bits-per-pe", po.config.bits_per_pe)->capture_default_str();
    perf_cmd->add_option("--clock-ghz", po.config.clock_ghz)->capture_default_str();
    perf_cmd->add_option("--format", po.format)->check(CLI::IsMember({"text", "kv"}))->capture_default_str();
    CLI::Option* nodes_opt = perf_cmd->add_option("--nodes", po.nodes, "Graph nodes for the footprint");
    perf_cmd->add_option("--edges", po.edges)->needs(nodes_opt);
    perf_cmd->add_option("--chars", po.chars)->needs(nodes_opt);
    perf_cmd->add_option("--minimizers", po.minimizers)->needs(nodes_opt);
    perf_cmd->add_option("--locations", po.locations)->needs(nodes_opt);
    perf_cmd->add_option("--bucket-bits", po.bucket_bits)->capture_default_str();

    SimulateOptions so;
    CLI::App* simulate = app.add_subcommand("simulate", "Random variation graph plus sampled reads");
    simulate->add_option("-o,--out-prefix", so.prefix, "Writes PREFIX.gfa and PREFIX.fa")->required();
    simulate->add_option("--length", so.length)->capture_default_str();
    simulate->add_option("--variant-rate", so.variant_rate)->capture_default_str();
    simulate->add_option("--reads", so.reads)->capture_default_str();
    simulate->add_option("--read-min", so.read_min)->capture_default_str();
    simulate->add_option("--read-max", so.read_max)->capture_default_str();
    simulate->add_option("--edit-rate", so.edit_rate)->capture_default_str();
    CLI::Option* seed_opt = simulate->add_option("--seed", so.seed, "RNG seed (default $GRAPHMAP_SEED or 1)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    }
    catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (build_graph->parsed()) {
            return cmd_build_graph(bg, out);
        }
        if (build_index->parsed()) {
            return cmd_build_index(bi, out);
        }
        if (map->parsed()) {
            return cmd_map(mo, out, err);
        }
        if (perf_cmd->parsed()) {
            po.overlap_set = overlap_opt->count() > 0;
            po.footprint = nodes_opt->count() > 0;
            return cmd_perf_report(po, out);
        }
        if (simulate->parsed()) {
            if (seed_opt->count() == 0) {
                so.seed = default_seed();
            }
            return cmd_simulate(so, out);
        }
    }
    catch (const Error& e) {
        err << "error: " << error_code_name(e.code()) << ": " << e.what() << '\n';
        return exit_code_for(e.code());
    }
    catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    }
    return kUsage;
}

} // namespace graphmap::cli
