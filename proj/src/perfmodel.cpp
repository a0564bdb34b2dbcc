#include "graphmap/perfmodel.hpp"

#include <iomanip>
#include <sstream>

#include "graphmap/bitalign.hpp"
#include "graphmap/error.hpp"
#include "graphmap/graph.hpp"
#include "graphmap/index.hpp"

namespace graphmap::perf {

namespace {

constexpr uint64_t kKiB = 1024;

// MinSeed workload assumptions behind the provisioned scratchpads
constexpr uint64_t kBufferedReads = 2;
constexpr uint64_t kMaxReadLength = 10000;
constexpr uint64_t kMaxMinimizersPerRead = 2050;
constexpr uint64_t kMinimizerEntryBytes = 10;
constexpr uint64_t kBufferedMinimizers = 2;
constexpr uint64_t kMaxLocationsPerMinimizer = 242;
constexpr uint64_t kSeedEntryBytes = 8;

} // namespace

void AcceleratorConfig::validate() const {
    if (pe_count == 0 || bits_per_pe == 0 || !(clock_ghz > 0.0) || window == 0 || hop_limit == 0 ||
        hop_queue_depth == 0 || accelerators_per_stack == 0 || stacks == 0) {
        throw Error(ErrorCode::Config, "accelerator parameters must be positive");
    }
    if (overlap >= window) {
        throw Error(ErrorCode::Config, "window overlap must be smaller than the window");
    }
    if (window > bits_per_pe) {
        throw Error(ErrorCode::Config, "window must not exceed the bits processed per PE");
    }
}

uint64_t CycleCalibration::cycles_for(uint32_t window) const {
    auto it = cycles_per_window.find(window);
    if (it == cycles_per_window.end()) {
        throw Error(ErrorCode::Config, "no cycle calibration for window width " + std::to_string(window));
    }
    return it->second;
}

uint64_t window_count(uint64_t read_length, uint32_t window, uint32_t overlap) {
    return graphmap::window_count(read_length, window, overlap);
}

uint64_t total_cycles(uint64_t read_length, const AcceleratorConfig& cfg, const CycleCalibration& calib) {
    return window_count(read_length, cfg.window, cfg.overlap) * calib.cycles_for(cfg.window);
}

const ScratchpadEntry& ScratchpadReport::entry(const std::string& name) const {
    for (const ScratchpadEntry& e : entries) {
        if (e.name == name) {
            return e;
        }
    }
    throw Error(ErrorCode::Config, "no scratchpad named " + name);
}

ScratchpadReport scratchpad_report(const AcceleratorConfig& cfg) {
    cfg.validate();
    ScratchpadReport r;
    const uint64_t bitvector_bytes = cfg.bits_per_pe / 8;

    r.entries.push_back({"read", 6 * kKiB, kBufferedReads * kMaxReadLength * 2 / 8,
                         "2 reads of 10 kbp at 2 bits per base"});
    r.entries.push_back({"minimizer", 40 * kKiB, kBufferedReads * kMaxMinimizersPerRead * kMinimizerEntryBytes,
                         "2 reads x 2050 minimizers x 10 B"});
    r.entries.push_back({"seed", 4 * kKiB, kBufferedMinimizers * kMaxLocationsPerMinimizer * kSeedEntryBytes,
                         "2 minimizers x 242 locations x 8 B"});
    r.entries.push_back({"input", 24 * kKiB, 24 * kKiB,
                         "linearized subgraph, HopBits and pattern bitmasks"});

    r.bitvector_bytes_per_pe = static_cast<uint64_t>(cfg.window) * bitvector_bytes;
    r.bitvector_bytes_total = r.bitvector_bytes_per_pe * cfg.pe_count;
    r.hop_queue_bytes_per_pe = static_cast<uint64_t>(cfg.hop_queue_depth) * bitvector_bytes;
    r.hop_queue_bytes_total = r.hop_queue_bytes_per_pe * cfg.pe_count;
    r.pe_write_bytes_per_cycle = bitvector_bytes;

    r.entries.push_back({"bitvector", r.bitvector_bytes_total, r.bitvector_bytes_total,
                         "PEs x window x bits per PE / 8"});
    r.entries.push_back({"hop_queue", r.hop_queue_bytes_total, r.hop_queue_bytes_total,
                         "PEs x hop queue depth x bits per PE / 8"});
    return r;
}

FootprintReport footprint_report(const GraphStats& graph, const IndexStatsInput& index) {
    FootprintReport r;
    r.graph_bytes = serialized_graph_bytes(graph.nodes, graph.edges, graph.chars);
    r.index_bytes = serialized_index_bytes(index.bucket_bits, index.minimizers, index.locations);
    r.graph_table_bytes = r.graph_bytes - GenomeGraph::kHeaderBytes;
    r.index_table_bytes = r.index_bytes - MinimizerIndex::kHeaderBytes;
    return r;
}

PerfReport perf_report(uint64_t read_length, const AcceleratorConfig& cfg, const CycleCalibration& calib) {
    cfg.validate();
    PerfReport r;
    r.config = cfg;
    r.read_length = read_length;
    r.windows = window_count(read_length, cfg.window, cfg.overlap);
    r.cycles_per_window = calib.cycles_for(cfg.window);
    r.total_cycles = r.windows * r.cycles_per_window;
    r.time_us = static_cast<double>(r.total_cycles) / (cfg.clock_ghz * 1e3);
    r.reads_per_second_bound = cfg.clock_ghz * 1e9 / static_cast<double>(r.total_cycles) *
                               cfg.accelerators_per_stack * cfg.stacks;
    r.scratchpads = scratchpad_report(cfg);
    return r;
}

std::string format_text(const PerfReport& r) {
    std::ostringstream out;
    out << "read length:          " << r.read_length << " bp\n"
        << "window / overlap:     " << r.config.window << " / " << r.config.overlap << '\n'
        << "windows:              " << r.windows << '\n'
        << "cycles per window:    " << r.cycles_per_window << '\n'
        << "total cycles:         " << r.total_cycles << '\n'
        << "time at " << r.config.clock_ghz << " GHz:       " << std::fixed << std::setprecision(3) << r.time_us
        << " us\n"
        << "reads/s upper bound:  " << std::setprecision(0) << r.reads_per_second_bound
        << " (not validated; " << r.config.accelerators_per_stack * r.config.stacks << " accelerators)\n"
        << "scratchpads:\n";
    for (const ScratchpadEntry& e : r.scratchpads.entries) {
        out << "  " << std::left << std::setw(10) << e.name << std::right << std::setw(8) << e.bytes << " B  ("
            << std::setprecision(2) << static_cast<double>(e.bytes) / 1024.0 << " KB; need " << e.required_bytes
            << " B: " << e.basis << ")\n";
    }
    out << "  per PE: bitvector " << r.scratchpads.bitvector_bytes_per_pe << " B, hop queue "
        << r.scratchpads.hop_queue_bytes_per_pe << " B, writes " << r.scratchpads.pe_write_bytes_per_cycle
        << " B/cycle\n";
    return out.str();
}

std::string format_key_values(const PerfReport& r) {
    std::ostringstream out;
    out << "read_length=" << r.read_length << '\n'
        << "window=" << r.config.window << '\n'
        << "overlap=" << r.config.overlap << '\n'
        << "pe_count=" << r.config.pe_count << '\n'
        << "bits_per_pe=" << r.config.bits_per_pe << '\n'
        << "windows=" << r.windows << '\n'
        << "cycles_per_window=" << r.cycles_per_window << '\n'
        << "total_cycles=" << r.total_cycles << '\n'
        << "time_us=" << std::fixed << std::setprecision(3) << r.time_us << '\n'
        << "reads_per_second_bound=" << std::setprecision(1) << r.reads_per_second_bound << '\n';
    for (const ScratchpadEntry& e : r.scratchpads.entries) {
        out << "scratchpad." << e.name << ".bytes=" << e.bytes << '\n';
        out << "scratchpad." << e.name << ".required_bytes=" << e.required_bytes << '\n';
    }
    out << "bitvector_bytes_per_pe=" << r.scratchpads.bitvector_bytes_per_pe << '\n'
        << "hop_queue_bytes_per_pe=" << r.scratchpads.hop_queue_bytes_per_pe << '\n'
        << "pe_write_bytes_per_cycle=" << r.scratchpads.pe_write_bytes_per_cycle << '\n';
    return out.str();
}

} // namespace graphmap::perf
