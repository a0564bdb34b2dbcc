#ifndef graphmap_perfmodel_hpp
#define graphmap_perfmodel_hpp

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace graphmap::perf {

struct AcceleratorConfig {
    uint32_t pe_count = 64;
    uint32_t bits_per_pe = 128;
    double clock_ghz = 1.0;
    uint32_t window = 128;
    uint32_t overlap = 48;
    uint32_t hop_limit = 12;
    uint32_t hop_queue_depth = 12;
    uint32_t accelerators_per_stack = 8;
    uint32_t stacks = 4;

    // Throws Error(Config) unless every field is positive, O < W and W <= bits_per_pe.
    void validate() const;
};

// Cycles per window execution, keyed by window width. The two defaults are
// measured values for the 64-bit and 128-bit designs; the model does not
// derive them.
struct CycleCalibration {
    std::map<uint32_t, uint64_t> cycles_per_window{{64, 169}, {128, 272}};

    uint64_t cycles_for(uint32_t window) const;
};

uint64_t window_count(uint64_t read_length, uint32_t window, uint32_t overlap);
uint64_t total_cycles(uint64_t read_length, const AcceleratorConfig& cfg, const CycleCalibration& calib = {});

struct ScratchpadEntry {
    std::string name;
    uint64_t bytes = 0;        // provisioned capacity
    uint64_t required_bytes = 0; // capacity the stated contents need
    std::string basis;
};

/*
 * Storage sizing. The MinSeed scratchpads (read, minimizer, seed) and the
 * BitAlign input scratchpad are provisioned constants; the required bytes
 * shown next to them are what the sizing rule asks for:
 *   read       2 reads x 10,000 bases x 2 bits
 *   minimizer  2 reads x 2,050 minimizers x 10 B
 *   seed       2 minimizers x 242 locations x 8 B
 * Bitvector scratchpads and hop queues scale with the PE configuration.
 */
struct ScratchpadReport {
    std::vector<ScratchpadEntry> entries;
    uint64_t bitvector_bytes_per_pe = 0;
    uint64_t bitvector_bytes_total = 0;
    uint64_t hop_queue_bytes_per_pe = 0;
    uint64_t hop_queue_bytes_total = 0;
    uint64_t pe_write_bytes_per_cycle = 0;

    const ScratchpadEntry& entry(const std::string& name) const;
};

ScratchpadReport scratchpad_report(const AcceleratorConfig& cfg);

struct GraphStats {
    uint64_t nodes = 0;
    uint64_t edges = 0;
    uint64_t chars = 0;
};

struct IndexStatsInput {
    uint32_t bucket_bits = 24;
    uint64_t minimizers = 0;
    uint64_t locations = 0;
};

struct FootprintReport {
    uint64_t graph_bytes = 0;  // includes the file header
    uint64_t index_bytes = 0;  // includes the file header
    uint64_t graph_table_bytes = 0;
    uint64_t index_table_bytes = 0;
};

FootprintReport footprint_report(const GraphStats& graph, const IndexStatsInput& index);

struct PerfReport {
    AcceleratorConfig config;
    uint64_t read_length = 0;
    uint64_t windows = 0;
    uint64_t cycles_per_window = 0;
    uint64_t total_cycles = 0;
    double time_us = 0.0;
    // clock / total_cycles x accelerators; ignores memory and seeding, not validated
    double reads_per_second_bound = 0.0;
    ScratchpadReport scratchpads;
};

PerfReport perf_report(uint64_t read_length, const AcceleratorConfig& cfg, const CycleCalibration& calib = {});

std::string format_text(const PerfReport& report);
std::string format_key_values(const PerfReport& report);

} // namespace graphmap::perf

#endif
