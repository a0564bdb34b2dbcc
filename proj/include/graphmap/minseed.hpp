#ifndef graphmap_minseed_hpp
#define graphmap_minseed_hpp

#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

#include "graphmap/graph.hpp"
#include "graphmap/index.hpp"
#include "graphmap/subgraph.hpp"

namespace graphmap {

constexpr uint32_t kDefaultHopLimit = 12;

struct SeedHit {
    Minimizer minimizer;   // read positions a (start) and b (end)
    NodeId node_id = 0;
    uint32_t offset = 0;
    uint64_t ref_start = 0;  // c
    uint64_t ref_end = 0;    // d = c + k - 1

    bool operator==(const SeedHit& other) const = default;
};

struct SeedStats {
    uint64_t minimizers = 0;
    uint64_t filtered = 0;
    uint64_t seeds = 0;
};

struct SeedingResult {
    std::vector<SeedHit> hits;
    SeedStats stats;
};

struct SeedRegion {
    uint64_t x = 0;
    uint64_t y = 0;

    auto operator<=>(const SeedRegion& other) const = default;
};

// Maximum number of edits tolerated for a read of length m: ceil(E * m).
uint64_t edit_budget(double error_rate, uint64_t read_length);

/*
 * Minimizers of the read, minus those occurring more than threshold times in
 * the index, expanded into one hit per indexed location. The minimizer
 * parameters come from the index. Throws Error(Alphabet) on non-ACGT reads.
 */
SeedingResult seed_read(std::string_view read, const MinimizerIndex& index, const GenomeGraph& graph,
                        FrequencyThreshold threshold);
SeedingResult seed_read(std::span<const Base> read, const MinimizerIndex& index, const GenomeGraph& graph,
                        FrequencyThreshold threshold);

/*
 * Projects the read around the seed and pads both sides by ceil(E*m):
 *   x = max(0, c - a - ceil(E*m))
 *   y = min(L - 1, d + (m - 1 - b) + ceil(E*m))
 */
SeedRegion compute_region(const SeedHit& hit, uint64_t read_length, double error_rate, uint64_t reference_length);

// Characters with linear position in [x, y]; intra-node successions always,
// edge hops only when both ends are inside and the distance is within
// hop_limit (longer ones are counted as dropped).
Subgraph extract_subgraph(const GenomeGraph& graph, SeedRegion region, uint32_t hop_limit = kDefaultHopLimit);

// Unique regions of all hits, in ascending (x, y) order.
std::vector<SeedRegion> unique_regions(const std::vector<SeedHit>& hits, uint64_t read_length, double error_rate,
                                       uint64_t reference_length);

} // namespace graphmap

#endif
