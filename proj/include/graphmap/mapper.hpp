#ifndef graphmap_mapper_hpp
#define graphmap_mapper_hpp

#include <cstdint>
#include <span>

#include "graphmap/bitalign.hpp"
#include "graphmap/graph.hpp"
#include "graphmap/index.hpp"
#include "graphmap/minseed.hpp"

namespace graphmap {

struct MapParams {
    double error_rate = 0.1;
    uint32_t hop_limit = kDefaultHopLimit;
    WindowConfig window;
    double freq_fraction = 0.0002;
};

struct MappingOutcome {
    bool mapped = false;
    AlignmentResult alignment;
    SeedRegion region;
    SeedStats seed_stats;
    uint64_t regions = 0;
    uint64_t dropped_hops = 0;
};

/*
 * End-to-end mapping of one read: seed, derive unique regions, align the read
 * against each region's subgraph and keep the smallest distance (smallest
 * reference start on ties). The graph must be topologically sorted.
 */
class Mapper {
public:
    Mapper(const GenomeGraph& graph, const MinimizerIndex& index, MapParams params);

    MappingOutcome map(std::span<const Base> read) const;

    FrequencyThreshold threshold() const noexcept { return threshold_; }
    const MapParams& params() const noexcept { return params_; }

private:
    const GenomeGraph& graph_;
    const MinimizerIndex& index_;
    MapParams params_;
    FrequencyThreshold threshold_;
};

MappingOutcome map_read(std::span<const Base> read, const GenomeGraph& graph, const MinimizerIndex& index,
                        const MapParams& params = {});

} // namespace graphmap

#endif
