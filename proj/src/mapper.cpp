#include "graphmap/mapper.hpp"

#include "graphmap/error.hpp"

namespace graphmap {

Mapper::Mapper(const GenomeGraph& graph, const MinimizerIndex& index, MapParams params)
    : graph_(graph), index_(index), params_(params) {
    params_.window.validate();
    if (!graph_.is_topologically_sorted()) {
        throw Error(ErrorCode::Config, "graph must be topologically sorted before mapping");
    }
    threshold_ = index_.minimizers().empty() ? FrequencyThreshold{1}
                                             : compute_threshold(index_, params_.freq_fraction);
}

MappingOutcome Mapper::map(std::span<const Base> read) const {
    MappingOutcome best;
    SeedingResult seeds = seed_read(read, index_, graph_, threshold_);
    best.seed_stats = seeds.stats;
    if (seeds.hits.empty()) {
        return best;
    }
    std::vector<SeedRegion> regions =
        unique_regions(seeds.hits, read.size(), params_.error_rate, graph_.char_count());
    best.regions = regions.size();

    uint64_t best_start = 0;
    for (const SeedRegion& region : regions) {
        Subgraph sub = extract_subgraph(graph_, region, params_.hop_limit);
        AlignmentResult aln = align(read, sub, params_.error_rate, params_.window);
        if (!aln.aligned) {
            continue;
        }
        uint64_t start = aln.path.empty() ? region.x : aln.path.front().linear_pos;
        if (!best.mapped || aln.edit_distance < best.alignment.edit_distance ||
            (aln.edit_distance == best.alignment.edit_distance && start < best_start)) {
            best.mapped = true;
            best.alignment = std::move(aln);
            best.region = region;
            best.dropped_hops = sub.dropped_hops();
            best_start = start;
        }
    }
    return best;
}

MappingOutcome map_read(std::span<const Base> read, const GenomeGraph& graph, const MinimizerIndex& index,
                        const MapParams& params) {
    return Mapper(graph, index, params).map(read);
}

} // namespace graphmap
