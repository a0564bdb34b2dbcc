#include "graphmap/minseed.hpp"

#include <algorithm>
#include <cmath>

#include "graphmap/error.hpp"

namespace graphmap {

uint64_t edit_budget(double error_rate, uint64_t read_length) {
    if (!(error_rate >= 0.0 && error_rate < 1.0)) {
        throw Error(ErrorCode::Config, "error rate must lie in [0, 1)");
    }
    // tolerance keeps exact products such as 0.1 * 20 from rounding up to 3
    return static_cast<uint64_t>(std::ceil(error_rate * static_cast<double>(read_length) - 1e-9));
}

SeedingResult seed_read(std::string_view read, const MinimizerIndex& index, const GenomeGraph& graph,
                        FrequencyThreshold threshold) {
    std::vector<Base> codes = encode_sequence(read);
    return seed_read(codes, index, graph, threshold);
}

SeedingResult seed_read(std::span<const Base> read, const MinimizerIndex& index, const GenomeGraph& graph,
                        FrequencyThreshold threshold) {
    SeedingResult result;
    const uint32_t k = index.params().k;
    for (const Minimizer& mz : find_minimizers(read, index.params())) {
        ++result.stats.minimizers;
        LookupResult found = index.lookup(mz.hash);
        if (found.count > threshold.max_occurrences) {
            ++result.stats.filtered;
            continue;
        }
        for (const SeedLocation& loc : found.locations) {
            GlobalOffset pos = linear_pos_of(graph, loc.node_id, loc.offset);
            result.hits.push_back({mz, loc.node_id, loc.offset, pos.linear_pos, pos.linear_pos + k - 1});
        }
    }
    result.stats.seeds = result.hits.size();
    return result;
}

SeedRegion compute_region(const SeedHit& hit, uint64_t read_length, double error_rate, uint64_t reference_length) {
    if (reference_length == 0) {
        throw Error(ErrorCode::EmptyRegion, "reference is empty");
    }
    const int64_t pad = static_cast<int64_t>(edit_budget(error_rate, read_length));
    const int64_t a = hit.minimizer.start;
    const int64_t b = hit.minimizer.end;
    const int64_t m = static_cast<int64_t>(read_length);
    int64_t x = static_cast<int64_t>(hit.ref_start) - a - pad;
    int64_t y = static_cast<int64_t>(hit.ref_end) + (m - 1 - b) + pad;
    x = std::max<int64_t>(x, 0);
    y = std::min<int64_t>(y, static_cast<int64_t>(reference_length) - 1);
    return {static_cast<uint64_t>(x), static_cast<uint64_t>(y)};
}

Subgraph extract_subgraph(const GenomeGraph& graph, SeedRegion region, uint32_t hop_limit) {
    if (region.x > region.y || region.y >= graph.char_count()) {
        throw Error(ErrorCode::EmptyRegion, "seed region [" + std::to_string(region.x) + ", " +
                                                std::to_string(region.y) + "] is empty or out of range");
    }
    const uint64_t n = region.y - region.x + 1;
    std::vector<SubgraphPosition> positions;
    std::vector<std::vector<uint32_t>> successors(n);
    positions.reserve(n);
    uint64_t dropped = 0;

    GlobalOffset at = position_at(graph, region.x);
    NodeId node = at.node_id;
    uint64_t offset = at.offset;
    for (uint64_t i = 0; i < n; ++i) {
        const NodeRecord& rec = graph.node(node);
        uint64_t linear = region.x + i;
        positions.push_back({graph.base_at(linear), node, static_cast<uint32_t>(offset), linear});
        if (offset + 1 < rec.seq_len) {
            if (i + 1 < n) {
                successors[i].push_back(static_cast<uint32_t>(i + 1));
            }
            ++offset;
            continue;
        }
        for (NodeId v : graph.out_edges(node)) {
            uint64_t target = graph.node(v).char_start;
            if (target <= linear) {
                throw Error(ErrorCode::Config, "graph is not topologically sorted");
            }
            if (target > region.y) {
                continue;
            }
            uint64_t distance = target - linear;
            if (distance > hop_limit) {
                ++dropped;
                continue;
            }
            successors[i].push_back(static_cast<uint32_t>(target - region.x));
        }
        ++node;
        offset = 0;
    }
    return Subgraph(std::move(positions), std::move(successors), hop_limit, dropped);
}

std::vector<SeedRegion> unique_regions(const std::vector<SeedHit>& hits, uint64_t read_length, double error_rate,
                                       uint64_t reference_length) {
    std::vector<SeedRegion> regions;
    regions.reserve(hits.size());
    for (const SeedHit& hit : hits) {
        regions.push_back(compute_region(hit, read_length, error_rate, reference_length));
    }
    std::sort(regions.begin(), regions.end());
    regions.erase(std::unique(regions.begin(), regions.end()), regions.end());
    return regions;
}

} // namespace graphmap
