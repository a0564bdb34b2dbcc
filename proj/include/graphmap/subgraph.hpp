#ifndef graphmap_subgraph_hpp
#define graphmap_subgraph_hpp

#include <cstdint>
#include <span>
#include <vector>

#include "graphmap/dna.hpp"
#include "graphmap/graph.hpp"

namespace graphmap {

struct SubgraphPosition {
    Base base = 0;
    NodeId node_id = 0;
    uint32_t offset = 0;
    uint64_t linear_pos = 0;

    bool operator==(const SubgraphPosition& other) const = default;
};

/*
 * Linearized candidate region: characters in topological order, each with the
 * local indices of its successors (the HopBits relation in list form). Every
 * successor index is larger than its source and at most hop_limit away.
 */
class Subgraph {
public:
    Subgraph() = default;
    Subgraph(std::vector<SubgraphPosition> positions, std::vector<std::vector<uint32_t>> successors,
             uint32_t hop_limit, uint64_t dropped_hops = 0);

    // Positions carry node_id = index, offset = 0; hop limit is unbounded.
    static Subgraph from_bases(std::span<const Base> bases, std::vector<std::vector<uint32_t>> successors);
    static Subgraph chain(std::span<const Base> bases);

    size_t size() const noexcept { return positions_.size(); }
    bool empty() const noexcept { return positions_.empty(); }

    Base base(size_t i) const { return positions_[i].base; }
    const SubgraphPosition& position(size_t i) const { return positions_[i]; }
    const std::vector<SubgraphPosition>& positions() const noexcept { return positions_; }

    std::span<const uint32_t> successors(size_t i) const {
        return {succ_.data() + succ_start_[i], succ_start_[i + 1] - succ_start_[i]};
    }
    bool has_hop(size_t from, size_t to) const;

    std::vector<std::vector<uint32_t>> predecessors() const;

    uint32_t hop_limit() const noexcept { return hop_limit_; }
    uint64_t dropped_hops() const noexcept { return dropped_hops_; }

    // Row i of the HopBits matrix: bit (d-1) set when i hops to i+d.
    std::vector<bool> hop_bits(size_t i) const;

    // Sub-subgraph over the sorted positions in keep; hops leaving the kept
    // set are dropped without being counted.
    Subgraph induced(std::span<const uint32_t> keep) const;

private:
    std::vector<SubgraphPosition> positions_;
    std::vector<uint32_t> succ_start_{0};
    std::vector<uint32_t> succ_;
    uint32_t hop_limit_ = 0;
    uint64_t dropped_hops_ = 0;
};

} // namespace graphmap

#endif
