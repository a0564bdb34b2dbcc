#include "graphmap/subgraph.hpp"

#include <algorithm>
#include <limits>

#include "graphmap/error.hpp"

namespace graphmap {

Subgraph::Subgraph(std::vector<SubgraphPosition> positions, std::vector<std::vector<uint32_t>> successors,
                   uint32_t hop_limit, uint64_t dropped_hops)
    : positions_(std::move(positions)), hop_limit_(hop_limit), dropped_hops_(dropped_hops) {
    if (successors.size() != positions_.size()) {
        throw Error(ErrorCode::Config, "successor lists do not match subgraph positions");
    }
    succ_start_.reserve(positions_.size() + 1);
    for (size_t i = 0; i < successors.size(); ++i) {
        auto& list = successors[i];
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        for (uint32_t j : list) {
            if (j <= i || j >= positions_.size()) {
                throw Error(ErrorCode::Config, "subgraph successor " + std::to_string(j) + " of position " +
                                                   std::to_string(i) + " breaks topological order");
            }
            if (j - i > hop_limit_) {
                throw Error(ErrorCode::Config, "subgraph hop exceeds the hop limit");
            }
        }
        succ_.insert(succ_.end(), list.begin(), list.end());
        succ_start_.push_back(static_cast<uint32_t>(succ_.size()));
    }
}

Subgraph Subgraph::from_bases(std::span<const Base> bases, std::vector<std::vector<uint32_t>> successors) {
    std::vector<SubgraphPosition> positions(bases.size());
    for (size_t i = 0; i < bases.size(); ++i) {
        positions[i] = {bases[i], static_cast<NodeId>(i), 0, i};
    }
    return Subgraph(std::move(positions), std::move(successors), std::numeric_limits<uint32_t>::max());
}

Subgraph Subgraph::chain(std::span<const Base> bases) {
    std::vector<std::vector<uint32_t>> successors(bases.size());
    for (size_t i = 0; i + 1 < bases.size(); ++i) {
        successors[i].push_back(static_cast<uint32_t>(i + 1));
    }
    return from_bases(bases, std::move(successors));
}

bool Subgraph::has_hop(size_t from, size_t to) const {
    auto succ = successors(from);
    return std::binary_search(succ.begin(), succ.end(), static_cast<uint32_t>(to));
}

std::vector<std::vector<uint32_t>> Subgraph::predecessors() const {
    std::vector<std::vector<uint32_t>> preds(size());
    for (uint32_t i = 0; i < size(); ++i) {
        for (uint32_t j : successors(i)) {
            preds[j].push_back(i);
        }
    }
    return preds;
}

std::vector<bool> Subgraph::hop_bits(size_t i) const {
    size_t width = std::min<size_t>(hop_limit_, size());
    std::vector<bool> bits(width, false);
    for (uint32_t j : successors(i)) {
        bits[j - i - 1] = true;
    }
    return bits;
}

Subgraph Subgraph::induced(std::span<const uint32_t> keep) const {
    std::vector<uint32_t> local(size(), std::numeric_limits<uint32_t>::max());
    for (uint32_t i = 0; i < keep.size(); ++i) {
        local[keep[i]] = i;
    }
    std::vector<SubgraphPosition> positions;
    std::vector<std::vector<uint32_t>> successors(keep.size());
    positions.reserve(keep.size());
    for (uint32_t i = 0; i < keep.size(); ++i) {
        positions.push_back(positions_[keep[i]]);
        for (uint32_t j : this->successors(keep[i])) {
            if (local[j] != std::numeric_limits<uint32_t>::max()) {
                successors[i].push_back(local[j]);
            }
        }
    }
    return Subgraph(std::move(positions), std::move(successors), hop_limit_);
}

} // namespace graphmap
