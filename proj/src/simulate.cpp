#include "graphmap/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "graphmap/error.hpp"

namespace graphmap::sim {

std::vector<Base> random_bases(uint64_t length, Rng& rng) {
    std::uniform_int_distribution<int> base(0, 3);
    std::vector<Base> out(length);
    for (Base& b : out) {
        b = static_cast<Base>(base(rng));
    }
    return out;
}

namespace {

class GraphBuilder {
public:
    NodeId add(std::vector<Base> seq) {
        NodeId id = static_cast<NodeId>(seqs_.size());
        seqs_.push_back(std::move(seq));
        edges_.emplace_back();
        for (NodeId from : frontier_) {
            edges_[from].push_back(id);
        }
        return id;
    }

    std::vector<NodeId>& frontier() { return frontier_; }

    GenomeGraph finish() const { return GenomeGraph::from_adjacency(seqs_, edges_); }

private:
    std::vector<std::vector<Base>> seqs_;
    std::vector<std::vector<NodeId>> edges_;
    std::vector<NodeId> frontier_;
};

} // namespace

SimulatedGraph random_graph(const GraphParams& params, Rng& rng) {
    if (params.max_node_length == 0 || params.max_indel == 0) {
        throw Error(ErrorCode::Config, "max_node_length and max_indel must be positive");
    }
    SimulatedGraph out;
    out.backbone = random_bases(params.backbone_length, rng);
    const std::vector<Base>& ref = out.backbone;

    GraphBuilder builder;
    std::vector<Base> current;
    std::bernoulli_distribution variant(params.variant_rate);
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_int_distribution<uint32_t> indel_len(1, params.max_indel);
    std::uniform_int_distribution<int> shift(1, 3);

    auto flush = [&] {
        if (current.empty()) {
            return;
        }
        NodeId id = builder.add(std::move(current));
        current.clear();
        builder.frontier() = {id};
    };

    uint64_t pos = 0;
    while (pos < ref.size()) {
        if (!current.empty() && variant(rng)) {
            flush();
            NodeId anchor = builder.frontier().front();
            switch (kind(rng)) {
            case 0: {  // SNP
                Base alt = static_cast<Base>((ref[pos] + shift(rng)) & 3);
                NodeId a = builder.add({ref[pos]});
                NodeId b = builder.add({alt});
                builder.frontier() = {a, b};
                ++pos;
                break;
            }
            case 1: {  // insertion, the backbone base at pos follows it
                NodeId ins = builder.add(random_bases(indel_len(rng), rng));
                builder.frontier() = {anchor, ins};
                break;
            }
            default: {  // deletion of backbone bases
                uint64_t len = std::min<uint64_t>(indel_len(rng), ref.size() - pos);
                NodeId del = builder.add(std::vector<Base>(ref.begin() + static_cast<ptrdiff_t>(pos),
                                                           ref.begin() + static_cast<ptrdiff_t>(pos + len)));
                builder.frontier() = {anchor, del};
                pos += len;
                break;
            }
            }
            continue;
        }
        current.push_back(ref[pos++]);
        if (current.size() == params.max_node_length) {
            flush();
        }
    }
    flush();
    out.graph = builder.finish();
    return out;
}

SampledRead sample_read(const GenomeGraph& graph, uint64_t length, Rng& rng) {
    if (length == 0 || graph.char_count() == 0) {
        throw Error(ErrorCode::Config, "cannot sample an empty read");
    }
    std::uniform_int_distribution<uint64_t> start_dist(0, graph.char_count() - 1);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        GlobalOffset at = position_at(graph, start_dist(rng));
        SampledRead read;
        read.bases.reserve(length);
        read.path.reserve(length);
        while (read.bases.size() < length) {
            read.path.push_back(at);
            read.bases.push_back(graph.base_at(at.linear_pos));
            const NodeRecord& rec = graph.node(at.node_id);
            if (at.offset + 1 < rec.seq_len) {
                ++at.offset;
                ++at.linear_pos;
                continue;
            }
            std::span<const NodeId> next = graph.out_edges(at.node_id);
            if (next.empty()) {
                break;
            }
            std::uniform_int_distribution<size_t> pick(0, next.size() - 1);
            NodeId to = next[pick(rng)];
            at = GlobalOffset{to, 0, graph.node(to).char_start};
        }
        if (read.bases.size() == length) {
            return read;
        }
    }
    throw Error(ErrorCode::Config, "no walk of length " + std::to_string(length) + " found");
}

PlantedEdits plant_edits(const std::vector<Base>& read, double rate, Rng& rng) {
    PlantedEdits out;
    const size_t m = read.size();
    size_t count = std::min<size_t>(m, static_cast<size_t>(std::llround(rate * static_cast<double>(m))));
    std::vector<size_t> order(m);
    for (size_t i = 0; i < m; ++i) {
        order[i] = i;
    }
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<uint8_t> kind_at(m, 0);  // 0 keep, 1 substitute, 2 insert before, 3 delete
    std::uniform_int_distribution<int> kind(1, 3);
    for (size_t i = 0; i < count; ++i) {
        kind_at[order[i]] = static_cast<uint8_t>(kind(rng));
    }
    std::uniform_int_distribution<int> shift(1, 3);
    std::uniform_int_distribution<int> base(0, 3);
    for (size_t i = 0; i < m; ++i) {
        switch (kind_at[i]) {
        case 1:
            out.bases.push_back(static_cast<Base>((read[i] + shift(rng)) & 3));
            break;
        case 2:
            out.bases.push_back(static_cast<Base>(base(rng)));
            out.bases.push_back(read[i]);
            break;
        case 3:
            break;
        default:
            out.bases.push_back(read[i]);
        }
    }
    out.edits = count;
    return out;
}

} // namespace graphmap::sim
