#include "graphmap/graph.hpp"

#include <algorithm>
#include <queue>

#include "byte_io.hpp"
#include "graphmap/error.hpp"

namespace graphmap {

namespace {

constexpr uint8_t kGraphMagic[4] = {'G', 'M', 'G', 'G'};

} // namespace

GenomeGraph GenomeGraph::from_adjacency(const std::vector<std::vector<Base>>& sequences,
                                        const std::vector<std::vector<NodeId>>& out_edges) {
    if (sequences.size() != out_edges.size()) {
        throw Error(ErrorCode::Config, "sequence and adjacency lists differ in length");
    }
    GenomeGraph g;
    g.nodes_.resize(sequences.size());
    for (size_t id = 0; id < sequences.size(); ++id) {
        if (sequences[id].empty()) {
            throw Error(ErrorCode::Parse, "node " + std::to_string(id) + " has an empty sequence");
        }
        std::vector<NodeId> dests = out_edges[id];
        std::sort(dests.begin(), dests.end());
        dests.erase(std::unique(dests.begin(), dests.end()), dests.end());
        for (NodeId v : dests) {
            if (v >= sequences.size()) {
                throw Error(ErrorCode::Reference, "edge from node " + std::to_string(id) +
                                                      " to unknown node " + std::to_string(v));
            }
        }
        NodeRecord& rec = g.nodes_[id];
        rec.seq_len = sequences[id].size();
        rec.char_start = g.chars_.size();
        rec.out_edge_count = dests.size();
        rec.edge_start = g.edges_.size();
        g.chars_.append(sequences[id]);
        g.edges_.insert(g.edges_.end(), dests.begin(), dests.end());
    }
    return g;
}

std::vector<Base> GenomeGraph::node_sequence(NodeId id) const {
    const NodeRecord& rec = nodes_.at(id);
    return chars_.extract(rec.char_start, rec.seq_len);
}

std::string GenomeGraph::node_string(NodeId id) const {
    return decode_sequence(node_sequence(id));
}

bool GenomeGraph::is_topologically_sorted() const {
    for (NodeId u = 0; u < nodes_.size(); ++u) {
        for (NodeId v : out_edges(u)) {
            if (v <= u) {
                return false;
            }
        }
    }
    return true;
}

void GenomeGraph::validate() const {
    uint64_t next_char = 0;
    uint64_t next_edge = 0;
    for (size_t id = 0; id < nodes_.size(); ++id) {
        const NodeRecord& rec = nodes_[id];
        if (rec.seq_len == 0) {
            throw Error(ErrorCode::Format, "node " + std::to_string(id) + " has zero length");
        }
        if (rec.char_start != next_char || rec.edge_start != next_edge) {
            throw Error(ErrorCode::Format, "node " + std::to_string(id) + " tables are not contiguous");
        }
        next_char += rec.seq_len;
        next_edge += rec.out_edge_count;
        if (next_char > chars_.size() || next_edge > edges_.size()) {
            throw Error(ErrorCode::Format, "node " + std::to_string(id) + " exceeds table bounds");
        }
    }
    if (next_char != chars_.size() || next_edge != edges_.size()) {
        throw Error(ErrorCode::Format, "table lengths disagree with node records");
    }
    for (NodeId v : edges_) {
        if (v >= nodes_.size()) {
            throw Error(ErrorCode::Format, "edge destination " + std::to_string(v) + " out of range");
        }
    }
}

SortedGraph topo_sort(const GenomeGraph& graph) {
    const size_t n = graph.node_count();
    std::vector<uint32_t> in_degree(n, 0);
    for (NodeId v : graph.edges()) {
        ++in_degree[v];
    }

    std::priority_queue<NodeId, std::vector<NodeId>, std::greater<NodeId>> ready;
    for (NodeId u = 0; u < n; ++u) {
        if (in_degree[u] == 0) {
            ready.push(u);
        }
    }

    std::vector<NodeId> order;
    order.reserve(n);
    while (!ready.empty()) {
        NodeId u = ready.top();
        ready.pop();
        order.push_back(u);
        for (NodeId v : graph.out_edges(u)) {
            if (--in_degree[v] == 0) {
                ready.push(v);
            }
        }
    }

    if (order.size() != n) {
        // every unsorted node keeps an unsorted predecessor, so walking
        // predecessors inside the residue must revisit a node on a cycle
        std::vector<bool> done(n, false);
        for (NodeId u : order) {
            done[u] = true;
        }
        std::vector<NodeId> residue_pred(n, 0);
        for (NodeId u = 0; u < n; ++u) {
            if (done[u]) {
                continue;
            }
            for (NodeId v : graph.out_edges(u)) {
                residue_pred[v] = u;
            }
        }
        NodeId cur = 0;
        while (done[cur]) {
            ++cur;
        }
        std::vector<bool> seen(n, false);
        while (!seen[cur]) {
            seen[cur] = true;
            cur = residue_pred[cur];
        }
        throw Error(ErrorCode::Cycle, "graph contains a cycle through node " + std::to_string(cur));
    }

    SortedGraph result;
    result.old_to_new.assign(n, 0);
    for (NodeId new_id = 0; new_id < n; ++new_id) {
        result.old_to_new[order[new_id]] = new_id;
    }

    std::vector<std::vector<Base>> sequences(n);
    std::vector<std::vector<NodeId>> adjacency(n);
    for (NodeId old_id = 0; old_id < n; ++old_id) {
        NodeId new_id = result.old_to_new[old_id];
        sequences[new_id] = graph.node_sequence(old_id);
        for (NodeId v : graph.out_edges(old_id)) {
            adjacency[new_id].push_back(result.old_to_new[v]);
        }
    }
    result.graph = GenomeGraph::from_adjacency(sequences, adjacency);
    return result;
}

uint64_t serialized_graph_bytes(uint64_t nodes, uint64_t edges, uint64_t chars) {
    return GenomeGraph::kHeaderBytes + nodes * GenomeGraph::kNodeRecordBytes +
           edges * GenomeGraph::kEdgeEntryBytes + (chars + 3) / 4;
}

std::vector<uint8_t> serialize_graph(const GenomeGraph& graph) {
    detail::ByteWriter out(serialized_graph_bytes(graph.node_count(), graph.edge_count(),
                                                  graph.char_count()));
    out.put_bytes(kGraphMagic);
    out.put<uint32_t>(GenomeGraph::kFormatVersion);
    out.put<uint64_t>(graph.node_count());
    out.put<uint64_t>(graph.edge_count());
    out.put<uint64_t>(graph.char_count());
    for (const NodeRecord& rec : graph.nodes()) {
        out.put<uint64_t>(rec.seq_len);
        out.put<uint64_t>(rec.char_start);
        out.put<uint64_t>(rec.out_edge_count);
        out.put<uint64_t>(rec.edge_start);
    }
    for (NodeId v : graph.edges()) {
        out.put<uint32_t>(v);
    }
    out.put_bytes(graph.chars().bytes());
    return out.take();
}

GenomeGraph deserialize_graph(std::span<const uint8_t> bytes) {
    detail::ByteReader in(bytes, "graph");
    auto magic = in.get_bytes(4);
    if (!std::equal(magic.begin(), magic.end(), kGraphMagic)) {
        throw Error(ErrorCode::Format, "not a graph file (bad magic)");
    }
    if (in.get<uint32_t>() != GenomeGraph::kFormatVersion) {
        throw Error(ErrorCode::Format, "unsupported graph format version");
    }
    uint64_t nodes = in.get<uint64_t>();
    uint64_t edges = in.get<uint64_t>();
    uint64_t chars = in.get<uint64_t>();
    // guard against absurd counts before allocating
    if (nodes > in.remaining() / GenomeGraph::kNodeRecordBytes ||
        edges > in.remaining() / GenomeGraph::kEdgeEntryBytes || chars / 4 > in.remaining()) {
        throw Error(ErrorCode::Format, "truncated graph buffer");
    }
    in.require(nodes * GenomeGraph::kNodeRecordBytes + edges * GenomeGraph::kEdgeEntryBytes +
               (chars + 3) / 4);

    GenomeGraph g;
    g.nodes_.resize(nodes);
    for (NodeRecord& rec : g.nodes_) {
        rec.seq_len = in.get<uint64_t>();
        rec.char_start = in.get<uint64_t>();
        rec.out_edge_count = in.get<uint64_t>();
        rec.edge_start = in.get<uint64_t>();
    }
    g.edges_.resize(edges);
    for (NodeId& v : g.edges_) {
        v = in.get<uint32_t>();
    }
    auto packed = in.get_bytes((chars + 3) / 4);
    g.chars_ = PackedSequence::from_bytes({packed.begin(), packed.end()}, chars);
    if (in.remaining() != 0) {
        throw Error(ErrorCode::Format, "trailing bytes after graph tables");
    }
    g.validate();
    return g;
}

GlobalOffset linear_pos_of(const GenomeGraph& graph, NodeId node_id, uint64_t offset) {
    if (node_id >= graph.node_count() || offset >= graph.node(node_id).seq_len) {
        throw Error(ErrorCode::Bounds, "position " + std::to_string(node_id) + ":" +
                                           std::to_string(offset) + " is outside the graph");
    }
    return {node_id, offset, graph.node(node_id).char_start + offset};
}

GlobalOffset position_at(const GenomeGraph& graph, uint64_t linear_pos) {
    if (linear_pos >= graph.char_count()) {
        throw Error(ErrorCode::Bounds, "linear position " + std::to_string(linear_pos) +
                                           " is outside the graph");
    }
    const auto& nodes = graph.nodes();
    auto it = std::upper_bound(nodes.begin(), nodes.end(), linear_pos,
                               [](uint64_t pos, const NodeRecord& rec) { return pos < rec.char_start; });
    NodeId id = static_cast<NodeId>(std::distance(nodes.begin(), it) - 1);
    return {id, linear_pos - nodes[id].char_start, linear_pos};
}

} // namespace graphmap
