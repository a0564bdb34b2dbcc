#ifndef graphmap_graph_hpp
#define graphmap_graph_hpp

#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "graphmap/dna.hpp"

namespace graphmap {

using NodeId = uint32_t;

/*
 * One row of the node table. Serialized as four little-endian u64 fields,
 * 32 bytes per record.
 */
struct NodeRecord {
    uint64_t seq_len = 0;
    uint64_t char_start = 0;
    uint64_t out_edge_count = 0;
    uint64_t edge_start = 0;

    bool operator==(const NodeRecord& other) const = default;
};

struct GlobalOffset {
    NodeId node_id = 0;
    uint64_t offset = 0;
    uint64_t linear_pos = 0;

    bool operator==(const GlobalOffset& other) const = default;
};

/*
 * Graph-based reference stored as node, character and edge tables. The
 * character table is laid out in node-ID order, so a node's char_start is
 * also the linear position of its first base.
 */
class GenomeGraph {
public:
    static constexpr size_t kNodeRecordBytes = 32;
    static constexpr size_t kEdgeEntryBytes = 4;
    static constexpr size_t kHeaderBytes = 32;
    static constexpr uint32_t kFormatVersion = 1;

    GenomeGraph() = default;

    // Builds the tables from per-node sequences and adjacency lists. Edges of
    // each node are de-duplicated and sorted by destination.
    static GenomeGraph from_adjacency(const std::vector<std::vector<Base>>& sequences,
                                      const std::vector<std::vector<NodeId>>& out_edges);

    size_t node_count() const noexcept { return nodes_.size(); }
    size_t edge_count() const noexcept { return edges_.size(); }
    size_t char_count() const noexcept { return chars_.size(); }

    const NodeRecord& node(NodeId id) const { return nodes_[id]; }
    const std::vector<NodeRecord>& nodes() const noexcept { return nodes_; }
    const std::vector<NodeId>& edges() const noexcept { return edges_; }
    const PackedSequence& chars() const noexcept { return chars_; }

    std::span<const NodeId> out_edges(NodeId id) const {
        const NodeRecord& rec = nodes_[id];
        return {edges_.data() + rec.edge_start, static_cast<size_t>(rec.out_edge_count)};
    }

    Base base_at(uint64_t linear_pos) const { return chars_[linear_pos]; }
    std::vector<Base> node_sequence(NodeId id) const;
    std::string node_string(NodeId id) const;

    bool is_topologically_sorted() const;

    // Throws Error(Format) if any table invariant is violated.
    void validate() const;

    bool operator==(const GenomeGraph& other) const = default;

private:
    std::vector<NodeRecord> nodes_;
    PackedSequence chars_;
    std::vector<NodeId> edges_;

    friend GenomeGraph deserialize_graph(std::span<const uint8_t> bytes);
};

/*
 * A parsed GFA keeps the segment names next to the graph; node IDs are dense
 * and follow segment declaration order.
 */
struct ParsedGfa {
    GenomeGraph graph;
    std::vector<std::string> segment_names;
};

ParsedGfa parse_gfa(std::istream& in);
ParsedGfa parse_gfa_string(const std::string& text);

std::string write_gfa(const GenomeGraph& graph);

struct SortedGraph {
    GenomeGraph graph;
    std::vector<NodeId> old_to_new;
};

// Kahn's algorithm, smallest available ID first, so a sorted input maps to
// the identity remap. Throws Error(Cycle) naming a node on a cycle.
SortedGraph topo_sort(const GenomeGraph& graph);

std::vector<uint8_t> serialize_graph(const GenomeGraph& graph);
GenomeGraph deserialize_graph(std::span<const uint8_t> bytes);

// Header plus the three tables, matching serialize_graph() exactly.
uint64_t serialized_graph_bytes(uint64_t nodes, uint64_t edges, uint64_t chars);

GlobalOffset linear_pos_of(const GenomeGraph& graph, NodeId node_id, uint64_t offset);
GlobalOffset position_at(const GenomeGraph& graph, uint64_t linear_pos);

} // namespace graphmap

#endif
