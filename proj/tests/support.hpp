#ifndef graphmap_tests_support_hpp
#define graphmap_tests_support_hpp

#include <random>
#include <string>
#include <vector>

#include "graphmap/bitalign.hpp"
#include "graphmap/graph.hpp"
#include "graphmap/oracle.hpp"
#include "graphmap/simulate.hpp"
#include "graphmap/subgraph.hpp"

namespace graphmap::testing {

using Rng = std::mt19937_64;

inline std::vector<Base> random_bases(size_t n, Rng& rng) { return sim::random_bases(n, rng); }

inline std::vector<Base> bases(const std::string& s) { return encode_sequence(s); }

// Random DAG over n characters: each position gets up to max_out successors
// within max_hop positions. Positions without successors are allowed.
inline Subgraph random_dag(size_t n, Rng& rng, uint32_t max_out = 3, uint32_t max_hop = 6) {
    std::vector<Base> b = random_bases(n, rng);
    std::vector<std::vector<uint32_t>> succ(n);
    std::uniform_int_distribution<uint32_t> out(0, max_out);
    std::uniform_int_distribution<uint32_t> hop(1, max_hop);
    for (size_t i = 0; i < n; ++i) {
        uint32_t count = out(rng);
        if (i + 1 < n && count == 0 && rng() % 4 != 0) {
            count = 1;  // keep most positions connected
        }
        for (uint32_t c = 0; c < count; ++c) {
            uint64_t j = i + hop(rng);
            if (j < n) {
                succ[i].push_back(static_cast<uint32_t>(j));
            }
        }
    }
    return Subgraph::from_bases(b, std::move(succ));
}

// Random topologically sorted genome graph.
inline GenomeGraph random_graph(size_t nodes, Rng& rng, uint32_t max_len = 8, double edge_prob = 0.3,
                                uint32_t max_span = 4) {
    std::uniform_int_distribution<uint32_t> len(1, max_len);
    std::uniform_int_distribution<uint32_t> span(1, max_span);
    std::bernoulli_distribution extra(edge_prob);
    std::vector<std::vector<Base>> seqs(nodes);
    std::vector<std::vector<NodeId>> edges(nodes);
    for (size_t u = 0; u < nodes; ++u) {
        seqs[u] = random_bases(len(rng), rng);
        if (u + 1 < nodes) {
            edges[u].push_back(static_cast<NodeId>(u + 1));
        }
        while (extra(rng)) {
            size_t v = u + span(rng);
            if (v < nodes) {
                edges[u].push_back(static_cast<NodeId>(v));
            }
        }
    }
    return GenomeGraph::from_adjacency(seqs, edges);
}

// CIGAR soundness: the CIGAR replays along the local positions and along the
// graph path (when present) with exactly edit_distance edits.
inline std::string alignment_problem(const AlignmentResult& aln, const Subgraph& sub, std::span<const Base> read,
                                     const GenomeGraph* graph = nullptr) {
    if (!aln.aligned) {
        return "";
    }
    if (aln.cigar.edit_count() != aln.edit_distance) {
        return "cigar edit count " + std::to_string(aln.cigar.edit_count()) + " != distance " +
               std::to_string(aln.edit_distance);
    }
    oracle::ReplayResult local = oracle::replay_cigar(sub, aln.positions, read, aln.cigar);
    if (!local.ok) {
        return "local replay: " + local.message;
    }
    if (local.edits != aln.edit_distance) {
        return "local replay edits differ";
    }
    if (graph != nullptr) {
        oracle::ReplayResult global = oracle::replay_cigar(*graph, aln.path, read, aln.cigar);
        if (!global.ok) {
            return "graph replay: " + global.message;
        }
        if (global.edits != aln.edit_distance) {
            return "graph replay edits differ";
        }
    }
    return "";
}

} // namespace graphmap::testing

#endif
