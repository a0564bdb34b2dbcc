#ifndef graphmap_oracle_hpp
#define graphmap_oracle_hpp

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "graphmap/cigar.hpp"
#include "graphmap/dna.hpp"
#include "graphmap/graph.hpp"
#include "graphmap/index.hpp"
#include "graphmap/subgraph.hpp"

// Plain reference implementations used to check the fast paths. Nothing here
// shares code with the bitvector kernel or the single-pass minimizer scan.
namespace graphmap::oracle {

struct DpAlignment {
    uint32_t distance = 0;
    Cigar cigar;
    std::vector<uint32_t> positions;  // subgraph positions consumed by M, X, D
};

/*
 * Edit distance DP over the subgraph: cell (i, j) is the cheapest alignment of
 * the first j read bases to a path ending at position i. Leading and trailing
 * graph characters are free; the read is aligned end to end.
 */
DpAlignment dag_edit_distance(const Subgraph& subgraph, std::span<const Base> pattern);

enum class S2sMode { SemiGlobal, Global };

// Textbook Levenshtein DP. SemiGlobal leaves text ends free (approximate
// string matching); Global aligns both sequences end to end.
uint32_t s2s_edit_distance(std::span<const Base> text, std::span<const Base> pattern,
                           S2sMode mode = S2sMode::SemiGlobal);

// Nested-loop minimizer definition; same tie rule as find_minimizers().
std::vector<Minimizer> naive_minimizers(std::span<const Base> seq, const MinimizerParams& params);

struct ReplayResult {
    bool ok = false;
    uint64_t edits = 0;
    std::string message;
};

// Replays the CIGAR along the subgraph positions and checks that every step
// follows a hop, matches are matches and mismatches are not.
ReplayResult replay_cigar(const Subgraph& subgraph, std::span<const uint32_t> positions,
                          std::span<const Base> read, const Cigar& cigar);

// Same check against the full graph using (node_id, offset) coordinates.
ReplayResult replay_cigar(const GenomeGraph& graph, std::span<const GlobalOffset> path,
                          std::span<const Base> read, const Cigar& cigar);

} // namespace graphmap::oracle

#endif
