#ifndef graphmap_simulate_hpp
#define graphmap_simulate_hpp

#include <cstdint>
#include <random>
#include <vector>

#include "graphmap/dna.hpp"
#include "graphmap/graph.hpp"

namespace graphmap::sim {

using Rng = std::mt19937_64;

struct GraphParams {
    uint64_t backbone_length = 100000;
    double variant_rate = 0.001;  // per backbone base
    uint32_t max_node_length = 64;
    uint32_t max_indel = 8;
};

struct SimulatedGraph {
    GenomeGraph graph;
    std::vector<Base> backbone;
};

/*
 * Random backbone with SNP, insertion and deletion bubbles. Node IDs are
 * assigned in creation order, which is already topological. Bubble skip
 * edges span at most max_indel + 1 characters.
 */
SimulatedGraph random_graph(const GraphParams& params, Rng& rng);

struct SampledRead {
    std::vector<Base> bases;
    std::vector<GlobalOffset> path;
};

// Error-free read spelled by a random walk starting at a random character.
// Throws Error(Config) if no walk of that length is found.
SampledRead sample_read(const GenomeGraph& graph, uint64_t length, Rng& rng);

struct PlantedEdits {
    std::vector<Base> bases;
    uint64_t edits = 0;  // upper bound on the edit distance to the original
};

// Applies round(rate * m) substitutions, insertions and deletions at
// distinct read positions.
PlantedEdits plant_edits(const std::vector<Base>& read, double rate, Rng& rng);

std::vector<Base> random_bases(uint64_t length, Rng& rng);

} // namespace graphmap::sim

#endif
