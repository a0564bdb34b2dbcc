#ifndef graphmap_index_hpp
#define graphmap_index_hpp

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "graphmap/dna.hpp"
#include "graphmap/graph.hpp"

namespace graphmap {

enum class ScoreMode : uint8_t { Hash = 0, Lexicographic = 1 };
enum class StrandMode : uint8_t { Forward = 0, Canonical = 1 };

constexpr uint32_t kMaxK = 31;

struct MinimizerParams {
    uint32_t w = 10;
    uint32_t k = 15;
    ScoreMode score = ScoreMode::Hash;
    StrandMode strand = StrandMode::Forward;

    // Throws Error(Config) for w or k of zero, Error(Unsupported) for k > 31.
    void validate() const;
};

// Invertible integer mix of a 2k-bit packed k-mer (bijection on [0, 4^k)).
uint64_t hash_kmer(uint64_t packed, uint32_t k);

// Packs bases MSB-first, so numeric order of packed values is lexicographic.
uint64_t pack_kmer(std::span<const Base> kmer);

uint64_t kmer_score(uint64_t packed, uint32_t k, ScoreMode mode);

struct Minimizer {
    uint64_t hash = 0;
    uint32_t k = 0;
    uint32_t start = 0;  // a
    uint32_t end = 0;    // b = a + k - 1

    bool operator==(const Minimizer& other) const = default;
};

/*
 * Window minimizers of seq in a single pass with a monotone queue. Each window
 * of w consecutive k-mers picks its minimum, the rightmost one on ties, and
 * consecutive duplicates are collapsed. A sequence with fewer than w k-mers is
 * treated as one partial window.
 */
std::vector<Minimizer> find_minimizers(std::span<const Base> seq, const MinimizerParams& params);

struct SeedLocation {
    NodeId node_id = 0;
    uint32_t offset = 0;

    auto operator<=>(const SeedLocation& other) const = default;
};

struct MinimizerEntry {
    uint64_t hash = 0;
    uint32_t loc_start = 0;
    uint32_t loc_count = 0;

    bool operator==(const MinimizerEntry& other) const = default;
};

struct BucketEntry {
    uint32_t start = 0;
    uint32_t count = 0;
};

struct IndexStats {
    uint64_t buckets = 0;
    uint64_t distinct_minimizers = 0;
    uint64_t total_locations = 0;
    uint64_t max_minimizers_per_bucket = 0;
    uint64_t max_locations_per_minimizer = 0;
};

struct LookupResult {
    uint32_t count = 0;
    std::span<const SeedLocation> locations;
};

struct FrequencyThreshold {
    uint32_t max_occurrences = 1;
};

/*
 * Three-level hash table: 2^B buckets addressed by the low B hash bits, a
 * minimizer level sorted by (bucket, hash), and a location level grouped by
 * minimizer and sorted by (node_id, offset) inside each group.
 */
class MinimizerIndex {
public:
    static constexpr size_t kBucketEntryBytes = 4;
    static constexpr size_t kMinimizerEntryBytes = 12;
    static constexpr size_t kLocationEntryBytes = 8;
    static constexpr size_t kHeaderBytes = 40;
    static constexpr uint32_t kFormatVersion = 1;
    static constexpr uint32_t kMaxBucketBits = 30;

    MinimizerIndex() = default;

    static MinimizerIndex build(const GenomeGraph& graph, const MinimizerParams& params, uint32_t bucket_bits);

    const MinimizerParams& params() const noexcept { return params_; }
    uint32_t bucket_bits() const noexcept { return bucket_bits_; }
    uint64_t bucket_count() const noexcept { return uint64_t{1} << bucket_bits_; }

    uint64_t bucket_of(uint64_t hash) const noexcept { return hash & (bucket_count() - 1); }
    BucketEntry bucket(uint64_t b) const {
        return {bucket_start_[b], bucket_start_[b + 1] - bucket_start_[b]};
    }

    const std::vector<MinimizerEntry>& minimizers() const noexcept { return minimizers_; }
    const std::vector<SeedLocation>& locations() const noexcept { return locations_; }

    LookupResult lookup(uint64_t hash) const;

    IndexStats stats() const;

    bool operator==(const MinimizerIndex& other) const;

private:
    MinimizerParams params_;
    uint32_t bucket_bits_ = 0;
    std::vector<uint32_t> bucket_start_;  // 2^B + 1 prefix offsets
    std::vector<MinimizerEntry> minimizers_;
    std::vector<SeedLocation> locations_;

    friend MinimizerIndex deserialize_index(std::span<const uint8_t> bytes);
};

// Smallest count c such that minimizers occurring more than c times make up
// at most `fraction` of the distinct minimizers; never below 1.
FrequencyThreshold compute_threshold(const MinimizerIndex& index, double fraction = 0.0002);

std::vector<uint8_t> serialize_index(const MinimizerIndex& index);
MinimizerIndex deserialize_index(std::span<const uint8_t> bytes);

uint64_t serialized_index_bytes(uint32_t bucket_bits, uint64_t minimizers, uint64_t locations);

std::string format_index_stats(const IndexStats& stats);

} // namespace graphmap

#endif
