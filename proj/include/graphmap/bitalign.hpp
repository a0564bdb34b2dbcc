#ifndef graphmap_bitalign_hpp
#define graphmap_bitalign_hpp

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "graphmap/cigar.hpp"
#include "graphmap/dna.hpp"
#include "graphmap/graph.hpp"
#include "graphmap/subgraph.hpp"

namespace graphmap {

using Bitvector = unsigned __int128;

constexpr uint32_t kBitvectorWidth = 128;
constexpr Bitvector kAllOnes = ~Bitvector{0};

/*
 * One mask per base. A 0 bit marks a pattern position holding that base.
 * Pattern base q lives at bit (m - 1 - q): the read is consumed from the most
 * significant pattern bit downwards, so bit m-1 of R[d] set to 0 at text
 * position i means the whole read aligns starting at i with d edits.
 */
struct PatternBitmasks {
    std::array<Bitvector, 4> masks{kAllOnes, kAllOnes, kAllOnes, kAllOnes};
    uint32_t length = 0;

    const Bitvector& operator[](Base b) const { return masks[b & 3]; }
};

// Throws Error(Width) when the pattern is longer than width bits.
PatternBitmasks gen_pattern_bitmasks(std::span<const Base> pattern, uint32_t width = kBitvectorWidth);

/*
 * R[d] status bitvectors for every subgraph position, d = 0..max_edits. Only
 * the ANDed R[d] is kept; the match, substitution, deletion and insertion
 * intermediates are regenerated during traceback.
 */
class RBitvectorStore {
public:
    RBitvectorStore(size_t positions, uint32_t max_edits);

    Bitvector& at(size_t position, uint32_t d) { return data_[position * stride_ + d]; }
    const Bitvector& at(size_t position, uint32_t d) const { return data_[position * stride_ + d]; }

    size_t positions() const noexcept { return positions_; }
    uint32_t max_edits() const noexcept { return stride_ - 1; }
    uint32_t vectors_per_position() const noexcept { return stride_; }
    size_t stored_vectors() const noexcept { return data_.size(); }
    size_t storage_bytes() const noexcept { return data_.size() * sizeof(Bitvector); }

private:
    size_t positions_;
    uint32_t stride_;
    std::vector<Bitvector> data_;
};

// Fills the store from the last subgraph position back to the first. A
// position without successors sees one virtual successor past the end whose
// R[d] is all ones shifted left by d: only a read suffix of at most d bases
// can follow it, as insertions.
RBitvectorStore generate_bitvectors(const Subgraph& subgraph, const PatternBitmasks& masks, uint32_t max_edits);

struct DistanceHit {
    uint32_t edit_distance = 0;
    uint32_t position = 0;  // subgraph position where the alignment starts

    bool operator==(const DistanceHit& other) const = default;
};

// Smallest d with an accepting bit anywhere, at the leftmost such position.
std::optional<DistanceHit> extract_distance(const RBitvectorStore& store, uint32_t pattern_len);
// Same, but only positions flagged in allowed_starts may start the alignment.
std::optional<DistanceHit> extract_distance(const RBitvectorStore& store, uint32_t pattern_len,
                                            const std::vector<bool>& allowed_starts);

struct Traceback {
    std::vector<EditOp> ops;
    std::vector<uint32_t> positions;  // subgraph positions consumed by M, X, D
};

/*
 * Walks forward from hit.position, regenerating the intermediate bitvectors
 * from the stored R[d] values and taking the first move that explains the
 * current state in the order M, X, D, I. Throws Error(Consistency) if no move
 * does.
 */
Traceback traceback(const RBitvectorStore& store, const Subgraph& subgraph, const PatternBitmasks& masks,
                    DistanceHit hit);

struct WindowConfig {
    uint32_t width = 128;
    uint32_t overlap = 48;
    uint32_t max_edits = 0;  // per-window threshold; 0 means ceil(E * width)
    uint32_t bitvector_width = kBitvectorWidth;

    // Overlap defaults to 3/8 of the width: 48 for 128, 24 for 64.
    static WindowConfig with_width(uint32_t width);

    void validate() const;
    uint32_t edits_for(double error_rate) const;
};

// 1 + ceil(max(0, m - W) / (W - O)). Throws Error(Config) unless W > O.
uint64_t window_count(uint64_t read_length, uint32_t width, uint32_t overlap);

struct WindowInfo {
    uint32_t read_start = 0;      // first read base of the window
    uint32_t read_end = 0;        // one past the last read base of the window
    uint32_t committed_read = 0;  // read bases committed from this window
    uint32_t window_distance = 0; // distance of the full window alignment
    uint32_t committed_edits = 0;
};

struct AlignmentResult {
    bool aligned = false;
    uint32_t edit_distance = 0;
    Cigar cigar;
    std::vector<uint32_t> positions;  // subgraph-local consumed positions
    std::vector<GlobalOffset> path;   // the same positions as graph coordinates
    std::vector<WindowInfo> windows;
};

/*
 * Aligns read windows of W bases, advancing W - O bases per window. Window t
 * starts at a successor of the last committed position and only its first
 * W - O read bases are committed; the final window commits everything.
 */
AlignmentResult align(std::span<const Base> read, const Subgraph& subgraph, double error_rate,
                      const WindowConfig& config = {});

// Single-window alignment of a read of at most bitvector width bases with an
// explicit edit threshold; the kernel the windowed aligner is built from.
AlignmentResult align_window(std::span<const Base> read, const Subgraph& subgraph, uint32_t max_edits);

} // namespace graphmap

#endif
