#include "graphmap/bitalign.hpp"

#include <algorithm>
#include <limits>

#include "graphmap/error.hpp"
#include "graphmap/minseed.hpp"

namespace graphmap {

namespace {

inline bool bit_clear(Bitvector v, uint32_t bit) {
    return ((v >> bit) & 1) == 0;
}

constexpr uint32_t kUnreached = std::numeric_limits<uint32_t>::max();
constexpr uint32_t kPastEnd = std::numeric_limits<uint32_t>::max();

/*
 * Virtual successor of a position without successors: nothing left to
 * consume, so only a read suffix of at most d bases can still be inserted.
 * All ones for d = 0.
 */
inline Bitvector past_end(uint32_t d) {
    return d >= kBitvectorWidth ? Bitvector{0} : kAllOnes << d;
}

} // namespace

PatternBitmasks gen_pattern_bitmasks(std::span<const Base> pattern, uint32_t width) {
    if (width > kBitvectorWidth) {
        throw Error(ErrorCode::Width, "bitvector width is limited to 128");
    }
    if (pattern.size() > width) {
        throw Error(ErrorCode::Width, "pattern of length " + std::to_string(pattern.size()) +
                                          " exceeds the bitvector width " + std::to_string(width));
    }
    PatternBitmasks pm;
    pm.length = static_cast<uint32_t>(pattern.size());
    const uint32_t m = pm.length;
    for (uint32_t q = 0; q < m; ++q) {
        pm.masks[pattern[q] & 3] &= ~(Bitvector{1} << (m - 1 - q));
    }
    return pm;
}

RBitvectorStore::RBitvectorStore(size_t positions, uint32_t max_edits)
    : positions_(positions), stride_(max_edits + 1), data_(positions * stride_, kAllOnes) {}

RBitvectorStore generate_bitvectors(const Subgraph& subgraph, const PatternBitmasks& masks, uint32_t max_edits) {
    const size_t n = subgraph.size();
    RBitvectorStore store(n, max_edits);
    for (size_t i = n; i-- > 0;) {
        const Bitvector cur_pm = masks[subgraph.base(i)];
        auto succ = subgraph.successors(i);

        Bitvector r0 = kAllOnes;
        if (succ.empty()) {
            r0 = (past_end(0) << 1) | cur_pm;
        }
        for (uint32_t j : succ) {
            r0 &= (store.at(j, 0) << 1) | cur_pm;
        }
        store.at(i, 0) = r0;

        for (uint32_t d = 1; d <= max_edits; ++d) {
            Bitvector rd = store.at(i, d - 1) << 1;  // insertion
            if (succ.empty()) {
                rd &= past_end(d - 1) & (past_end(d - 1) << 1) & ((past_end(d) << 1) | cur_pm);
            }
            for (uint32_t j : succ) {
                const Bitvector deletion = store.at(j, d - 1);
                const Bitvector substitution = store.at(j, d - 1) << 1;
                const Bitvector match = (store.at(j, d) << 1) | cur_pm;
                rd &= deletion & substitution & match;
            }
            store.at(i, d) = rd;
        }
    }
    return store;
}

std::optional<DistanceHit> extract_distance(const RBitvectorStore& store, uint32_t pattern_len) {
    std::vector<bool> all(store.positions(), true);
    return extract_distance(store, pattern_len, all);
}

std::optional<DistanceHit> extract_distance(const RBitvectorStore& store, uint32_t pattern_len,
                                            const std::vector<bool>& allowed_starts) {
    if (pattern_len == 0 || pattern_len > kBitvectorWidth) {
        throw Error(ErrorCode::Width, "pattern length must lie in [1, 128]");
    }
    const uint32_t accept = pattern_len - 1;
    for (uint32_t d = 0; d <= store.max_edits(); ++d) {
        for (size_t i = 0; i < store.positions(); ++i) {
            if (allowed_starts[i] && bit_clear(store.at(i, d), accept)) {
                return DistanceHit{d, static_cast<uint32_t>(i)};
            }
        }
    }
    return std::nullopt;
}

Traceback traceback(const RBitvectorStore& store, const Subgraph& subgraph, const PatternBitmasks& masks,
                    DistanceHit hit) {
    Traceback tb;
    uint32_t i = hit.position;
    uint32_t d = hit.edit_distance;
    uint32_t remaining = masks.length;

    // state: the last `remaining` read bases align starting at position i
    // with at most d edits, i.e. bit (remaining - 1) of R[i][d] is clear
    while (remaining > 0) {
        if (i == kPastEnd) {
            // trailing insertions after the last graph character
            if (remaining > d) {
                throw Error(ErrorCode::Consistency, "traceback ran past the subgraph end with too few edits");
            }
            tb.ops.insert(tb.ops.end(), remaining, EditOp::Insertion);
            break;
        }
        const uint32_t bit = remaining - 1;
        const bool last = remaining == 1;
        const bool is_match = bit_clear(masks[subgraph.base(i)], bit);
        auto succ = subgraph.successors(i);

        auto successor_with = [&](uint32_t edits, uint32_t b) -> std::optional<uint32_t> {
            if (succ.empty()) {
                return bit_clear(past_end(edits), b) ? std::optional<uint32_t>(kPastEnd) : std::nullopt;
            }
            for (uint32_t j : succ) {
                if (bit_clear(store.at(j, edits), b)) {
                    return j;
                }
            }
            return std::nullopt;
        };

        if (is_match) {
            if (last) {
                tb.ops.push_back(EditOp::Match);
                tb.positions.push_back(i);
                break;
            }
            if (auto j = successor_with(d, bit - 1)) {
                tb.ops.push_back(EditOp::Match);
                tb.positions.push_back(i);
                i = *j;
                --remaining;
                continue;
            }
        }
        if (d > 0) {
            if (last) {
                tb.ops.push_back(EditOp::Mismatch);
                tb.positions.push_back(i);
                break;
            }
            if (auto j = successor_with(d - 1, bit - 1)) {
                tb.ops.push_back(EditOp::Mismatch);
                tb.positions.push_back(i);
                i = *j;
                --d;
                --remaining;
                continue;
            }
            if (auto j = successor_with(d - 1, bit)) {
                tb.ops.push_back(EditOp::Deletion);
                tb.positions.push_back(i);
                i = *j;
                --d;
                continue;
            }
            if (bit_clear(store.at(i, d - 1), bit - 1)) {
                tb.ops.push_back(EditOp::Insertion);
                --d;
                --remaining;
                continue;
            }
        }
        throw Error(ErrorCode::Consistency, "traceback stuck at position " + std::to_string(i) + " with " +
                                                std::to_string(d) + " edits and " + std::to_string(remaining) +
                                                " read bases left");
    }
    return tb;
}

WindowConfig WindowConfig::with_width(uint32_t width) {
    WindowConfig cfg;
    cfg.width = width;
    cfg.overlap = width * 3 / 8;
    return cfg;
}

void WindowConfig::validate() const {
    if (bitvector_width == 0 || bitvector_width > kBitvectorWidth) {
        throw Error(ErrorCode::Config, "bitvector width must lie in [1, 128]");
    }
    if (width == 0 || width > bitvector_width) {
        throw Error(ErrorCode::Config, "window width must lie in [1, bitvector width]");
    }
    if (overlap == 0 || overlap >= width) {
        throw Error(ErrorCode::Config, "window overlap must satisfy 0 < O < W");
    }
}

uint32_t WindowConfig::edits_for(double error_rate) const {
    return max_edits != 0 ? max_edits : static_cast<uint32_t>(edit_budget(error_rate, width));
}

uint64_t window_count(uint64_t read_length, uint32_t width, uint32_t overlap) {
    if (width <= overlap) {
        throw Error(ErrorCode::Config, "window width must exceed the overlap");
    }
    const uint64_t advance = width - overlap;
    const uint64_t rest = read_length > width ? read_length - width : 0;
    return 1 + (rest + advance - 1) / advance;
}

namespace {

struct WindowAlignment {
    bool found = false;
    uint32_t distance = 0;
    std::vector<EditOp> ops;
    std::vector<uint32_t> positions;  // in the caller's subgraph coordinates
};

/*
 * Aligns one window pattern. With an anchor the alignment has to start at one
 * of the anchor's successors, and only positions reachable within
 * len + max_edits steps of them are materialized.
 */
WindowAlignment align_one_window(std::span<const Base> pattern, const Subgraph& subgraph,
                                 std::optional<uint32_t> anchor, uint32_t max_edits, uint32_t width) {
    WindowAlignment out;
    const uint32_t len = static_cast<uint32_t>(pattern.size());
    PatternBitmasks masks = gen_pattern_bitmasks(pattern, width);

    std::vector<uint32_t> keep;
    std::vector<bool> allowed;
    const Subgraph* view = &subgraph;
    Subgraph local;
    if (anchor) {
        auto starts = subgraph.successors(*anchor);
        if (starts.empty()) {
            // nothing left to consume: the window can only be inserted
            if (len > max_edits) {
                return out;
            }
            out.found = true;
            out.distance = len;
            out.ops.assign(len, EditOp::Insertion);
            return out;
        }
        std::vector<uint32_t> steps(subgraph.size(), kUnreached);
        for (uint32_t s : starts) {
            steps[s] = 0;
        }
        const uint32_t limit = len + max_edits - 1;
        for (uint32_t i = starts.front(); i < subgraph.size(); ++i) {
            if (steps[i] > limit) {
                continue;
            }
            keep.push_back(i);
            for (uint32_t j : subgraph.successors(i)) {
                steps[j] = std::min(steps[j], steps[i] + 1);
            }
        }
        local = subgraph.induced(keep);
        view = &local;
        allowed.assign(keep.size(), false);
        for (uint32_t idx = 0; idx < keep.size(); ++idx) {
            allowed[idx] = steps[keep[idx]] == 0;
        }
    }
    else {
        allowed.assign(subgraph.size(), true);
    }

    RBitvectorStore store = generate_bitvectors(*view, masks, max_edits);
    auto hit = extract_distance(store, len, allowed);
    if (!hit) {
        return out;
    }
    Traceback tb = traceback(store, *view, masks, *hit);
    out.found = true;
    out.distance = hit->edit_distance;
    out.ops = std::move(tb.ops);
    out.positions = std::move(tb.positions);
    if (anchor) {
        for (uint32_t& p : out.positions) {
            p = keep[p];
        }
    }
    return out;
}

void fill_path(AlignmentResult& result, const Subgraph& subgraph) {
    result.path.clear();
    result.path.reserve(result.positions.size());
    for (uint32_t p : result.positions) {
        const SubgraphPosition& pos = subgraph.position(p);
        result.path.push_back({pos.node_id, pos.offset, pos.linear_pos});
    }
}

} // namespace

AlignmentResult align_window(std::span<const Base> read, const Subgraph& subgraph, uint32_t max_edits) {
    AlignmentResult result;
    if (read.empty()) {
        result.aligned = true;
        return result;
    }
    if (subgraph.empty()) {
        return result;
    }
    WindowAlignment w = align_one_window(read, subgraph, std::nullopt, max_edits, kBitvectorWidth);
    if (!w.found) {
        return result;
    }
    result.aligned = true;
    result.edit_distance = w.distance;
    result.cigar = Cigar::from_ops(w.ops);
    result.positions = std::move(w.positions);
    const uint32_t len = static_cast<uint32_t>(read.size());
    result.windows.push_back({0, len, len, w.distance, w.distance});
    fill_path(result, subgraph);
    return result;
}

AlignmentResult align(std::span<const Base> read, const Subgraph& subgraph, double error_rate,
                      const WindowConfig& config) {
    config.validate();
    const uint32_t max_edits = config.edits_for(error_rate);
    AlignmentResult result;
    const uint64_t m = read.size();
    if (m == 0) {
        result.aligned = true;
        return result;
    }
    if (subgraph.empty()) {
        return result;
    }

    const uint64_t windows = window_count(m, config.width, config.overlap);
    const uint32_t advance = config.width - config.overlap;
    std::optional<uint32_t> anchor;
    std::vector<EditOp> ops;
    for (uint64_t t = 0; t < windows; ++t) {
        const uint32_t start = static_cast<uint32_t>(t * advance);
        const uint32_t end = static_cast<uint32_t>(std::min<uint64_t>(m, start + config.width));
        const bool final_window = t + 1 == windows;

        WindowAlignment w = align_one_window(read.subspan(start, end - start), subgraph, anchor, max_edits,
                                             config.bitvector_width);
        if (!w.found) {
            result.windows.push_back({start, end, 0, 0, 0});
            result.aligned = false;
            return result;
        }

        // commit the prefix of the window that consumes `advance` read bases
        const uint32_t commit_read = final_window ? end - start : advance;
        uint32_t consumed_read = 0;
        uint32_t committed_edits = 0;
        size_t op_count = 0;
        size_t pos_count = 0;
        for (; op_count < w.ops.size() && (final_window || consumed_read < commit_read); ++op_count) {
            EditOp op = w.ops[op_count];
            if (consumes_read(op)) {
                ++consumed_read;
            }
            if (consumes_graph(op)) {
                ++pos_count;
            }
            if (op != EditOp::Match) {
                ++committed_edits;
            }
        }
        ops.insert(ops.end(), w.ops.begin(), w.ops.begin() + static_cast<std::ptrdiff_t>(op_count));
        result.positions.insert(result.positions.end(), w.positions.begin(),
                                w.positions.begin() + static_cast<std::ptrdiff_t>(pos_count));
        if (!result.positions.empty()) {
            anchor = result.positions.back();
        }
        result.edit_distance += committed_edits;
        result.windows.push_back({start, end, commit_read, w.distance, committed_edits});
    }

    result.aligned = true;
    result.cigar = Cigar::from_ops(ops);
    fill_path(result, subgraph);
    return result;
}

} // namespace graphmap
