#include "graphmap/oracle.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "graphmap/error.hpp"

namespace graphmap::oracle {

namespace {

constexpr uint32_t kInf = std::numeric_limits<uint32_t>::max() / 2;

// Sentinel predecessor meaning "the path starts here".
constexpr uint32_t kSource = std::numeric_limits<uint32_t>::max();

} // namespace

DpAlignment dag_edit_distance(const Subgraph& subgraph, std::span<const Base> pattern) {
    const size_t n = subgraph.size();
    const size_t m = pattern.size();
    const auto preds = subgraph.predecessors();

    // dist[i][j]; the virtual source row is source(j) = j
    std::vector<std::vector<uint32_t>> dist(n, std::vector<uint32_t>(m + 1, kInf));
    auto source = [](size_t j) { return static_cast<uint32_t>(j); };
    auto row_value = [&](uint32_t p, size_t j) { return p == kSource ? source(j) : dist[p][j]; };

    for (size_t i = 0; i < n; ++i) {
        std::vector<uint32_t> from(preds[i].begin(), preds[i].end());
        from.push_back(kSource);
        for (size_t j = 0; j <= m; ++j) {
            uint32_t best = kInf;
            for (uint32_t p : from) {
                best = std::min(best, row_value(p, j) + 1);
                if (j > 0) {
                    uint32_t delta = subgraph.base(i) == pattern[j - 1] ? 0 : 1;
                    best = std::min(best, row_value(p, j - 1) + delta);
                }
            }
            if (j > 0) {
                best = std::min(best, dist[i][j - 1] + 1);
            }
            dist[i][j] = best;
        }
    }

    // pick the end: the best cell in the last column, leftmost position on
    // ties; the empty path (all insertions) only when strictly better
    uint32_t end = kSource;
    uint32_t best = source(m);
    for (size_t i = 0; i < n; ++i) {
        if (dist[i][m] < best || (dist[i][m] == best && end == kSource && m > 0)) {
            best = dist[i][m];
            end = static_cast<uint32_t>(i);
        }
    }

    DpAlignment result;
    result.distance = best;
    std::vector<EditOp> ops;
    uint32_t i = end;
    size_t j = m;
    while (i != kSource) {
        const uint32_t here = dist[i][j];
        std::vector<uint32_t> from(preds[i].begin(), preds[i].end());
        from.push_back(kSource);
        bool moved = false;
        if (j > 0) {
            bool equal = subgraph.base(i) == pattern[j - 1];
            EditOp diag = equal ? EditOp::Match : EditOp::Mismatch;
            for (uint32_t p : from) {
                if (row_value(p, j - 1) + (equal ? 0 : 1) == here) {
                    ops.push_back(diag);
                    result.positions.push_back(i);
                    i = p;
                    --j;
                    moved = true;
                    break;
                }
            }
        }
        if (!moved) {
            for (uint32_t p : from) {
                if (row_value(p, j) + 1 == here) {
                    ops.push_back(EditOp::Deletion);
                    result.positions.push_back(i);
                    i = p;
                    moved = true;
                    break;
                }
            }
        }
        if (!moved && j > 0 && dist[i][j - 1] + 1 == here) {
            ops.push_back(EditOp::Insertion);
            --j;
            moved = true;
        }
        if (!moved) {
            throw Error(ErrorCode::Consistency, "oracle traceback failed");
        }
    }
    // whatever read prefix is left precedes the first graph character
    ops.insert(ops.end(), j, EditOp::Insertion);
    std::reverse(ops.begin(), ops.end());
    std::reverse(result.positions.begin(), result.positions.end());
    result.cigar = Cigar::from_ops(ops);
    return result;
}

uint32_t s2s_edit_distance(std::span<const Base> text, std::span<const Base> pattern, S2sMode mode) {
    const size_t n = text.size();
    const size_t m = pattern.size();
    // column-major over the text: prev[j] = cost of pattern[0..j) ending at text[0..i)
    std::vector<uint32_t> prev(m + 1);
    std::vector<uint32_t> cur(m + 1);
    for (size_t j = 0; j <= m; ++j) {
        prev[j] = static_cast<uint32_t>(j);
    }
    uint32_t best = prev[m];
    for (size_t i = 1; i <= n; ++i) {
        cur[0] = mode == S2sMode::SemiGlobal ? 0 : static_cast<uint32_t>(i);
        for (size_t j = 1; j <= m; ++j) {
            uint32_t sub = prev[j - 1] + (text[i - 1] == pattern[j - 1] ? 0 : 1);
            cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
        }
        best = std::min(best, cur[m]);
        std::swap(prev, cur);
    }
    return mode == S2sMode::SemiGlobal ? best : prev[m];
}

std::vector<Minimizer> naive_minimizers(std::span<const Base> seq, const MinimizerParams& params) {
    params.validate();
    std::vector<Minimizer> out;
    const uint32_t k = params.k;
    const uint32_t w = params.w;
    if (seq.size() < k) {
        return out;
    }
    const size_t kmer_count = seq.size() - k + 1;

    auto score_at = [&](size_t j) {
        std::vector<Base> fwd(seq.begin() + j, seq.begin() + j + k);
        uint64_t value = pack_kmer(fwd);
        if (params.strand == StrandMode::Canonical) {
            std::vector<Base> rc(k);
            for (size_t q = 0; q < k; ++q) {
                rc[q] = 3 - fwd[k - 1 - q];
            }
            value = std::min(value, pack_kmer(rc));
        }
        return kmer_score(value, k, params.score);
    };

    const size_t windows = kmer_count >= w ? kmer_count - w + 1 : 1;
    for (size_t t = 0; t < windows; ++t) {
        size_t last = std::min<size_t>(t + w, kmer_count);
        size_t best = t;
        for (size_t j = t; j < last; ++j) {
            if (score_at(j) <= score_at(best)) {
                best = j;
            }
        }
        if (out.empty() || out.back().start != best) {
            out.push_back({score_at(best), k, static_cast<uint32_t>(best), static_cast<uint32_t>(best + k - 1)});
        }
    }
    return out;
}

namespace {

template<typename StepOk, typename BaseAt>
ReplayResult replay(size_t path_len, std::span<const Base> read, const Cigar& cigar, StepOk step_ok,
                    BaseAt base_at) {
    ReplayResult r;
    if (cigar.read_length() != read.size()) {
        r.message = "CIGAR consumes " + std::to_string(cigar.read_length()) + " read bases, read has " +
                    std::to_string(read.size());
        return r;
    }
    if (cigar.graph_length() != path_len) {
        r.message = "CIGAR consumes " + std::to_string(cigar.graph_length()) + " graph bases, path has " +
                    std::to_string(path_len);
        return r;
    }
    for (size_t p = 1; p < path_len; ++p) {
        if (!step_ok(p - 1, p)) {
            r.message = "path step " + std::to_string(p) + " does not follow an edge";
            return r;
        }
    }
    size_t rp = 0;
    size_t gp = 0;
    for (const CigarRun& run : cigar.runs()) {
        for (uint32_t c = 0; c < run.length; ++c) {
            switch (run.op) {
                case EditOp::Match:
                    if (read[rp] != base_at(gp)) {
                        r.message = "M at read position " + std::to_string(rp) + " is a mismatch";
                        return r;
                    }
                    ++rp;
                    ++gp;
                    break;
                case EditOp::Mismatch:
                    if (read[rp] == base_at(gp)) {
                        r.message = "X at read position " + std::to_string(rp) + " is a match";
                        return r;
                    }
                    ++r.edits;
                    ++rp;
                    ++gp;
                    break;
                case EditOp::Insertion:
                    ++r.edits;
                    ++rp;
                    break;
                case EditOp::Deletion:
                    ++r.edits;
                    ++gp;
                    break;
            }
        }
    }
    r.ok = true;
    return r;
}

} // namespace

ReplayResult replay_cigar(const Subgraph& subgraph, std::span<const uint32_t> positions,
                          std::span<const Base> read, const Cigar& cigar) {
    for (uint32_t p : positions) {
        if (p >= subgraph.size()) {
            return {false, 0, "path position outside the subgraph"};
        }
    }
    return replay(
        positions.size(), read, cigar,
        [&](size_t a, size_t b) { return subgraph.has_hop(positions[a], positions[b]); },
        [&](size_t g) { return subgraph.base(positions[g]); });
}

ReplayResult replay_cigar(const GenomeGraph& graph, std::span<const GlobalOffset> path,
                          std::span<const Base> read, const Cigar& cigar) {
    for (const GlobalOffset& pos : path) {
        if (pos.node_id >= graph.node_count() || pos.offset >= graph.node(pos.node_id).seq_len) {
            return {false, 0, "path position outside the graph"};
        }
    }
    auto step_ok = [&](size_t a, size_t b) {
        const GlobalOffset& from = path[a];
        const GlobalOffset& to = path[b];
        if (from.node_id == to.node_id) {
            return to.offset == from.offset + 1;
        }
        if (from.offset + 1 != graph.node(from.node_id).seq_len || to.offset != 0) {
            return false;
        }
        auto edges = graph.out_edges(from.node_id);
        return std::find(edges.begin(), edges.end(), to.node_id) != edges.end();
    };
    auto base_at = [&](size_t g) {
        return graph.base_at(graph.node(path[g].node_id).char_start + path[g].offset);
    };
    return replay(path.size(), read, cigar, step_ok, base_at);
}

} // namespace graphmap::oracle
