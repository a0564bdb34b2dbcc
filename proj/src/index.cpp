#include "graphmap/index.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <tuple>

#include "byte_io.hpp"
#include "graphmap/error.hpp"

namespace graphmap {

namespace {

constexpr uint8_t kIndexMagic[4] = {'G', 'M', 'M', 'I'};

uint64_t kmer_mask(uint32_t k) {
    return k >= 32 ? ~uint64_t{0} : (uint64_t{1} << (2 * k)) - 1;
}

} // namespace

void MinimizerParams::validate() const {
    if (w == 0 || k == 0) {
        throw Error(ErrorCode::Config, "minimizer window and k-mer length must be positive");
    }
    if (k > kMaxK) {
        throw Error(ErrorCode::Unsupported, "k-mer length " + std::to_string(k) + " exceeds 31");
    }
}

// Thomas Wang's 64-bit mix restricted to 2k bits, as used by minimap2; each
// step is invertible modulo 2^(2k).
uint64_t hash_kmer(uint64_t key, uint32_t k) {
    if (k > kMaxK) {
        throw Error(ErrorCode::Unsupported, "k-mer length " + std::to_string(k) + " exceeds 31");
    }
    const uint64_t mask = kmer_mask(k);
    key = (~key + (key << 21)) & mask;
    key = key ^ (key >> 24);
    key = ((key + (key << 3)) + (key << 8)) & mask;
    key = key ^ (key >> 14);
    key = ((key + (key << 2)) + (key << 4)) & mask;
    key = key ^ (key >> 28);
    key = (key + (key << 31)) & mask;
    return key;
}

uint64_t pack_kmer(std::span<const Base> kmer) {
    uint64_t v = 0;
    for (Base b : kmer) {
        v = (v << 2) | b;
    }
    return v;
}

uint64_t kmer_score(uint64_t packed, uint32_t k, ScoreMode mode) {
    return mode == ScoreMode::Hash ? hash_kmer(packed, k) : packed;
}

std::vector<Minimizer> find_minimizers(std::span<const Base> seq, const MinimizerParams& params) {
    params.validate();
    const uint32_t k = params.k;
    const uint32_t w = params.w;
    std::vector<Minimizer> out;
    if (seq.size() < k) {
        return out;
    }

    const size_t kmer_count = seq.size() - k + 1;
    const uint64_t mask = kmer_mask(k);
    const uint32_t rc_shift = 2 * (k - 1);
    std::vector<uint64_t> score(kmer_count);
    uint64_t fwd = 0;
    uint64_t rev = 0;
    for (size_t i = 0; i < seq.size(); ++i) {
        fwd = ((fwd << 2) | seq[i]) & mask;
        rev = (rev >> 2) | (static_cast<uint64_t>(3 - seq[i]) << rc_shift);
        if (i + 1 >= k) {
            uint64_t value = params.strand == StrandMode::Canonical ? std::min(fwd, rev) : fwd;
            score[i + 1 - k] = kmer_score(value, k, params.score);
        }
    }

    auto emit = [&](size_t j) {
        if (out.empty() || out.back().start != j) {
            out.push_back({score[j], k, static_cast<uint32_t>(j), static_cast<uint32_t>(j + k - 1)});
        }
    };

    // front of the queue is the rightmost minimum of the current window
    std::deque<size_t> queue;
    for (size_t j = 0; j < kmer_count; ++j) {
        while (!queue.empty() && score[queue.back()] >= score[j]) {
            queue.pop_back();
        }
        queue.push_back(j);
        if (j + 1 >= w) {
            size_t window_start = j + 1 - w;
            while (queue.front() < window_start) {
                queue.pop_front();
            }
            emit(queue.front());
        }
    }
    if (kmer_count < w) {
        emit(queue.front());
    }
    return out;
}

MinimizerIndex MinimizerIndex::build(const GenomeGraph& graph, const MinimizerParams& params,
                                     uint32_t bucket_bits) {
    params.validate();
    if (bucket_bits > kMaxBucketBits) {
        throw Error(ErrorCode::Config, "bucket bits must be at most 30");
    }

    struct Occurrence {
        uint64_t bucket;
        uint64_t hash;
        SeedLocation loc;
    };
    const uint64_t bucket_mask = (uint64_t{1} << bucket_bits) - 1;
    std::vector<Occurrence> occurrences;
    for (NodeId id = 0; id < graph.node_count(); ++id) {
        std::vector<Base> seq = graph.node_sequence(id);
        for (const Minimizer& mz : find_minimizers(seq, params)) {
            occurrences.push_back({mz.hash & bucket_mask, mz.hash, {id, mz.start}});
        }
    }
    std::sort(occurrences.begin(), occurrences.end(), [](const Occurrence& a, const Occurrence& b) {
        return std::tie(a.bucket, a.hash, a.loc) < std::tie(b.bucket, b.hash, b.loc);
    });

    if (occurrences.size() > UINT32_MAX) {
        throw Error(ErrorCode::Config, "too many minimizer occurrences for a 32-bit index");
    }

    MinimizerIndex index;
    index.params_ = params;
    index.bucket_bits_ = bucket_bits;
    index.bucket_start_.assign(index.bucket_count() + 1, 0);
    index.locations_.reserve(occurrences.size());
    for (const Occurrence& occ : occurrences) {
        if (index.minimizers_.empty() || index.minimizers_.back().hash != occ.hash) {
            index.minimizers_.push_back({occ.hash, static_cast<uint32_t>(index.locations_.size()), 0});
            ++index.bucket_start_[occ.bucket + 1];
        }
        ++index.minimizers_.back().loc_count;
        index.locations_.push_back(occ.loc);
    }
    for (size_t b = 1; b < index.bucket_start_.size(); ++b) {
        index.bucket_start_[b] += index.bucket_start_[b - 1];
    }
    return index;
}

LookupResult MinimizerIndex::lookup(uint64_t hash) const {
    BucketEntry b = bucket(bucket_of(hash));
    auto first = minimizers_.begin() + b.start;
    auto last = first + b.count;
    auto it = std::lower_bound(first, last, hash,
                               [](const MinimizerEntry& e, uint64_t h) { return e.hash < h; });
    if (it == last || it->hash != hash) {
        return {};
    }
    return {it->loc_count, std::span<const SeedLocation>(locations_.data() + it->loc_start, it->loc_count)};
}

IndexStats MinimizerIndex::stats() const {
    IndexStats s;
    s.buckets = bucket_count();
    s.distinct_minimizers = minimizers_.size();
    s.total_locations = locations_.size();
    for (uint64_t b = 0; b < bucket_count(); ++b) {
        s.max_minimizers_per_bucket = std::max<uint64_t>(s.max_minimizers_per_bucket, bucket(b).count);
    }
    for (const MinimizerEntry& e : minimizers_) {
        s.max_locations_per_minimizer = std::max<uint64_t>(s.max_locations_per_minimizer, e.loc_count);
    }
    return s;
}

bool MinimizerIndex::operator==(const MinimizerIndex& other) const {
    return params_.w == other.params_.w && params_.k == other.params_.k &&
           params_.score == other.params_.score && params_.strand == other.params_.strand &&
           bucket_bits_ == other.bucket_bits_ && bucket_start_ == other.bucket_start_ &&
           minimizers_ == other.minimizers_ && locations_ == other.locations_;
}

FrequencyThreshold compute_threshold(const MinimizerIndex& index, double fraction) {
    const auto& mins = index.minimizers();
    if (mins.empty()) {
        throw Error(ErrorCode::EmptyIndex, "cannot compute a frequency threshold for an empty index");
    }
    if (!(fraction >= 0.0 && fraction <= 1.0)) {
        throw Error(ErrorCode::Config, "frequency fraction must lie in [0, 1]");
    }
    std::vector<uint32_t> counts;
    counts.reserve(mins.size());
    for (const MinimizerEntry& e : mins) {
        counts.push_back(e.loc_count);
    }
    std::sort(counts.begin(), counts.end(), std::greater<>());
    // the epsilon absorbs products like 10000 * 0.0002 landing just below 2
    size_t allowed = static_cast<size_t>(std::floor(fraction * static_cast<double>(counts.size()) + 1e-9));
    uint32_t threshold = allowed < counts.size() ? counts[allowed] : 0;
    return {std::max<uint32_t>(threshold, 1)};
}

uint64_t serialized_index_bytes(uint32_t bucket_bits, uint64_t minimizers, uint64_t locations) {
    return MinimizerIndex::kHeaderBytes + (uint64_t{1} << bucket_bits) * MinimizerIndex::kBucketEntryBytes +
           minimizers * MinimizerIndex::kMinimizerEntryBytes + locations * MinimizerIndex::kLocationEntryBytes;
}

std::vector<uint8_t> serialize_index(const MinimizerIndex& index) {
    detail::ByteWriter out(serialized_index_bytes(index.bucket_bits(), index.minimizers().size(),
                                                  index.locations().size()));
    out.put_bytes(kIndexMagic);
    out.put<uint32_t>(MinimizerIndex::kFormatVersion);
    out.put<uint32_t>(index.params().w);
    out.put<uint32_t>(index.params().k);
    out.put<uint32_t>(index.bucket_bits());
    uint32_t flags = static_cast<uint32_t>(index.params().score) |
                     (static_cast<uint32_t>(index.params().strand) << 1);
    out.put<uint32_t>(flags);
    out.put<uint64_t>(index.minimizers().size());
    out.put<uint64_t>(index.locations().size());
    // counts are implicit: each entry's count ends where the next one starts
    for (uint64_t b = 0; b < index.bucket_count(); ++b) {
        out.put<uint32_t>(index.bucket(b).start);
    }
    for (const MinimizerEntry& e : index.minimizers()) {
        out.put<uint64_t>(e.hash);
        out.put<uint32_t>(e.loc_start);
    }
    for (const SeedLocation& loc : index.locations()) {
        out.put<uint32_t>(loc.node_id);
        out.put<uint32_t>(loc.offset);
    }
    return out.take();
}

MinimizerIndex deserialize_index(std::span<const uint8_t> bytes) {
    detail::ByteReader in(bytes, "index");
    auto magic = in.get_bytes(4);
    if (!std::equal(magic.begin(), magic.end(), kIndexMagic)) {
        throw Error(ErrorCode::Format, "not an index file (bad magic)");
    }
    if (in.get<uint32_t>() != MinimizerIndex::kFormatVersion) {
        throw Error(ErrorCode::Format, "unsupported index format version");
    }
    MinimizerIndex index;
    index.params_.w = in.get<uint32_t>();
    index.params_.k = in.get<uint32_t>();
    index.bucket_bits_ = in.get<uint32_t>();
    uint32_t flags = in.get<uint32_t>();
    uint64_t minimizer_count = in.get<uint64_t>();
    uint64_t location_count = in.get<uint64_t>();
    if (index.bucket_bits_ > MinimizerIndex::kMaxBucketBits || flags > 3 ||
        index.params_.w == 0 || index.params_.k == 0 || index.params_.k > kMaxK) {
        throw Error(ErrorCode::Format, "corrupt index header");
    }
    index.params_.score = static_cast<ScoreMode>(flags & 1);
    index.params_.strand = static_cast<StrandMode>((flags >> 1) & 1);
    if (minimizer_count > in.remaining() / MinimizerIndex::kMinimizerEntryBytes ||
        location_count > in.remaining() / MinimizerIndex::kLocationEntryBytes) {
        throw Error(ErrorCode::Format, "truncated index buffer");
    }
    in.require(serialized_index_bytes(index.bucket_bits_, minimizer_count, location_count) -
               MinimizerIndex::kHeaderBytes);

    const uint64_t buckets = index.bucket_count();
    index.bucket_start_.resize(buckets + 1);
    for (uint64_t b = 0; b < buckets; ++b) {
        index.bucket_start_[b] = in.get<uint32_t>();
    }
    index.bucket_start_[buckets] = static_cast<uint32_t>(minimizer_count);
    index.minimizers_.resize(minimizer_count);
    for (MinimizerEntry& e : index.minimizers_) {
        e.hash = in.get<uint64_t>();
        e.loc_start = in.get<uint32_t>();
    }
    index.locations_.resize(location_count);
    for (SeedLocation& loc : index.locations_) {
        loc.node_id = in.get<uint32_t>();
        loc.offset = in.get<uint32_t>();
    }
    if (in.remaining() != 0) {
        throw Error(ErrorCode::Format, "trailing bytes after index tables");
    }

    if (index.bucket_start_[0] != 0) {
        throw Error(ErrorCode::Format, "first bucket does not start at zero");
    }
    for (uint64_t b = 0; b < buckets; ++b) {
        if (index.bucket_start_[b] > index.bucket_start_[b + 1]) {
            throw Error(ErrorCode::Format, "bucket start addresses are not monotone");
        }
        for (uint32_t i = index.bucket_start_[b]; i < index.bucket_start_[b + 1]; ++i) {
            const MinimizerEntry& e = index.minimizers_[i];
            if (index.bucket_of(e.hash) != b ||
                (i > index.bucket_start_[b] && index.minimizers_[i - 1].hash >= e.hash)) {
                throw Error(ErrorCode::Format, "minimizer level is not sorted by bucket and hash");
            }
        }
    }
    for (size_t i = 0; i < minimizer_count; ++i) {
        uint64_t next = i + 1 < minimizer_count ? index.minimizers_[i + 1].loc_start : location_count;
        if (i == 0 && index.minimizers_[0].loc_start != 0) {
            throw Error(ErrorCode::Format, "first location group does not start at zero");
        }
        if (next <= index.minimizers_[i].loc_start) {
            throw Error(ErrorCode::Format, "location groups are not contiguous");
        }
        index.minimizers_[i].loc_count = static_cast<uint32_t>(next - index.minimizers_[i].loc_start);
    }
    if (minimizer_count == 0 && location_count != 0) {
        throw Error(ErrorCode::Format, "locations without minimizers");
    }
    return index;
}

std::string format_index_stats(const IndexStats& stats) {
    std::ostringstream out;
    out << "buckets\t" << stats.buckets << '\n'
        << "distinct_minimizers\t" << stats.distinct_minimizers << '\n'
        << "total_locations\t" << stats.total_locations << '\n'
        << "max_minimizers_per_bucket\t" << stats.max_minimizers_per_bucket << '\n'
        << "max_locations_per_minimizer\t" << stats.max_locations_per_minimizer << '\n';
    return out.str();
}

} // namespace graphmap
