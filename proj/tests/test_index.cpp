#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "graphmap/error.hpp"
#include "graphmap/index.hpp"
#include "graphmap/oracle.hpp"
#include "support.hpp"

using namespace graphmap;
using graphmap::testing::bases;
using graphmap::testing::random_bases;
using graphmap::testing::Rng;

namespace {

std::vector<uint32_t> starts(const std::vector<Minimizer>& mins) {
    std::vector<uint32_t> out;
    for (const Minimizer& m : mins) {
        out.push_back(m.start);
    }
    return out;
}

GenomeGraph single_node(const std::string& seq) {
    return GenomeGraph::from_adjacency({bases(seq)}, {{}});
}

} // namespace

TEST_CASE("lexicographic minimizers of a short sequence") {
    MinimizerParams p{2, 3, ScoreMode::Lexicographic, StrandMode::Forward};
    std::vector<Minimizer> mins = find_minimizers(bases("AACGTA"), p);
    CHECK(starts(mins) == std::vector<uint32_t>{0, 1, 2});
    for (const Minimizer& m : mins) {
        CHECK(m.end - m.start + 1 == m.k);
    }
    CHECK(mins[0].hash == pack_kmer(bases("AAC")));
}

TEST_CASE("sequence shorter than k has no minimizers") {
    CHECK(find_minimizers(bases("ACG"), {1, 4}).empty());
    CHECK(find_minimizers(bases(""), {5, 3}).empty());
}

TEST_CASE("partial window is still processed") {
    // 3 k-mers, w = 5
    std::vector<Base> s = bases("TTTAA");
    MinimizerParams p{5, 3, ScoreMode::Lexicographic, StrandMode::Forward};
    std::vector<Minimizer> mins = find_minimizers(s, p);
    REQUIRE(mins.size() == 1);
    CHECK(mins[0].start == 2);
    CHECK(mins == oracle::naive_minimizers(s, p));
}

TEST_CASE("ties pick the rightmost k-mer") {
    MinimizerParams p{3, 2, ScoreMode::Lexicographic, StrandMode::Forward};
    std::vector<Minimizer> mins = find_minimizers(bases("AAAA"), p);
    REQUIRE(mins.size() == 1);
    CHECK(mins[0].start == 2);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(find_minimizers(bases("ACGT"), {0, 3}), Error);
    try {
        find_minimizers(bases("ACGT"), {1, 32});
        FAIL("expected an error");
    }
    catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Unsupported);
    }
}

TEST_CASE("single pass matches the nested loop definition") {
    Rng rng(1);
    for (int t = 0; t < 300; ++t) {
        std::vector<Base> s = random_bases(rng() % 1000, rng);
        if (t % 7 == 0) {
            // low-complexity input exercises ties
            for (Base& b : s) {
                b &= 1;
            }
        }
        MinimizerParams p;
        p.w = 1 + static_cast<uint32_t>(rng() % 16);
        p.k = 3 + static_cast<uint32_t>(rng() % 13);
        p.score = t % 2 == 0 ? ScoreMode::Hash : ScoreMode::Lexicographic;
        p.strand = t % 3 == 0 ? StrandMode::Canonical : StrandMode::Forward;
        CHECK(find_minimizers(s, p) == oracle::naive_minimizers(s, p));
    }
}

TEST_CASE("hash is a bijection for small k") {
    for (uint32_t k = 1; k <= 8; ++k) {
        uint64_t n = uint64_t{1} << (2 * k);
        std::vector<uint64_t> h(n);
        for (uint64_t x = 0; x < n; ++x) {
            h[x] = hash_kmer(x, k);
            CHECK(h[x] < n);
        }
        std::sort(h.begin(), h.end());
        CHECK(std::adjacent_find(h.begin(), h.end()) == h.end());
    }
    CHECK(hash_kmer(12345, 15) == hash_kmer(12345, 15));
    CHECK(kmer_score(pack_kmer(bases("AAA")), 3, ScoreMode::Lexicographic) <
          kmer_score(pack_kmer(bases("AAC")), 3, ScoreMode::Lexicographic));
}

TEST_CASE("canonical mode scores a k-mer and its reverse complement alike") {
    MinimizerParams p{1, 5, ScoreMode::Hash, StrandMode::Canonical};
    std::vector<Minimizer> fwd = find_minimizers(bases("ACCGT"), p);
    std::vector<Minimizer> rev = find_minimizers(bases("ACGGT"), p);
    REQUIRE(fwd.size() == 1);
    REQUIRE(rev.size() == 1);
    CHECK(fwd[0].hash == rev[0].hash);
}

TEST_CASE("minimizer density") {
    Rng rng(2);
    std::vector<Base> s = random_bases(10000, rng);
    for (uint32_t w : {2u, 5u, 10u, 16u}) {
        MinimizerParams p{w, 15};
        double density = static_cast<double>(find_minimizers(s, p).size()) / static_cast<double>(s.size() - 14);
        double expected = 2.0 / (w + 1);
        CHECK(density >= 0.8 * expected);
        CHECK(density <= 1.2 * expected);
    }
}

TEST_CASE("shared substrings share a minimizer") {
    Rng rng(4);
    for (int t = 0; t < 200; ++t) {
        MinimizerParams p;
        p.w = 1 + static_cast<uint32_t>(rng() % 16);
        p.k = 3 + static_cast<uint32_t>(rng() % 13);
        std::vector<Base> shared = random_bases(p.w + p.k - 1 + rng() % 10, rng);
        std::vector<Base> a = random_bases(rng() % 50, rng);
        std::vector<Base> b = random_bases(rng() % 50, rng);
        a.insert(a.end(), shared.begin(), shared.end());
        b.insert(b.begin(), shared.begin(), shared.end());
        std::vector<Base> tail = random_bases(rng() % 50, rng);
        a.insert(a.end(), tail.begin(), tail.end());

        std::set<uint64_t> ha;
        for (const Minimizer& m : find_minimizers(a, p)) {
            ha.insert(m.hash);
        }
        bool common = false;
        for (const Minimizer& m : find_minimizers(b, p)) {
            common = common || ha.count(m.hash) > 0;
        }
        CHECK(common);
    }
}

TEST_CASE("index of a single node") {
    MinimizerParams p{2, 3, ScoreMode::Lexicographic, StrandMode::Forward};
    MinimizerIndex idx = MinimizerIndex::build(single_node("AACGTA"), p, 4);
    CHECK(idx.minimizers().size() == 3);
    CHECK(idx.locations().size() == 3);

    LookupResult hit = idx.lookup(pack_kmer(bases("ACG")));
    REQUIRE(hit.count == 1);
    CHECK(hit.locations[0] == SeedLocation{0, 1});
    CHECK(idx.lookup(pack_kmer(bases("TTT"))).count == 0);

    // a node shorter than k contributes nothing
    GenomeGraph two = GenomeGraph::from_adjacency({bases("AC"), bases("AACGTA")}, {{1}, {}});
    MinimizerIndex idx2 = MinimizerIndex::build(two, p, 4);
    for (const SeedLocation& loc : idx2.locations()) {
        CHECK(loc.node_id == 1);
    }
    CHECK(idx2.locations().size() == 3);
}

TEST_CASE("lookup returns several locations") {
    MinimizerParams p{1, 4, ScoreMode::Hash, StrandMode::Forward};
    GenomeGraph g = GenomeGraph::from_adjacency({bases("ACGT"), bases("ACGT"), bases("GACGT")}, {{1}, {2}, {}});
    MinimizerIndex idx = MinimizerIndex::build(g, p, 3);
    LookupResult r = idx.lookup(hash_kmer(pack_kmer(bases("ACGT")), 4));
    REQUIRE(r.count == 3);
    CHECK(r.locations[0] == SeedLocation{0, 0});
    CHECK(r.locations[1] == SeedLocation{1, 0});
    CHECK(r.locations[2] == SeedLocation{2, 1});
}

TEST_CASE("index structure on random graphs") {
    Rng rng(8);
    for (int t = 0; t < 30; ++t) {
        GenomeGraph g = graphmap::testing::random_graph(80, rng, 40);
        MinimizerParams p{1 + static_cast<uint32_t>(rng() % 8), 3 + static_cast<uint32_t>(rng() % 8)};
        uint32_t bits = static_cast<uint32_t>(rng() % 9);
        MinimizerIndex idx = MinimizerIndex::build(g, p, bits);

        // expected content from per-node minimizers
        std::map<uint64_t, std::vector<SeedLocation>> expected;
        for (NodeId u = 0; u < g.node_count(); ++u) {
            std::vector<Base> seq = g.node_sequence(u);
            for (const Minimizer& m : find_minimizers(seq, p)) {
                std::vector<Base> kmer(seq.begin() + m.start, seq.begin() + m.end + 1);
                CHECK(hash_kmer(pack_kmer(kmer), p.k) == m.hash);
                expected[m.hash].push_back({u, m.start});
            }
        }
        CHECK(idx.minimizers().size() == expected.size());

        uint64_t total = 0;
        for (const MinimizerEntry& e : idx.minimizers()) {
            total += e.loc_count;
        }
        CHECK(total == idx.locations().size());

        for (uint64_t b = 0; b < idx.bucket_count(); ++b) {
            BucketEntry be = idx.bucket(b);
            for (uint32_t i = be.start; i < be.start + be.count; ++i) {
                CHECK(idx.bucket_of(idx.minimizers()[i].hash) == b);
                if (i > be.start) {
                    CHECK(idx.minimizers()[i - 1].hash < idx.minimizers()[i].hash);
                }
            }
        }
        for (auto& [hash, locs] : expected) {
            std::sort(locs.begin(), locs.end());
            LookupResult r = idx.lookup(hash);
            CHECK(r.count == locs.size());
            CHECK(std::vector<SeedLocation>(r.locations.begin(), r.locations.end()) == locs);
        }
    }
}

TEST_CASE("w = 1 indexes every k-mer") {
    Rng rng(12);
    std::vector<Base> s = random_bases(500, rng);
    MinimizerIndex idx = MinimizerIndex::build(GenomeGraph::from_adjacency({s}, {{}}), {1, 12}, 6);
    CHECK(idx.locations().size() == s.size() - 11);
}

TEST_CASE("frequency threshold") {
    SUBCASE("all minimizers unique") {
        MinimizerIndex idx = MinimizerIndex::build(single_node("AACGTACCGT"), {1, 5}, 2);
        FrequencyThreshold th = compute_threshold(idx);
        CHECK(th.max_occurrences >= 1);
        for (const MinimizerEntry& e : idx.minimizers()) {
            CHECK(e.loc_count <= th.max_occurrences);
        }
    }
    SUBCASE("two heavy minimizers out of ten thousand") {
        Rng rng(13);
        const uint32_t k = 15;
        std::set<std::vector<Base>> unique;
        while (unique.size() < 10000) {
            unique.insert(random_bases(k, rng));
        }
        std::vector<std::vector<Base>> kmers(unique.begin(), unique.end());
        std::vector<std::vector<Base>> nodes;
        for (size_t i = 0; i < kmers.size(); ++i) {
            int copies = i < 2 ? 100 : 1;
            for (int c = 0; c < copies; ++c) {
                nodes.push_back(kmers[i]);
            }
        }
        std::vector<std::vector<NodeId>> edges(nodes.size());
        MinimizerIndex idx = MinimizerIndex::build(GenomeGraph::from_adjacency(nodes, edges), {1, k}, 12);
        REQUIRE(idx.minimizers().size() == 10000);

        FrequencyThreshold th = compute_threshold(idx, 0.0002);
        size_t discarded = 0;
        for (const MinimizerEntry& e : idx.minimizers()) {
            discarded += e.loc_count > th.max_occurrences ? 1 : 0;
            if (e.loc_count > th.max_occurrences) {
                CHECK(e.loc_count == 100);
            }
        }
        CHECK(discarded == 2);

        FrequencyThreshold none = compute_threshold(idx, 0.0);
        for (const MinimizerEntry& e : idx.minimizers()) {
            CHECK(e.loc_count <= none.max_occurrences);
        }
    }
    SUBCASE("empty index") {
        MinimizerIndex idx = MinimizerIndex::build(single_node("AC"), {1, 5}, 2);
        try {
            compute_threshold(idx);
            FAIL("expected an error");
        }
        catch (const Error& e) {
            CHECK(e.code() == ErrorCode::EmptyIndex);
        }
    }
}

TEST_CASE("index serialization") {
    MinimizerIndex one = MinimizerIndex::build(single_node("ACGTA"), {1, 5}, 0);
    REQUIRE(one.bucket_count() == 1);
    REQUIRE(one.minimizers().size() == 1);
    REQUIRE(one.locations().size() == 1);
    std::vector<uint8_t> bytes = serialize_index(one);
    CHECK(bytes.size() == MinimizerIndex::kHeaderBytes + 4 + 12 + 8);
    CHECK(bytes.size() == serialized_index_bytes(0, 1, 1));
    CHECK(deserialize_index(bytes) == one);

    for (size_t cut : {size_t{0}, size_t{10}, bytes.size() - 1}) {
        std::vector<uint8_t> truncated(bytes.begin(), bytes.begin() + static_cast<ptrdiff_t>(cut));
        try {
            deserialize_index(truncated);
            FAIL("expected an error");
        }
        catch (const Error& e) {
            CHECK(e.code() == ErrorCode::Format);
        }
    }

    Rng rng(14);
    for (int t = 0; t < 30; ++t) {
        GenomeGraph g = graphmap::testing::random_graph(50, rng, 30);
        MinimizerParams p{1 + static_cast<uint32_t>(rng() % 10), 4 + static_cast<uint32_t>(rng() % 10),
                          t % 2 ? ScoreMode::Hash : ScoreMode::Lexicographic,
                          t % 3 ? StrandMode::Forward : StrandMode::Canonical};
        MinimizerIndex idx = MinimizerIndex::build(g, p, static_cast<uint32_t>(rng() % 10));
        std::vector<uint8_t> b = serialize_index(idx);
        CHECK(b.size() == serialized_index_bytes(idx.bucket_bits(), idx.minimizers().size(), idx.locations().size()));
        MinimizerIndex back = deserialize_index(b);
        CHECK(back == idx);
        CHECK(back.params().score == p.score);
        CHECK(back.params().strand == p.strand);
        CHECK(serialize_index(MinimizerIndex::build(g, p, idx.bucket_bits())) == b);
    }
}

TEST_CASE("index statistics") {
    MinimizerParams p{1, 4};
    GenomeGraph g = GenomeGraph::from_adjacency({bases("ACGT"), bases("ACGT"), bases("TTTTT")}, {{1}, {2}, {}});
    IndexStats s = MinimizerIndex::build(g, p, 2).stats();
    CHECK(s.buckets == 4);
    CHECK(s.distinct_minimizers == 2);
    CHECK(s.total_locations == 4);
    CHECK(s.max_locations_per_minimizer == 2);
    std::string text = format_index_stats(s);
    CHECK(text.find("distinct_minimizers\t2") != std::string::npos);
}
