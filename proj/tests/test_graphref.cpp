#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "graphmap/error.hpp"
#include "graphmap/graph.hpp"
#include "support.hpp"

using namespace graphmap;
using graphmap::testing::Rng;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    }
    catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::Io;
}

bool edges_sorted(const GenomeGraph& g) {
    for (NodeId u = 0; u < g.node_count(); ++u) {
        for (NodeId v : g.out_edges(u)) {
            if (!(u < v)) {
                return false;
            }
        }
    }
    return true;
}

} // namespace

TEST_CASE("base codes round trip") {
    for (char c : std::string("ACGT")) {
        CHECK(decode_base(encode_base(c)) == c);
    }
    CHECK(encode_base('A') == 0);
    CHECK(encode_base('C') == 1);
    CHECK(encode_base('G') == 2);
    CHECK(encode_base('T') == 3);
    CHECK(encode_base('g') == 2);
    CHECK(encode_base('N') == kInvalidBase);
    CHECK(code_of([] { encode_sequence("ACNT"); }) == ErrorCode::Alphabet);
}

TEST_CASE("packed sequence layout") {
    PackedSequence p;
    p.append(encode_sequence("ACGTA"));
    REQUIRE(p.bytes().size() == 2);
    // A C G T -> 00 01 10 11 from the low bits up
    CHECK(p.bytes()[0] == 0b11100100);
    CHECK(p.bytes()[1] == 0);
    CHECK(decode_sequence(p.extract(1, 3)) == "CGT");
    CHECK(PackedSequence::from_bytes(p.bytes(), 5) == p);
    CHECK(code_of([&] { PackedSequence::from_bytes({0x00, 0xFF}, 5); }) == ErrorCode::Format);
}

TEST_CASE("parse two segments and one link") {
    ParsedGfa parsed = parse_gfa_string("H\tVN:Z:1.0\nS\t1\tACG\nS\t2\tT\nL\t1\t+\t2\t+\t0M\n");
    const GenomeGraph& g = parsed.graph;
    CHECK(g.node_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.char_count() == 4);
    CHECK(decode_sequence(g.chars().extract(0, 4)) == "ACGT");
    CHECK(g.chars().bytes().size() == 1);
    CHECK(g.out_edges(0).size() == 1);
    CHECK(g.out_edges(0)[0] == 1);
    CHECK(parsed.segment_names == std::vector<std::string>{"1", "2"});
}

TEST_CASE("parse a single segment") {
    ParsedGfa parsed = parse_gfa_string("S\tx\tacgt\n");
    CHECK(parsed.graph.node_count() == 1);
    CHECK(parsed.graph.edge_count() == 0);
    CHECK(parsed.graph.node_string(0) == "ACGT");
}

TEST_CASE("gfa errors") {
    CHECK(code_of([] { parse_gfa_string("S\t1\tACG\nL\t1\t+\t9\t+\t0M\n"); }) == ErrorCode::Reference);
    CHECK(code_of([] { parse_gfa_string("S\t1\tACN\n"); }) == ErrorCode::Alphabet);
    CHECK(code_of([] { parse_gfa_string("S\t1\tA\nS\t2\tC\nL\t1\t+\t2\t-\t0M\n"); }) == ErrorCode::Unsupported);
    CHECK(code_of([] { parse_gfa_string("S\t1\tA\nS\t2\tC\nL\t1\t+\t2\t+\t3M\n"); }) == ErrorCode::Unsupported);
    CHECK(code_of([] { parse_gfa_string("S\t1\n"); }) == ErrorCode::Parse);
    CHECK(code_of([] { parse_gfa_string("S\t1\tA\nS\t1\tC\n"); }) == ErrorCode::Parse);

    try {
        parse_gfa_string("S\t1\tA\nS\t2\tC\nL\t1\t+\t3\t+\t0M\n");
        FAIL("expected an error");
    }
    catch (const Error& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("gfa writer round trip") {
    Rng rng(11);
    for (int t = 0; t < 20; ++t) {
        GenomeGraph g = graphmap::testing::random_graph(30, rng);
        CHECK(parse_gfa_string(write_gfa(g)).graph == g);
    }
}

TEST_CASE("topological sort") {
    SUBCASE("sorted chain is unchanged") {
        GenomeGraph g = GenomeGraph::from_adjacency({{0}, {1}, {2}}, {{1}, {2}, {}});
        SortedGraph s = topo_sort(g);
        CHECK(s.graph == g);
        CHECK(s.old_to_new == std::vector<NodeId>{0, 1, 2});
    }
    SUBCASE("reversed edge swaps the nodes") {
        GenomeGraph g = GenomeGraph::from_adjacency({{0}, {1, 2}}, {{}, {0}});
        SortedGraph s = topo_sort(g);
        CHECK(s.old_to_new == std::vector<NodeId>{1, 0});
        CHECK(s.graph.node_string(0) == "CG");
        CHECK(s.graph.node_string(1) == "A");
        REQUIRE(s.graph.out_edges(0).size() == 1);
        CHECK(s.graph.out_edges(0)[0] == 1);
    }
    SUBCASE("cycle is reported") {
        GenomeGraph g = GenomeGraph::from_adjacency({{0}, {1}, {2}, {3}}, {{1}, {2}, {1, 3}, {}});
        try {
            topo_sort(g);
            FAIL("expected a cycle error");
        }
        catch (const Error& e) {
            CHECK(e.code() == ErrorCode::Cycle);
            std::string msg = e.what();
            CHECK((msg.find("node 1") != std::string::npos || msg.find("node 2") != std::string::npos));
        }
    }
    SUBCASE("random shuffled DAGs sort") {
        Rng rng(5);
        for (int t = 0; t < 50; ++t) {
            GenomeGraph g = graphmap::testing::random_graph(100, rng);
            // relabel nodes randomly, then sort
            std::vector<NodeId> perm(g.node_count());
            for (NodeId i = 0; i < perm.size(); ++i) {
                perm[i] = i;
            }
            std::shuffle(perm.begin(), perm.end(), rng);
            std::vector<std::vector<Base>> seqs(g.node_count());
            std::vector<std::vector<NodeId>> adj(g.node_count());
            for (NodeId u = 0; u < g.node_count(); ++u) {
                seqs[perm[u]] = g.node_sequence(u);
                for (NodeId v : g.out_edges(u)) {
                    adj[perm[u]].push_back(perm[v]);
                }
            }
            GenomeGraph shuffled = GenomeGraph::from_adjacency(seqs, adj);
            SortedGraph s = topo_sort(shuffled);
            CHECK(edges_sorted(s.graph));
            CHECK(s.graph.char_count() == g.char_count());
            CHECK(s.graph.edge_count() == g.edge_count());
            for (NodeId u = 0; u < shuffled.node_count(); ++u) {
                CHECK(s.graph.node_sequence(s.old_to_new[u]) == shuffled.node_sequence(u));
            }
        }
    }
}

TEST_CASE("graph serialization layout") {
    GenomeGraph g = parse_gfa_string("S\t1\tACG\nS\t2\tT\nL\t1\t+\t2\t+\t*\n").graph;
    std::vector<uint8_t> bytes = serialize_graph(g);
    CHECK(GenomeGraph::kNodeRecordBytes == 32);
    CHECK(GenomeGraph::kEdgeEntryBytes == 4);
    // node table 64 B, edge table 4 B, char table 1 B
    CHECK(bytes.size() == GenomeGraph::kHeaderBytes + 64 + 4 + 1);
    CHECK(bytes.size() == serialized_graph_bytes(2, 1, 4));
    CHECK(std::string(bytes.begin(), bytes.begin() + 4) == "GMGG");
    CHECK(deserialize_graph(bytes) == g);

    CHECK(code_of([] { deserialize_graph(std::vector<uint8_t>{}); }) == ErrorCode::Format);
    for (size_t cut : {size_t{4}, size_t{31}, size_t{40}, bytes.size() - 1}) {
        std::vector<uint8_t> truncated(bytes.begin(), bytes.begin() + static_cast<ptrdiff_t>(cut));
        CHECK(code_of([&] { deserialize_graph(truncated); }) == ErrorCode::Format);
    }
    std::vector<uint8_t> bad_magic = bytes;
    bad_magic[0] = 'X';
    CHECK(code_of([&] { deserialize_graph(bad_magic); }) == ErrorCode::Format);
    std::vector<uint8_t> bad_edge = bytes;
    bad_edge[GenomeGraph::kHeaderBytes + 64] = 7;  // destination beyond the node table
    CHECK(code_of([&] { deserialize_graph(bad_edge); }) == ErrorCode::Format);
}

TEST_CASE("serialization round trip on random graphs") {
    Rng rng(3);
    for (int t = 0; t < 100; ++t) {
        GenomeGraph g = graphmap::testing::random_graph(1 + rng() % 60, rng);
        std::vector<uint8_t> bytes = serialize_graph(g);
        CHECK(bytes.size() == serialized_graph_bytes(g.node_count(), g.edge_count(), g.char_count()));
        CHECK(deserialize_graph(bytes) == g);
    }
}

TEST_CASE("linear positions") {
    GenomeGraph g = GenomeGraph::from_adjacency({encode_sequence("ACG"), encode_sequence("TT")}, {{1}, {}});
    CHECK(linear_pos_of(g, 0, 0).linear_pos == 0);
    CHECK(linear_pos_of(g, 1, 0).linear_pos == 3);
    CHECK(code_of([&] { linear_pos_of(g, 1, 2); }) == ErrorCode::Bounds);
    CHECK(code_of([&] { linear_pos_of(g, 2, 0); }) == ErrorCode::Bounds);
    CHECK(code_of([&] { position_at(g, 5); }) == ErrorCode::Bounds);

    Rng rng(9);
    for (int t = 0; t < 20; ++t) {
        GenomeGraph r = graphmap::testing::random_graph(40, rng);
        uint64_t prev = 0;
        bool first = true;
        for (NodeId u = 0; u < r.node_count(); ++u) {
            for (uint64_t off = 0; off < r.node(u).seq_len; ++off) {
                GlobalOffset p = linear_pos_of(r, u, off);
                CHECK((first || p.linear_pos > prev));
                CHECK(position_at(r, p.linear_pos) == p);
                prev = p.linear_pos;
                first = false;
            }
        }
        CHECK(prev + 1 == r.char_count());
    }
}

TEST_CASE("graph invariants") {
    Rng rng(21);
    for (int t = 0; t < 30; ++t) {
        GenomeGraph g = graphmap::testing::random_graph(50, rng);
        uint64_t total = 0;
        for (const NodeRecord& n : g.nodes()) {
            CHECK(n.seq_len >= 1);
            CHECK(n.char_start + n.seq_len <= g.char_count());
            CHECK(n.edge_start + n.out_edge_count <= g.edge_count());
            total += n.seq_len;
        }
        CHECK(total == g.char_count());
        CHECK(g.is_topologically_sorted());
        for (NodeId v : g.edges()) {
            CHECK(v < g.node_count());
        }
    }
}
