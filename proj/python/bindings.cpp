#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>

#include "graphmap/bitalign.hpp"
#include "graphmap/error.hpp"
#include "graphmap/graph.hpp"
#include "graphmap/index.hpp"
#include "graphmap/mapper.hpp"
#include "graphmap/oracle.hpp"
#include "graphmap/perfmodel.hpp"
#include "graphmap/simulate.hpp"

namespace py = pybind11;
using namespace graphmap;

namespace {

py::bytes to_bytes(const std::vector<uint8_t>& v) {
    return py::bytes(reinterpret_cast<const char*>(v.data()), v.size());
}

std::vector<uint8_t> from_bytes(const py::bytes& b) {
    std::string s = b;
    return {s.begin(), s.end()};
}

py::dict alignment_dict(const AlignmentResult& aln) {
    py::dict d;
    d["aligned"] = aln.aligned;
    d["edit_distance"] = aln.edit_distance;
    d["cigar"] = aln.cigar.to_string();
    py::list path;
    for (const GlobalOffset& p : aln.path) {
        path.append(py::make_tuple(p.node_id, p.offset, p.linear_pos));
    }
    d["path"] = path;
    d["windows"] = aln.windows.size();
    return d;
}

ScoreMode score_mode(const std::string& s) {
    if (s == "hash") {
        return ScoreMode::Hash;
    }
    if (s == "lex") {
        return ScoreMode::Lexicographic;
    }
    throw Error(ErrorCode::Config, "score must be 'hash' or 'lex'");
}

StrandMode strand_mode(const std::string& s) {
    if (s == "fwd") {
        return StrandMode::Forward;
    }
    if (s == "canonical") {
        return StrandMode::Canonical;
    }
    throw Error(ErrorCode::Config, "strand must be 'fwd' or 'canonical'");
}

// Keeps the graph and index alive for as long as the mapper exists.
struct PyMapper {
    std::shared_ptr<const GenomeGraph> graph;
    std::shared_ptr<const MinimizerIndex> index;
    Mapper mapper;
};

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "graphmap core bindings";

    static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        }
        catch (const Error& e) {
            py::set_error(error, (std::string(error_code_name(e.code())) + ": " + e.what()).c_str());
        }
    });

    py::class_<GenomeGraph, std::shared_ptr<GenomeGraph>>(m, "Graph")
        .def_property_readonly("node_count", &GenomeGraph::node_count)
        .def_property_readonly("edge_count", &GenomeGraph::edge_count)
        .def_property_readonly("char_count", &GenomeGraph::char_count)
        .def("node_sequence", &GenomeGraph::node_string)
        .def("out_edges", [](const GenomeGraph& g, NodeId id) {
            if (id >= g.node_count()) {
                throw Error(ErrorCode::Bounds, "node id out of range");
            }
            std::span<const NodeId> e = g.out_edges(id);
            return std::vector<NodeId>(e.begin(), e.end());
        })
        .def("is_topologically_sorted", &GenomeGraph::is_topologically_sorted)
        .def("to_gfa", &write_gfa)
        .def("serialize", [](const GenomeGraph& g) { return to_bytes(serialize_graph(g)); })
        .def_static("deserialize", [](const py::bytes& b) {
            return std::make_shared<GenomeGraph>(deserialize_graph(from_bytes(b)));
        });

    m.def("parse_gfa", [](const std::string& text, bool sort) {
        ParsedGfa parsed = parse_gfa_string(text);
        if (sort) {
            return std::make_shared<GenomeGraph>(topo_sort(parsed.graph).graph);
        }
        return std::make_shared<GenomeGraph>(std::move(parsed.graph));
    }, py::arg("text"), py::arg("sort") = true, "Parse GFA v1 text, topologically sorted by default.");

    py::class_<MinimizerIndex, std::shared_ptr<MinimizerIndex>>(m, "Index")
        .def_static("build", [](const GenomeGraph& g, uint32_t w, uint32_t k, uint32_t bucket_bits,
                                const std::string& score, const std::string& strand) {
            MinimizerParams p{w, k, score_mode(score), strand_mode(strand)};
            return std::make_shared<MinimizerIndex>(MinimizerIndex::build(g, p, bucket_bits));
        }, py::arg("graph"), py::arg("w") = 10, py::arg("k") = 15, py::arg("bucket_bits") = 12,
           py::arg("score") = "hash", py::arg("strand") = "fwd")
        .def_property_readonly("bucket_bits", &MinimizerIndex::bucket_bits)
        .def("lookup", [](const MinimizerIndex& idx, uint64_t hash) {
            std::vector<std::pair<NodeId, uint32_t>> out;
            for (const SeedLocation& loc : idx.lookup(hash).locations) {
                out.emplace_back(loc.node_id, loc.offset);
            }
            return out;
        })
        .def("stats", [](const MinimizerIndex& idx) {
            IndexStats s = idx.stats();
            py::dict d;
            d["buckets"] = s.buckets;
            d["distinct_minimizers"] = s.distinct_minimizers;
            d["total_locations"] = s.total_locations;
            d["max_minimizers_per_bucket"] = s.max_minimizers_per_bucket;
            d["max_locations_per_minimizer"] = s.max_locations_per_minimizer;
            return d;
        })
        .def("threshold", [](const MinimizerIndex& idx, double fraction) {
            return compute_threshold(idx, fraction).max_occurrences;
        }, py::arg("fraction") = 0.0002)
        .def("serialize", [](const MinimizerIndex& idx) { return to_bytes(serialize_index(idx)); })
        .def_static("deserialize", [](const py::bytes& b) {
            return std::make_shared<MinimizerIndex>(deserialize_index(from_bytes(b)));
        });

    m.def("find_minimizers", [](const std::string& seq, uint32_t w, uint32_t k, const std::string& score) {
        std::vector<Base> bases = encode_sequence(seq);
        std::vector<std::tuple<uint64_t, uint32_t, uint32_t>> out;
        for (const Minimizer& mz : find_minimizers(bases, {w, k, score_mode(score), StrandMode::Forward})) {
            out.emplace_back(mz.hash, mz.start, mz.end);
        }
        return out;
    }, py::arg("seq"), py::arg("w"), py::arg("k"), py::arg("score") = "hash",
       "(hash, start, end) of each window minimizer.");

    m.def("align_to_sequence", [](const std::string& read, const std::string& text, double error_rate) {
        Subgraph chain = Subgraph::chain(encode_sequence(text));
        return alignment_dict(align(encode_sequence(read), chain, error_rate));
    }, py::arg("read"), py::arg("text"), py::arg("error_rate") = 0.1);

    m.def("s2s_edit_distance", [](const std::string& text, const std::string& pattern, bool global) {
        return oracle::s2s_edit_distance(encode_sequence(text), encode_sequence(pattern),
                                         global ? oracle::S2sMode::Global : oracle::S2sMode::SemiGlobal);
    }, py::arg("text"), py::arg("pattern"), py::arg("global_") = false);

    py::class_<PyMapper>(m, "Mapper")
        .def(py::init([](std::shared_ptr<GenomeGraph> g, std::shared_ptr<MinimizerIndex> idx, double error_rate,
                         uint32_t window, uint32_t hop_limit) {
            MapParams p;
            p.error_rate = error_rate;
            p.window = WindowConfig::with_width(window);
            p.hop_limit = hop_limit;
            return std::make_unique<PyMapper>(PyMapper{g, idx, Mapper(*g, *idx, p)});
        }), py::arg("graph"), py::arg("index"), py::arg("error_rate") = 0.1, py::arg("window") = 128,
            py::arg("hop_limit") = kDefaultHopLimit)
        .def("map", [](const PyMapper& pm, const std::string& read) {
            MappingOutcome res = pm.mapper.map(encode_sequence(read));
            py::dict d = alignment_dict(res.alignment);
            d["mapped"] = res.mapped;
            d["region"] = py::make_tuple(res.region.x, res.region.y);
            d["seeds"] = res.seed_stats.seeds;
            d["regions"] = res.regions;
            return d;
        });

    m.def("perf_report", [](uint64_t read_length, uint32_t window, int overlap) {
        perf::AcceleratorConfig cfg;
        cfg.window = window;
        cfg.overlap = overlap < 0 ? window * 3 / 8 : static_cast<uint32_t>(overlap);
        perf::PerfReport r = perf::perf_report(read_length, cfg);
        py::dict d;
        d["windows"] = r.windows;
        d["cycles_per_window"] = r.cycles_per_window;
        d["total_cycles"] = r.total_cycles;
        d["time_us"] = r.time_us;
        py::dict pads;
        for (const perf::ScratchpadEntry& e : r.scratchpads.entries) {
            pads[py::str(e.name)] = e.bytes;
        }
        d["scratchpads"] = pads;
        d["bitvector_bytes_total"] = r.scratchpads.bitvector_bytes_total;
        d["hop_queue_bytes_total"] = r.scratchpads.hop_queue_bytes_total;
        d["pe_write_bytes_per_cycle"] = r.scratchpads.pe_write_bytes_per_cycle;
        return d;
    }, py::arg("read_length") = 10000, py::arg("window") = 128, py::arg("overlap") = -1);

    m.def("footprint", [](uint64_t nodes, uint64_t edges, uint64_t chars, uint32_t bucket_bits, uint64_t minimizers,
                          uint64_t locations) {
        perf::FootprintReport f = perf::footprint_report({nodes, edges, chars}, {bucket_bits, minimizers, locations});
        return py::make_tuple(f.graph_bytes, f.index_bytes);
    }, py::arg("nodes"), py::arg("edges"), py::arg("chars"), py::arg("bucket_bits") = 24,
       py::arg("minimizers") = 0, py::arg("locations") = 0, "(graph_bytes, index_bytes) of the serialized files.");

    m.def("simulate_graph", [](uint64_t length, double variant_rate, uint64_t seed) {
        sim::Rng rng(seed);
        sim::GraphParams gp;
        gp.backbone_length = length;
        gp.variant_rate = variant_rate;
        return std::make_shared<GenomeGraph>(sim::random_graph(gp, rng).graph);
    }, py::arg("length"), py::arg("variant_rate") = 0.001, py::arg("seed") = 1);

    m.def("sample_read", [](const GenomeGraph& g, uint64_t length, uint64_t seed) {
        sim::Rng rng(seed);
        sim::SampledRead r = sim::sample_read(g, length, rng);
        return py::make_tuple(decode_sequence(r.bases), r.path.front().linear_pos);
    }, py::arg("graph"), py::arg("length"), py::arg("seed") = 1, "(sequence, start linear position)");
}
