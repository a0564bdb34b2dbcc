#include <sstream>
#include <unordered_map>

#include "graphmap/error.hpp"
#include "graphmap/graph.hpp"

namespace graphmap {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    size_t start = 0;
    while (true) {
        size_t tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    return fields;
}

std::string at_line(size_t line_no) {
    return "line " + std::to_string(line_no) + ": ";
}

struct PendingLink {
    std::string from;
    std::string to;
    size_t line_no;
};

} // namespace

ParsedGfa parse_gfa(std::istream& in) {
    std::vector<std::vector<Base>> sequences;
    std::vector<std::string> names;
    std::unordered_map<std::string, NodeId> ids;
    std::vector<PendingLink> links;

    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        auto fields = split_tabs(line);
        std::string_view type = fields[0];
        if (type == "S") {
            if (fields.size() < 3 || fields[1].empty()) {
                throw Error(ErrorCode::Parse, at_line(line_no) + "malformed S record");
            }
            if (fields[2] == "*") {
                throw Error(ErrorCode::Unsupported, at_line(line_no) + "segment without inline sequence");
            }
            std::vector<Base> codes;
            if (!try_encode_sequence(fields[2], codes)) {
                throw Error(ErrorCode::Alphabet, at_line(line_no) + "segment " +
                                                     std::string(fields[1]) + " contains a non-ACGT base");
            }
            if (codes.empty()) {
                throw Error(ErrorCode::Parse, at_line(line_no) + "empty segment sequence");
            }
            std::string name(fields[1]);
            if (!ids.emplace(name, static_cast<NodeId>(sequences.size())).second) {
                throw Error(ErrorCode::Parse, at_line(line_no) + "duplicate segment " + name);
            }
            names.push_back(std::move(name));
            sequences.push_back(std::move(codes));
        }
        else if (type == "L") {
            if (fields.size() < 6) {
                throw Error(ErrorCode::Parse, at_line(line_no) + "malformed L record");
            }
            if ((fields[2] != "+" && fields[2] != "-") || (fields[4] != "+" && fields[4] != "-")) {
                throw Error(ErrorCode::Parse, at_line(line_no) + "bad link orientation");
            }
            if (fields[2] != "+" || fields[4] != "+") {
                throw Error(ErrorCode::Unsupported, at_line(line_no) + "reverse-strand links are not supported");
            }
            if (fields[5] != "0M" && fields[5] != "*") {
                throw Error(ErrorCode::Unsupported, at_line(line_no) + "only 0M link overlaps are supported");
            }
            links.push_back({std::string(fields[1]), std::string(fields[3]), line_no});
        }
        else if (type.size() != 1 && type[0] != '#') {
            throw Error(ErrorCode::Parse, at_line(line_no) + "unrecognized record type");
        }
        // H, P, W, C and comment lines carry nothing we need
    }

    std::vector<std::vector<NodeId>> adjacency(sequences.size());
    for (const PendingLink& link : links) {
        auto from = ids.find(link.from);
        auto to = ids.find(link.to);
        if (from == ids.end() || to == ids.end()) {
            throw Error(ErrorCode::Reference, at_line(link.line_no) + "link references undeclared segment " +
                                                  (from == ids.end() ? link.from : link.to));
        }
        adjacency[from->second].push_back(to->second);
    }

    ParsedGfa parsed;
    parsed.graph = GenomeGraph::from_adjacency(sequences, adjacency);
    parsed.segment_names = std::move(names);
    return parsed;
}

ParsedGfa parse_gfa_string(const std::string& text) {
    std::istringstream in(text);
    return parse_gfa(in);
}

std::string write_gfa(const GenomeGraph& graph) {
    std::ostringstream out;
    out << "H\tVN:Z:1.0\n";
    for (NodeId id = 0; id < graph.node_count(); ++id) {
        out << "S\t" << (id + 1) << '\t' << graph.node_string(id) << '\n';
    }
    for (NodeId id = 0; id < graph.node_count(); ++id) {
        for (NodeId v : graph.out_edges(id)) {
            out << "L\t" << (id + 1) << "\t+\t" << (v + 1) << "\t+\t0M\n";
        }
    }
    return out.str();
}

} // namespace graphmap
