#include "graphmap/reads.hpp"

#include <zlib.h>

#include <algorithm>
#include <cctype>

#include "graphmap/error.hpp"

namespace graphmap {

struct SequenceReader::Impl {
    gzFile file = nullptr;
    std::string pending;  // header line read ahead while scanning FASTA
    bool has_pending = false;
    size_t line_no = 0;
};

SequenceReader::SequenceReader(const std::string& path) : impl_(std::make_unique<Impl>()) {
    impl_->file = gzopen(path.c_str(), "rb");
    if (impl_->file == nullptr) {
        throw Error(ErrorCode::Io, "cannot open " + path);
    }
}

SequenceReader::~SequenceReader() {
    if (impl_ && impl_->file != nullptr) {
        gzclose(impl_->file);
    }
}

bool SequenceReader::read_line(std::string& line) {
    line.clear();
    char buf[4096];
    bool any = false;
    while (gzgets(impl_->file, buf, sizeof(buf)) != nullptr) {
        any = true;
        line += buf;
        if (!line.empty() && line.back() == '\n') {
            break;
        }
    }
    if (!any) {
        return false;
    }
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) {
        line.pop_back();
    }
    ++impl_->line_no;
    return true;
}

namespace {

std::string header_id(const std::string& line) {
    size_t end = line.find_first_of(" \t", 1);
    return line.substr(1, end == std::string::npos ? std::string::npos : end - 1);
}

void uppercase(std::string& s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
}

} // namespace

std::optional<SequenceRecord> SequenceReader::next() {
    std::string line;
    if (impl_->has_pending) {
        line = std::move(impl_->pending);
        impl_->has_pending = false;
    }
    else {
        do {
            if (!read_line(line)) {
                return std::nullopt;
            }
        } while (line.empty());
    }

    SequenceRecord rec;
    if (line[0] == '>') {
        rec.id = header_id(line);
        std::string next_line;
        while (read_line(next_line)) {
            if (!next_line.empty() && next_line[0] == '>') {
                impl_->pending = std::move(next_line);
                impl_->has_pending = true;
                break;
            }
            rec.sequence += next_line;
        }
        uppercase(rec.sequence);
        return rec;
    }
    if (line[0] == '@') {
        rec.id = header_id(line);
        std::string plus;
        std::string quality;
        if (!read_line(rec.sequence) || !read_line(plus) || plus.empty() || plus[0] != '+' ||
            !read_line(quality)) {
            throw Error(ErrorCode::Parse, "truncated FASTQ record " + rec.id);
        }
        if (quality.size() != rec.sequence.size()) {
            throw Error(ErrorCode::Parse, "FASTQ record " + rec.id + " has mismatched quality length");
        }
        uppercase(rec.sequence);
        return rec;
    }
    throw Error(ErrorCode::Parse, "line " + std::to_string(impl_->line_no) +
                                      ": expected a FASTA or FASTQ header");
}

} // namespace graphmap
