#include "graphmap/cigar.hpp"

#include "graphmap/error.hpp"

namespace graphmap {

void Cigar::push(EditOp op, uint32_t count) {
    if (count == 0) {
        return;
    }
    if (!runs_.empty() && runs_.back().op == op) {
        runs_.back().length += count;
    }
    else {
        runs_.push_back({op, count});
    }
}

void Cigar::append(const Cigar& other) {
    for (const CigarRun& run : other.runs_) {
        push(run.op, run.length);
    }
}

Cigar Cigar::from_ops(const std::vector<EditOp>& ops) {
    Cigar cigar;
    for (EditOp op : ops) {
        cigar.push(op);
    }
    return cigar;
}

Cigar Cigar::parse(std::string_view text) {
    Cigar cigar;
    if (text == "*") {
        return cigar;
    }
    uint64_t length = 0;
    bool have_digits = false;
    for (char c : text) {
        if (c >= '0' && c <= '9') {
            length = length * 10 + static_cast<uint64_t>(c - '0');
            have_digits = true;
            if (length > UINT32_MAX) {
                throw Error(ErrorCode::Parse, "CIGAR run length overflows");
            }
            continue;
        }
        if (!have_digits || (c != 'M' && c != 'X' && c != 'I' && c != 'D')) {
            throw Error(ErrorCode::Parse, "malformed CIGAR string '" + std::string(text) + "'");
        }
        cigar.push(static_cast<EditOp>(c), static_cast<uint32_t>(length));
        length = 0;
        have_digits = false;
    }
    if (have_digits) {
        throw Error(ErrorCode::Parse, "CIGAR string ends with a dangling length");
    }
    return cigar;
}

uint64_t Cigar::count(EditOp op) const {
    uint64_t total = 0;
    for (const CigarRun& run : runs_) {
        if (run.op == op) {
            total += run.length;
        }
    }
    return total;
}

uint64_t Cigar::edit_count() const {
    return count(EditOp::Mismatch) + count(EditOp::Insertion) + count(EditOp::Deletion);
}

uint64_t Cigar::read_length() const {
    return count(EditOp::Match) + count(EditOp::Mismatch) + count(EditOp::Insertion);
}

uint64_t Cigar::graph_length() const {
    return count(EditOp::Match) + count(EditOp::Mismatch) + count(EditOp::Deletion);
}

std::string Cigar::to_string() const {
    if (runs_.empty()) {
        return "*";
    }
    std::string s;
    for (const CigarRun& run : runs_) {
        s += std::to_string(run.length);
        s += static_cast<char>(run.op);
    }
    return s;
}

} // namespace graphmap
