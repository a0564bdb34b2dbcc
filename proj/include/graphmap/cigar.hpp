#ifndef graphmap_cigar_hpp
#define graphmap_cigar_hpp

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace graphmap {

enum class EditOp : char {
    Match = 'M',
    Mismatch = 'X',
    Insertion = 'I',  // read base absent from the graph path
    Deletion = 'D'    // graph base absent from the read
};

inline bool consumes_read(EditOp op) { return op != EditOp::Deletion; }
inline bool consumes_graph(EditOp op) { return op != EditOp::Insertion; }

struct CigarRun {
    EditOp op;
    uint32_t length;

    bool operator==(const CigarRun& other) const = default;
};

class Cigar {
public:
    Cigar() = default;

    void push(EditOp op, uint32_t count = 1);
    void append(const Cigar& other);

    static Cigar from_ops(const std::vector<EditOp>& ops);
    // Throws Error(Parse) on malformed strings.
    static Cigar parse(std::string_view text);

    const std::vector<CigarRun>& runs() const noexcept { return runs_; }
    bool empty() const noexcept { return runs_.empty(); }

    uint64_t count(EditOp op) const;
    uint64_t edit_count() const;
    uint64_t read_length() const;   // M + X + I
    uint64_t graph_length() const;  // M + X + D

    std::string to_string() const;

    bool operator==(const Cigar& other) const = default;

private:
    std::vector<CigarRun> runs_;
};

} // namespace graphmap

#endif
