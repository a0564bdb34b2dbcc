#ifndef graphmap_dna_hpp
#define graphmap_dna_hpp

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace graphmap {

// 2-bit base codes: A:00, C:01, G:10, T:11
using Base = uint8_t;

constexpr Base kInvalidBase = 4;

constexpr Base encode_base(char c) noexcept {
    switch (c) {
        case 'A': case 'a': return 0;
        case 'C': case 'c': return 1;
        case 'G': case 'g': return 2;
        case 'T': case 't': return 3;
        default: return kInvalidBase;
    }
}

constexpr char decode_base(Base b) noexcept {
    return "ACGT"[b & 3];
}

// Throws Error(Alphabet) on anything outside A/C/G/T (case-insensitive).
std::vector<Base> encode_sequence(std::string_view seq);

// Non-throwing variant; returns false on an invalid symbol.
bool try_encode_sequence(std::string_view seq, std::vector<Base>& out);

std::string decode_sequence(const std::vector<Base>& codes);

/*
 * Bases packed four to a byte, base i in bits 2*(i%4)..2*(i%4)+1 of byte i/4.
 * This is also the on-disk layout of the character table.
 */
class PackedSequence {
public:
    PackedSequence() = default;

    void push_back(Base b);
    void append(const std::vector<Base>& codes);

    Base operator[](size_t i) const noexcept {
        return (bytes_[i >> 2] >> ((i & 3) * 2)) & 3;
    }

    size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    const std::vector<uint8_t>& bytes() const noexcept { return bytes_; }
    static PackedSequence from_bytes(std::vector<uint8_t> bytes, size_t size);

    std::vector<Base> extract(size_t start, size_t len) const;

    bool operator==(const PackedSequence& other) const = default;

private:
    std::vector<uint8_t> bytes_;
    size_t size_ = 0;
};

} // namespace graphmap

#endif
