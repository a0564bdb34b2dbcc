#include "graphmap/dna.hpp"

#include "graphmap/error.hpp"

namespace graphmap {

std::vector<Base> encode_sequence(std::string_view seq) {
    std::vector<Base> out;
    out.reserve(seq.size());
    for (size_t i = 0; i < seq.size(); ++i) {
        Base b = encode_base(seq[i]);
        if (b == kInvalidBase) {
            throw Error(ErrorCode::Alphabet, "invalid base '" + std::string(1, seq[i]) +
                                                 "' at position " + std::to_string(i));
        }
        out.push_back(b);
    }
    return out;
}

bool try_encode_sequence(std::string_view seq, std::vector<Base>& out) {
    out.clear();
    out.reserve(seq.size());
    for (char c : seq) {
        Base b = encode_base(c);
        if (b == kInvalidBase) {
            return false;
        }
        out.push_back(b);
    }
    return true;
}

std::string decode_sequence(const std::vector<Base>& codes) {
    std::string s(codes.size(), 'A');
    for (size_t i = 0; i < codes.size(); ++i) {
        s[i] = decode_base(codes[i]);
    }
    return s;
}

void PackedSequence::push_back(Base b) {
    if ((size_ & 3) == 0) {
        bytes_.push_back(0);
    }
    bytes_.back() |= static_cast<uint8_t>((b & 3) << ((size_ & 3) * 2));
    ++size_;
}

void PackedSequence::append(const std::vector<Base>& codes) {
    bytes_.reserve((size_ + codes.size() + 3) / 4);
    for (Base b : codes) {
        push_back(b);
    }
}

PackedSequence PackedSequence::from_bytes(std::vector<uint8_t> bytes, size_t size) {
    if (bytes.size() != (size + 3) / 4) {
        throw Error(ErrorCode::Format, "character table size does not match character count");
    }
    // padding bits of the final byte must be zero so equality stays structural
    if ((size & 3) != 0 && (bytes.back() >> ((size & 3) * 2)) != 0) {
        throw Error(ErrorCode::Format, "nonzero padding in character table");
    }
    PackedSequence seq;
    seq.bytes_ = std::move(bytes);
    seq.size_ = size;
    return seq;
}

std::vector<Base> PackedSequence::extract(size_t start, size_t len) const {
    std::vector<Base> out(len);
    for (size_t i = 0; i < len; ++i) {
        out[i] = (*this)[start + i];
    }
    return out;
}

} // namespace graphmap
