#ifndef graphmap_byte_io_hpp
#define graphmap_byte_io_hpp

#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "graphmap/error.hpp"

namespace graphmap::detail {

class ByteWriter {
public:
    explicit ByteWriter(size_t reserve = 0) { buf_.reserve(reserve); }

    template<typename T>
    void put(T value) {
        for (size_t i = 0; i < sizeof(T); ++i) {
            buf_.push_back(static_cast<uint8_t>(static_cast<uint64_t>(value) >> (8 * i)));
        }
    }

    void put_bytes(std::span<const uint8_t> bytes) {
        buf_.insert(buf_.end(), bytes.begin(), bytes.end());
    }

    std::vector<uint8_t> take() { return std::move(buf_); }

private:
    std::vector<uint8_t> buf_;
};

class ByteReader {
public:
    ByteReader(std::span<const uint8_t> bytes, const char* what) : bytes_(bytes), what_(what) {}

    template<typename T>
    T get() {
        require(sizeof(T));
        uint64_t value = 0;
        for (size_t i = 0; i < sizeof(T); ++i) {
            value |= static_cast<uint64_t>(bytes_[pos_ + i]) << (8 * i);
        }
        pos_ += sizeof(T);
        return static_cast<T>(value);
    }

    std::span<const uint8_t> get_bytes(size_t n) {
        require(n);
        auto out = bytes_.subspan(pos_, n);
        pos_ += n;
        return out;
    }

    void require(size_t n) const {
        if (n > bytes_.size() - pos_) {
            throw Error(ErrorCode::Format, std::string("truncated ") + what_ + " buffer");
        }
    }

    size_t remaining() const noexcept { return bytes_.size() - pos_; }

private:
    std::span<const uint8_t> bytes_;
    size_t pos_ = 0;
    const char* what_;
};

} // namespace graphmap::detail

#endif
