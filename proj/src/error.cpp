#include "graphmap/error.hpp"

namespace graphmap {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::Parse: return "parse error";
        case ErrorCode::Alphabet: return "alphabet error";
        case ErrorCode::Reference: return "reference error";
        case ErrorCode::Unsupported: return "unsupported feature";
        case ErrorCode::Cycle: return "cycle error";
        case ErrorCode::Format: return "format error";
        case ErrorCode::Bounds: return "bounds error";
        case ErrorCode::Width: return "width error";
        case ErrorCode::Config: return "config error";
        case ErrorCode::EmptyIndex: return "empty index";
        case ErrorCode::EmptyRegion: return "empty region";
        case ErrorCode::Consistency: return "internal consistency error";
        case ErrorCode::Io: return "i/o error";
    }
    return "error";
}

} // namespace graphmap
