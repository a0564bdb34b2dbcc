#ifndef graphmap_error_hpp
#define graphmap_error_hpp

#include <stdexcept>
#include <string>

namespace graphmap {

enum class ErrorCode {
    Parse,          // malformed input record
    Alphabet,       // symbol outside A/C/G/T
    Reference,      // GFA link to an undeclared segment
    Unsupported,    // input feature we do not handle (reverse strand, overlaps)
    Cycle,          // graph is not a DAG
    Format,         // corrupt or truncated binary buffer
    Bounds,         // position out of range
    Width,          // pattern longer than the bitvector width
    Config,         // invalid parameters
    EmptyIndex,
    EmptyRegion,
    Consistency,    // kernel state that no move explains
    Io
};

const char* error_code_name(ErrorCode code);

/*
 * Every library failure is reported as an Error carrying a code, so the CLI
 * can map failure classes onto exit statuses.
 */
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace graphmap

#endif
