#ifndef graphmap_reads_hpp
#define graphmap_reads_hpp

#include <memory>
#include <optional>
#include <string>

namespace graphmap {

struct SequenceRecord {
    std::string id;
    std::string sequence;
};

/*
 * FASTA or FASTQ reader, plain or gzip-compressed (zlib reads both
 * transparently). Multi-line FASTA records are joined. Throws Error(Io) when
 * the file cannot be opened and Error(Parse) on malformed FASTQ.
 */
class SequenceReader {
public:
    explicit SequenceReader(const std::string& path);
    ~SequenceReader();

    SequenceReader(const SequenceReader&) = delete;
    SequenceReader& operator=(const SequenceReader&) = delete;

    std::optional<SequenceRecord> next();

private:
    bool read_line(std::string& line);

    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace graphmap

#endif
