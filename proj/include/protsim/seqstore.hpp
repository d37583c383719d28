#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace protsim {

inline constexpr std::uint64_t kDefaultOverlapBytes = 1u << 20;

/// Byte range read by one worker. Records whose header starts in
/// [begin, end) belong to the worker; bytes up to `overlap_end` may be
/// consumed to finish the last of them.
struct ChunkRange {
    std::uint64_t begin = 0;
    std::uint64_t end = 0;
    std::uint64_t overlap_end = 0;

    std::uint64_t size() const noexcept { return end - begin; }
    std::uint64_t overlap() const noexcept { return overlap_end - end; }
};

struct ChunkPlan {
    int workers = 0;
    std::vector<ChunkRange> ranges;
};

/// Split a file evenly by bytes. Throws std::invalid_argument on zero workers
/// or an empty file.
ChunkPlan plan_chunks(std::uint64_t file_size, int workers, std::uint64_t overlap);

struct FastaRecord {
    std::string name;      // header up to the first whitespace
    std::string residues;  // uppercased, whitespace stripped
    std::uint64_t header_offset = 0;
};

/// Parse the records owned by `range`. `file` is the whole input; only the
/// bytes in [range.begin - 1, range.overlap_end) are examined. Throws
/// std::runtime_error if an owned record runs past the overlap window or
/// contains a byte outside the alphabet.
std::vector<FastaRecord> parse_chunk(std::string_view file, const ChunkRange& range);

/// Exclusive prefix sum: worker w assigns ids [offsets[w], offsets[w] + counts[w]).
std::vector<std::uint64_t> prefix_counts(std::span<const std::uint64_t> counts);

/// Which worker holds which contiguous id range after the linear (file order) split.
class LinearDistribution {
public:
    LinearDistribution() = default;
    explicit LinearDistribution(std::span<const std::uint64_t> counts);

    int workers() const noexcept { return static_cast<int>(counts_.size()); }
    std::uint64_t total() const noexcept { return total_; }
    std::uint64_t begin(int w) const { return offsets_.at(static_cast<std::size_t>(w)); }
    std::uint64_t end(int w) const { return begin(w) + counts_.at(static_cast<std::size_t>(w)); }

    /// Worker holding `id`; throws std::out_of_range for id >= total().
    int owner(std::uint64_t id) const;

private:
    std::vector<std::uint64_t> counts_;
    std::vector<std::uint64_t> offsets_;
    std::uint64_t total_ = 0;
};

/// Immutable residue buffer with O(1) lookup by global id.
class SequenceStore {
public:
    struct Entry {
        std::uint64_t name_offset = 0;
        std::uint32_t name_length = 0;
        std::uint64_t data_offset = 0;
        std::uint32_t length = 0;
    };

    SequenceStore() = default;

    void append(std::string_view name, std::string_view residues);

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    std::string_view name(std::size_t id) const;
    std::string_view residues(std::size_t id) const;
    std::uint32_t length(std::size_t id) const { return entries_.at(id).length; }
    const Entry& entry(std::size_t id) const { return entries_.at(id); }

    std::uint64_t total_residues() const noexcept { return total_residues_; }
    std::size_t buffer_size() const noexcept { return buffer_.size(); }

private:
    std::string buffer_;
    std::vector<Entry> entries_;
    std::uint64_t total_residues_ = 0;
};

/// Parse `text` with `workers` byte-balanced chunks parsed concurrently and
/// merged in worker order. Ids are dense in file order.
SequenceStore parse_fasta(std::string_view text, int workers = 1,
                          std::uint64_t overlap = kDefaultOverlapBytes);

std::string read_file(const std::string& path);

SequenceStore load_fasta(const std::string& path, int workers = 1,
                         std::uint64_t overlap = kDefaultOverlapBytes);

}  // namespace protsim
