#include "protsim/seqstore.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "protsim/kmer.hpp"

namespace protsim {

ChunkPlan plan_chunks(std::uint64_t file_size, int workers, std::uint64_t overlap) {
    if (workers < 1) throw std::invalid_argument("plan_chunks: need at least one worker");
    if (file_size == 0) throw std::invalid_argument("plan_chunks: empty input");

    ChunkPlan plan;
    plan.workers = workers;
    plan.ranges.reserve(static_cast<std::size_t>(workers));
    const auto w64 = static_cast<std::uint64_t>(workers);
    const std::uint64_t base = file_size / w64;
    const std::uint64_t extra = file_size % w64;
    std::uint64_t pos = 0;
    for (std::uint64_t w = 0; w < w64; ++w) {
        std::uint64_t len = base + (w < extra ? 1 : 0);
        ChunkRange r;
        r.begin = pos;
        r.end = pos + len;
        r.overlap_end = std::min(file_size, r.end + overlap);
        plan.ranges.push_back(r);
        pos = r.end;
    }
    return plan;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f'; }

bool header_at(std::string_view file, std::uint64_t pos) {
    return file[pos] == '>' && (pos == 0 || file[pos - 1] == '\n');
}

}  // namespace

std::vector<FastaRecord> parse_chunk(std::string_view file, const ChunkRange& range) {
    if (range.begin > range.end || range.end > range.overlap_end || range.overlap_end > file.size())
        throw std::invalid_argument("parse_chunk: range does not fit the input");

    std::vector<FastaRecord> out;
    std::uint64_t pos = range.begin;
    // skip the partial record at the start of the chunk; it belongs to a predecessor
    while (pos < range.end && !header_at(file, pos)) {
        auto nl = file.find('\n', pos);
        if (nl == std::string_view::npos || nl + 1 >= range.end) {
            pos = range.end;
            break;
        }
        pos = nl + 1;
    }

    while (pos < range.end) {
        FastaRecord rec;
        rec.header_offset = pos;
        auto header_end = file.find('\n', pos);
        if (header_end == std::string_view::npos || header_end >= range.overlap_end) {
            if (range.overlap_end < file.size())
                throw std::runtime_error("record at byte " + std::to_string(pos) +
                                         " exceeds the chunk overlap; raise the overlap size");
            header_end = range.overlap_end;
        }
        std::string_view header = file.substr(pos + 1, header_end - pos - 1);
        auto name_end = std::find_if(header.begin(), header.end(), is_space);
        rec.name.assign(header.begin(), name_end);

        std::uint64_t cur = header_end;
        bool complete = false;
        while (cur < range.overlap_end) {
            if (header_at(file, cur)) {
                complete = true;
                break;
            }
            char c = file[cur];
            if (!is_space(c)) {
                int b = Alphabet::index(c);
                if (b < 0)
                    throw std::runtime_error("record '" + rec.name + "': byte '" + std::string(1, c) +
                                             "' is not a protein residue");
                rec.residues.push_back(Alphabet::symbol(b));
            }
            ++cur;
        }
        if (!complete && range.overlap_end < file.size())
            throw std::runtime_error("record '" + rec.name + "' extends beyond the chunk overlap; raise the overlap size");
        out.push_back(std::move(rec));
        pos = cur;
    }
    return out;
}

std::vector<std::uint64_t> prefix_counts(std::span<const std::uint64_t> counts) {
    std::vector<std::uint64_t> offsets(counts.size());
    std::exclusive_scan(counts.begin(), counts.end(), offsets.begin(), std::uint64_t{0});
    return offsets;
}

LinearDistribution::LinearDistribution(std::span<const std::uint64_t> counts)
    : counts_(counts.begin(), counts.end()), offsets_(prefix_counts(counts)) {
    total_ = offsets_.empty() ? 0 : offsets_.back() + counts_.back();
}

int LinearDistribution::owner(std::uint64_t id) const {
    if (id >= total_) throw std::out_of_range("sequence id " + std::to_string(id) + " out of range");
    // last worker whose begin <= id and which holds something
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), id);
    auto w = static_cast<int>(std::distance(offsets_.begin(), it)) - 1;
    while (counts_[static_cast<std::size_t>(w)] == 0) --w;
    return w;
}

void SequenceStore::append(std::string_view name, std::string_view residues) {
    Entry e;
    e.name_offset = buffer_.size();
    e.name_length = static_cast<std::uint32_t>(name.size());
    buffer_.append(name);
    e.data_offset = buffer_.size();
    e.length = static_cast<std::uint32_t>(residues.size());
    buffer_.append(residues);
    entries_.push_back(e);
    total_residues_ += residues.size();
}

std::string_view SequenceStore::name(std::size_t id) const {
    const Entry& e = entries_.at(id);
    return std::string_view(buffer_).substr(e.name_offset, e.name_length);
}

std::string_view SequenceStore::residues(std::size_t id) const {
    const Entry& e = entries_.at(id);
    return std::string_view(buffer_).substr(e.data_offset, e.length);
}

SequenceStore parse_fasta(std::string_view text, int workers, std::uint64_t overlap) {
    if (text.empty()) return {};
    ChunkPlan plan = plan_chunks(text.size(), workers, overlap);

    std::vector<std::future<std::vector<FastaRecord>>> jobs;
    jobs.reserve(plan.ranges.size());
    for (const auto& r : plan.ranges)
        jobs.push_back(std::async(std::launch::async, [text, r] { return parse_chunk(text, r); }));

    std::vector<std::vector<FastaRecord>> parts;
    for (auto& j : jobs) parts.push_back(j.get());

    SequenceStore store;
    for (const auto& part : parts)
        for (const auto& rec : part) store.append(rec.name, rec.residues);
    return store;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SequenceStore load_fasta(const std::string& path, int workers, std::uint64_t overlap) {
    std::string text = read_file(path);
    return parse_fasta(text, workers, overlap);
}

}  // namespace protsim
