#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "protsim/pipeline.hpp"
#include "protsim/seqstore.hpp"

namespace protsim {

struct IdRange {
    std::uint64_t begin = 0;
    std::uint64_t end = 0;

    std::uint64_t size() const noexcept { return end - begin; }
    bool empty() const noexcept { return end <= begin; }
    bool contains(std::uint64_t x) const noexcept { return x >= begin && x < end; }
    friend bool operator==(const IdRange&, const IdRange&) = default;
};

/// Split [0, n) into `parts` contiguous ranges of floor(n / parts) ids; the
/// last range absorbs the remainder.
std::vector<IdRange> split_range(std::uint64_t n, int parts);

/// 2D block ownership of the n x n overlap matrix over a q x q grid.
/// Worker w sits at grid row w / q and column w % q.
class BlockOwnership {
public:
    BlockOwnership() = default;
    BlockOwnership(std::uint64_t n, int q, std::vector<IdRange> blocks);

    int q() const noexcept { return q_; }
    int workers() const noexcept { return q_ * q_; }
    std::uint64_t n() const noexcept { return n_; }
    const std::vector<IdRange>& blocks() const noexcept { return blocks_; }

    static int row_of(int worker, int q) noexcept { return worker / q; }
    static int col_of(int worker, int q) noexcept { return worker % q; }
    int worker_at(int r, int c) const noexcept { return r * q_ + c; }

    IdRange rows(int worker) const { return blocks_.at(static_cast<std::size_t>(row_of(worker, q_))); }
    IdRange cols(int worker) const { return blocks_.at(static_cast<std::size_t>(col_of(worker, q_))); }

    /// Grid row/column block containing sequence `id`.
    int block_of(std::uint64_t id) const;

private:
    std::uint64_t n_ = 0;
    int q_ = 0;
    std::vector<IdRange> blocks_;
};

/// Throws std::invalid_argument if q < 1 or q^2 > n.
BlockOwnership plan_blocks(std::uint64_t n, int q);

struct Transfer {
    int peer = 0;
    IdRange ids;
    friend bool operator==(const Transfer&, const Transfer&) = default;
};

struct WorkerRequests {
    std::vector<IdRange> needed;      // disjoint, ascending: row range union column range
    std::vector<Transfer> requests;   // fetched from peers
    std::vector<Transfer> serves;     // sent to peers
    std::uint64_t held = 0;           // sequences kept for alignment
};

struct RequestPlan {
    std::vector<WorkerRequests> workers;
};

/// Eager full-range plan: every worker requests all of its row and column
/// sequences that another worker holds after the linear split.
RequestPlan plan_requests(const BlockOwnership& own, const LinearDistribution& holdings);

/// Pairs a grid cell aligns: the strictly upper triangle of its local
/// block, plus the block diagonal for cells above the grid diagonal.
struct CellDuty {
    int worker = 0;
    IdRange rows;
    IdRange cols;
    bool include_diagonal = false;

    bool covers(std::uint64_t local_row, std::uint64_t local_col) const noexcept {
        return local_row < local_col || (include_diagonal && local_row == local_col);
    }

    /// Global (i, j), i < j, of a local cell.
    std::pair<std::uint64_t, std::uint64_t> canonical(std::uint64_t local_row, std::uint64_t local_col) const noexcept {
        std::uint64_t i = rows.begin + local_row, j = cols.begin + local_col;
        return i < j ? std::pair{i, j} : std::pair{j, i};
    }
};

std::vector<CellDuty> assign_work(const BlockOwnership& own);

enum class Phase { Counts, Sequences, ABuild, ATranspose, SBuild, SummaLeft1, SummaRight1, SummaLeft2, SummaRight2, BMirror, Gather };

const char* phase_name(Phase p);

/// Thread-safe record of every message and of ordering events per worker.
class CommLedger {
public:
    struct Message {
        int from = 0;
        int to = 0;
        std::uint64_t bytes = 0;
        Phase phase = Phase::Counts;
        std::uint64_t sent_tick = 0;
        std::uint64_t received_tick = 0;  // 0 until received
    };
    struct Event {
        int worker = 0;
        std::string what;
        std::uint64_t tick = 0;
    };

    std::size_t record_send(int from, int to, std::uint64_t bytes, Phase phase, std::uint64_t tick);
    void record_receive(std::size_t message, std::uint64_t tick);
    void record_event(int worker, std::string what, std::uint64_t tick);

    std::vector<Message> messages() const;
    std::vector<Event> events() const;

    /// Tick of `what` on `worker`, or 0 if it never happened.
    std::uint64_t event_tick(int worker, const std::string& what) const;

    std::uint64_t bytes_sent() const;
    std::uint64_t bytes_received() const;
    bool balanced() const;

    /// CSV `worker,peer,bytes,phase`, one line per message from the sender's side.
    void write_csv(std::ostream& os) const;

private:
    std::unique_ptr<std::mutex> mu_ = std::make_unique<std::mutex>();
    std::vector<Message> messages_;
    std::vector<Event> events_;
};

struct GridResult {
    std::vector<SimilarityEdge> edges;  // every aligned pair, sorted by (i, j)
    std::vector<std::string> names;     // by global id
    RunReport report;
    CommLedger ledger;
    std::vector<std::uint64_t> held;    // sequences retained per worker
    std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> aligned_by_worker;
};

/// Run the pipeline on q^2 message-passing workers. Each worker parses its
/// byte chunk of `fasta`, fetches its row and column sequences in the
/// background, builds its A block, takes part in the blocked SpGEMM, waits
/// for its sequences, and aligns the pairs assigned to its cell. Any worker
/// failure aborts the whole run with that error.
GridResult run_grid(std::string_view fasta, int q, const PipelineConfig& cfg,
                    std::uint64_t overlap = kDefaultOverlapBytes);

/// Same, starting from an already parsed store (serialized back to FASTA).
GridResult run_grid(const SequenceStore& store, int q, const PipelineConfig& cfg);

}  // namespace protsim
