#include "protsim/grid.hpp"

#include <algorithm>
#include <any>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace protsim {

std::vector<IdRange> split_range(std::uint64_t n, int parts) {
    if (parts < 1) throw std::invalid_argument("split_range: need at least one part");
    std::vector<IdRange> out;
    const auto p = static_cast<std::uint64_t>(parts);
    const std::uint64_t step = n / p;
    for (std::uint64_t b = 0; b < p; ++b) out.push_back({b * step, b + 1 == p ? n : (b + 1) * step});
    return out;
}

namespace {

int range_index(const std::vector<IdRange>& ranges, std::uint64_t x) {
    auto it = std::upper_bound(ranges.begin(), ranges.end(), x,
                               [](std::uint64_t v, const IdRange& r) { return v < r.end; });
    if (it == ranges.end()) throw std::out_of_range("id " + std::to_string(x) + " outside every block");
    return static_cast<int>(it - ranges.begin());
}

std::vector<IdRange> merge_ranges(std::vector<IdRange> rs) {
    std::sort(rs.begin(), rs.end(), [](const IdRange& a, const IdRange& b) { return a.begin < b.begin; });
    std::vector<IdRange> out;
    for (const auto& r : rs) {
        if (r.empty()) continue;
        if (!out.empty() && r.begin <= out.back().end)
            out.back().end = std::max(out.back().end, r.end);
        else
            out.push_back(r);
    }
    return out;
}

}  // namespace

BlockOwnership::BlockOwnership(std::uint64_t n, int q, std::vector<IdRange> blocks)
    : n_(n), q_(q), blocks_(std::move(blocks)) {}

int BlockOwnership::block_of(std::uint64_t id) const { return range_index(blocks_, id); }

BlockOwnership plan_blocks(std::uint64_t n, int q) {
    if (q < 1) throw std::invalid_argument("grid side must be at least 1");
    if (static_cast<std::uint64_t>(q) * static_cast<std::uint64_t>(q) > n)
        throw std::invalid_argument("grid of " + std::to_string(q * q) + " workers is too large for " +
                                    std::to_string(n) + " sequences");
    return BlockOwnership(n, q, split_range(n, q));
}

RequestPlan plan_requests(const BlockOwnership& own, const LinearDistribution& holdings) {
    const int p = own.workers();
    if (holdings.workers() != p) throw std::invalid_argument("holdings must list one entry per grid worker");
    RequestPlan plan;
    plan.workers.resize(static_cast<std::size_t>(p));
    for (int w = 0; w < p; ++w) {
        WorkerRequests& wr = plan.workers[static_cast<std::size_t>(w)];
        wr.needed = merge_ranges({own.rows(w), own.cols(w)});
        for (const IdRange& need : wr.needed) {
            wr.held += need.size();
            for (int v = 0; v < p; ++v) {
                if (v == w) continue;
                IdRange overlap{std::max(need.begin, holdings.begin(v)), std::min(need.end, holdings.end(v))};
                if (!overlap.empty()) wr.requests.push_back({v, overlap});
            }
        }
    }
    for (int w = 0; w < p; ++w)
        for (const Transfer& t : plan.workers[static_cast<std::size_t>(w)].requests)
            plan.workers[static_cast<std::size_t>(t.peer)].serves.push_back({w, t.ids});
    return plan;
}

std::vector<CellDuty> assign_work(const BlockOwnership& own) {
    std::vector<CellDuty> out;
    for (int w = 0; w < own.workers(); ++w) {
        int r = BlockOwnership::row_of(w, own.q()), c = BlockOwnership::col_of(w, own.q());
        out.push_back({w, own.rows(w), own.cols(w), r < c});
    }
    return out;
}

const char* phase_name(Phase p) {
    switch (p) {
        case Phase::Counts: return "counts";
        case Phase::Sequences: return "sequences";
        case Phase::ABuild: return "a_build";
        case Phase::ATranspose: return "a_transpose";
        case Phase::SBuild: return "s_build";
        case Phase::SummaLeft1: return "summa1_left";
        case Phase::SummaRight1: return "summa1_right";
        case Phase::SummaLeft2: return "summa2_left";
        case Phase::SummaRight2: return "summa2_right";
        case Phase::BMirror: return "b_mirror";
        case Phase::Gather: return "gather";
    }
    return "unknown";
}

std::size_t CommLedger::record_send(int from, int to, std::uint64_t bytes, Phase phase, std::uint64_t tick) {
    std::lock_guard lk(*mu_);
    messages_.push_back({from, to, bytes, phase, tick, 0});
    return messages_.size() - 1;
}

void CommLedger::record_receive(std::size_t message, std::uint64_t tick) {
    std::lock_guard lk(*mu_);
    messages_.at(message).received_tick = tick;
}

void CommLedger::record_event(int worker, std::string what, std::uint64_t tick) {
    std::lock_guard lk(*mu_);
    events_.push_back({worker, std::move(what), tick});
}

std::vector<CommLedger::Message> CommLedger::messages() const {
    std::lock_guard lk(*mu_);
    return messages_;
}

std::vector<CommLedger::Event> CommLedger::events() const {
    std::lock_guard lk(*mu_);
    return events_;
}

std::uint64_t CommLedger::event_tick(int worker, const std::string& what) const {
    std::lock_guard lk(*mu_);
    for (const auto& e : events_)
        if (e.worker == worker && e.what == what) return e.tick;
    return 0;
}

std::uint64_t CommLedger::bytes_sent() const {
    std::lock_guard lk(*mu_);
    std::uint64_t s = 0;
    for (const auto& m : messages_) s += m.bytes;
    return s;
}

std::uint64_t CommLedger::bytes_received() const {
    std::lock_guard lk(*mu_);
    std::uint64_t s = 0;
    for (const auto& m : messages_)
        if (m.received_tick != 0) s += m.bytes;
    return s;
}

bool CommLedger::balanced() const {
    std::lock_guard lk(*mu_);
    return std::all_of(messages_.begin(), messages_.end(),
                       [](const Message& m) { return m.received_tick > m.sent_tick; });
}

void CommLedger::write_csv(std::ostream& os) const {
    auto msgs = messages();
    std::stable_sort(msgs.begin(), msgs.end(), [](const Message& a, const Message& b) {
        return std::tie(a.from, a.phase, a.to) < std::tie(b.from, b.phase, b.to);
    });
    os << "worker,peer,bytes,phase\n";
    for (const auto& m : msgs) os << m.from << ',' << m.to << ',' << m.bytes << ',' << phase_name(m.phase) << '\n';
}

namespace {

class GridAborted : public std::runtime_error {
public:
    GridAborted() : std::runtime_error("grid run aborted by a failing worker") {}
};

/// Unbounded per-worker mailboxes; receives match on (sender, phase) in FIFO order.
class Network {
public:
    Network(int workers, CommLedger& ledger) : boxes_(static_cast<std::size_t>(workers)), ledger_(ledger) {}

    std::uint64_t tick() { return ++clock_; }

    void event(int worker, std::string what) { ledger_.record_event(worker, std::move(what), tick()); }

    template <class T>
    void send(int from, int to, Phase phase, std::shared_ptr<const T> payload, std::uint64_t bytes) {
        std::size_t id = ledger_.record_send(from, to, bytes, phase, tick());
        Box& b = boxes_[static_cast<std::size_t>(to)];
        {
            std::lock_guard lk(b.mu);
            b.queue.push_back({from, phase, std::any(std::move(payload)), id});
        }
        b.cv.notify_all();
    }

    template <class T>
    std::shared_ptr<const T> recv(int me, int from, Phase phase) {
        Box& b = boxes_[static_cast<std::size_t>(me)];
        std::unique_lock lk(b.mu);
        for (;;) {
            if (aborted_) throw GridAborted();
            auto it = std::find_if(b.queue.begin(), b.queue.end(),
                                   [&](const Envelope& e) { return e.from == from && e.phase == phase; });
            if (it != b.queue.end()) {
                Envelope env = std::move(*it);
                b.queue.erase(it);
                lk.unlock();
                ledger_.record_receive(env.ledger_id, tick());
                return std::any_cast<std::shared_ptr<const T>>(env.payload);
            }
            b.cv.wait(lk);
        }
    }

    void abort() {
        aborted_ = true;
        for (auto& b : boxes_) {
            std::lock_guard lk(b.mu);
            b.cv.notify_all();
        }
    }

private:
    struct Envelope {
        int from;
        Phase phase;
        std::any payload;
        std::size_t ledger_id;
    };
    struct Box {
        std::mutex mu;
        std::condition_variable cv;
        std::deque<Envelope> queue;
    };

    std::vector<Box> boxes_;
    CommLedger& ledger_;
    std::atomic<std::uint64_t> clock_{0};
    std::atomic<bool> aborted_{false};
};

struct Cell {
    Index row, col;
    std::uint32_t value;
};
using CellBatch = std::vector<Cell>;
using SeqBatch = std::vector<std::pair<std::uint64_t, std::string>>;

struct WorkerSummary {
    std::vector<SimilarityEdge> edges;
    std::vector<std::pair<std::uint64_t, std::string>> names;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> aligned;
    std::vector<std::pair<std::string, double>> stage_seconds;
    std::size_t nnz_a = 0, nnz_s = 0, nnz_b = 0, pairs_before = 0, pairs_after = 0;
    std::uint64_t held = 0;
};

template <class T>
std::uint64_t matrix_bytes(const DcscMatrix<T>& m) {
    return (m.nzc() * 2 + 1 + m.nnz()) * sizeof(Index) + m.nnz() * sizeof(T);
}

OverlapMatrix mirror_transpose(const OverlapMatrix& m) {
    Triplets<CommonKmers> t(m.ncols(), m.nrows());
    m.for_each([&](Index r, Index c, const CommonKmers& v) { t.push(c, r, v.mirrored()); });
    return OverlapMatrix::from_triplets(std::move(t));
}

struct Shared {
    std::string_view text;
    int q;
    const PipelineConfig& cfg;
    ChunkPlan chunks;
    Network& net;
    std::vector<WorkerSummary> summaries;  // filled on worker 0
};

class Worker {
public:
    Worker(int w, Shared& sh) : w_(w), q_(sh.q), p_(sh.q * sh.q), r_(w / sh.q), c_(w % sh.q), sh_(sh), net_(sh.net) {}

    void run() {
        const PipelineConfig& cfg = sh_.cfg;
        auto lap = [this, t = std::chrono::steady_clock::now()](const char* name) mutable {
            auto now = std::chrono::steady_clock::now();
            stages_.emplace_back(name, std::chrono::duration<double>(now - t).count());
            t = now;
        };

        auto records = parse_chunk(sh_.text, sh_.chunks.ranges[static_cast<std::size_t>(w_)]);
        LinearDistribution lin = exchange_counts(records.size());
        const std::uint64_t first = lin.begin(w_);
        own_ = plan_blocks(lin.total(), q_);
        RequestPlan plan = plan_requests(own_, lin);
        const WorkerRequests& mine = plan.workers[static_cast<std::size_t>(w_)];

        // background sequence exchange: all serves are posted before any matrix work
        for (const Transfer& s : mine.serves) {
            auto batch = std::make_shared<SeqBatch>();
            std::uint64_t bytes = 0;
            for (std::uint64_t id = s.ids.begin; id < s.ids.end; ++id) {
                batch->emplace_back(id, records[id - first].residues);
                bytes += sizeof(std::uint64_t) + records[id - first].residues.size();
            }
            net_.send<SeqBatch>(w_, s.peer, Phase::Sequences, std::move(batch), bytes);
        }
        net_.event(w_, "requests_issued");
        lap("parse");

        kblocks_ = split_range(kmer_space(cfg.k), q_);
        PositionMatrix a = build_local_a(records, first);
        summary_.nnz_a = a.nnz();
        lap("build_A");

        net_.event(w_, "spgemm_start");
        auto at = exchange_transpose(a);
        OverlapMatrix b;
        if (cfg.subs == 0) {
            b = summa(ExactMatchSemiring{}, a, *at, Phase::SummaLeft2, Phase::SummaRight2);
        } else {
            PositionMatrix s = build_local_s(a);
            summary_.nnz_s = s.nnz();
            auto c1 = summa(ClosestKmerSemiring{}, a, s, Phase::SummaLeft1, Phase::SummaRight1);
            b = make_symmetric(summa(SubstituteMatchSemiring{}, c1, *at, Phase::SummaLeft2, Phase::SummaRight2));
        }
        summary_.nnz_b = b.nnz();
        net_.event(w_, "spgemm_end");
        lap("compute_B");

        // wait for every requested sequence before aligning
        std::unordered_map<std::uint64_t, std::string> held;
        for (const IdRange& need : mine.needed)
            for (std::uint64_t id = std::max(need.begin, lin.begin(w_)); id < std::min(need.end, lin.end(w_)); ++id)
                held.emplace(id, records[id - first].residues);
        for (const Transfer& req : mine.requests) {
            auto batch = net_.recv<SeqBatch>(w_, req.peer, Phase::Sequences);
            for (const auto& [id, res] : *batch) held.emplace(id, res);
        }
        summary_.held = held.size();
        net_.event(w_, "waitall");

        align_duty(b, held);
        lap("align");

        for (std::uint64_t i = 0; i < records.size(); ++i) summary_.names.emplace_back(first + i, records[i].name);
        summary_.stage_seconds = stages_;
        gather();
    }

private:
    LinearDistribution exchange_counts(std::size_t count) {
        auto mine = std::make_shared<const std::uint64_t>(count);
        for (int v = 0; v < p_; ++v)
            if (v != w_) net_.send<std::uint64_t>(w_, v, Phase::Counts, mine, sizeof(std::uint64_t));
        std::vector<std::uint64_t> counts(static_cast<std::size_t>(p_));
        for (int v = 0; v < p_; ++v)
            counts[static_cast<std::size_t>(v)] = v == w_ ? count : *net_.recv<std::uint64_t>(w_, v, Phase::Counts);
        return LinearDistribution(counts);
    }

    // All-to-all of cells; `own` is this worker's share. Entries are folded in sender order.
    template <class Combine>
    PositionMatrix all_to_all(std::vector<CellBatch> outgoing, Phase phase, Index nrows, Index ncols, Combine combine) {
        for (int v = 0; v < p_; ++v) {
            if (v == w_) continue;
            auto batch = std::make_shared<const CellBatch>(std::move(outgoing[static_cast<std::size_t>(v)]));
            auto bytes = batch->size() * sizeof(Cell);
            net_.send<CellBatch>(w_, v, phase, std::move(batch), bytes);
        }
        Triplets<std::uint32_t> t(nrows, ncols);
        for (int v = 0; v < p_; ++v) {
            std::shared_ptr<const CellBatch> in;
            if (v == w_)
                in = std::make_shared<const CellBatch>(std::move(outgoing[static_cast<std::size_t>(v)]));
            else
                in = net_.recv<CellBatch>(w_, v, phase);
            for (const Cell& cell : *in) t.push(cell.row, cell.col, cell.value);
        }
        return PositionMatrix::from_triplets(std::move(t), combine);
    }

    PositionMatrix build_local_a(const std::vector<FastaRecord>& records, std::uint64_t first) {
        const PipelineConfig& cfg = sh_.cfg;
        std::vector<CellBatch> outgoing(static_cast<std::size_t>(p_));
        for (std::uint64_t li = 0; li < records.size(); ++li) {
            const std::uint64_t gid = first + li;
            const int rb = own_.block_of(gid);
            const Index local_row = gid - own_.blocks()[static_cast<std::size_t>(rb)].begin;
            for (const auto& [kmer, pos] : distinct_kmers(records[li].residues, cfg.k, cfg.skip_ambiguous)) {
                const int kb = range_index(kblocks_, kmer);
                outgoing[static_cast<std::size_t>(rb * q_ + kb)].push_back(
                    {local_row, kmer - kblocks_[static_cast<std::size_t>(kb)].begin, pos});
            }
        }
        return all_to_all(std::move(outgoing), Phase::ABuild, own_.rows(w_).size(),
                          kblocks_[static_cast<std::size_t>(c_)].size(),
                          [](std::uint32_t&, std::uint32_t&&) { throw std::logic_error("duplicate A entry"); });
    }

    // Aᵀ block (r, c) is the transpose of A block (c, r).
    std::shared_ptr<const PositionMatrix> exchange_transpose(const PositionMatrix& a) {
        auto t = std::make_shared<const PositionMatrix>(transpose(a));
        if (r_ == c_) return t;
        const int partner = own_.worker_at(c_, r_);
        net_.send<PositionMatrix>(w_, partner, Phase::ATranspose, t, matrix_bytes(*t));
        return net_.recv<PositionMatrix>(w_, partner, Phase::ATranspose);
    }

    // S rows for the k-mers present in this worker's A block go to S row block c.
    PositionMatrix build_local_s(const PositionMatrix& a) {
        const PipelineConfig& cfg = sh_.cfg;
        const Index kbase = kblocks_[static_cast<std::size_t>(c_)].begin;
        std::vector<KmerId> present;
        for (Index col : a.jc()) present.push_back(KmerId{col + kbase});
        ExpenseMatrix e = ExpenseMatrix::build(cfg.scoring);
        auto nbrs = find_sub_kmers_batch(present, cfg.k, e, cfg.subs, cfg.threads);

        std::vector<CellBatch> outgoing(static_cast<std::size_t>(p_));
        auto route = [&](std::uint64_t from, std::uint64_t to, std::uint32_t dist) {
            const int kb = range_index(kblocks_, to);
            outgoing[static_cast<std::size_t>(c_ * q_ + kb)].push_back(
                {from - kbase, to - kblocks_[static_cast<std::size_t>(kb)].begin, dist});
        };
        for (std::size_t i = 0; i < present.size(); ++i) {
            route(present[i].value, present[i].value, 0);
            for (const SubKmer& s : nbrs[i]) route(present[i].value, s.kmer.value, s.dist);
        }
        // the same k-mer may be present in several A blocks of one grid column
        return all_to_all(std::move(outgoing), Phase::SBuild, kblocks_[static_cast<std::size_t>(r_)].size(),
                          kblocks_[static_cast<std::size_t>(c_)].size(),
                          [](std::uint32_t& acc, std::uint32_t&& v) { acc = std::min(acc, v); });
    }

    // SUMMA: stage s multiplies left block (r, s) by right block (s, c).
    template <class SR>
    DcscMatrix<typename SR::value_type> summa(SR sr, const DcscMatrix<typename SR::lhs_type>& left,
                                              const DcscMatrix<typename SR::rhs_type>& right, Phase left_phase,
                                              Phase right_phase) {
        using L = DcscMatrix<typename SR::lhs_type>;
        using R = DcscMatrix<typename SR::rhs_type>;
        auto left_ptr = std::make_shared<const L>(left);
        auto right_ptr = std::make_shared<const R>(right);
        for (int c = 0; c < q_; ++c)
            if (c != c_) net_.send<L>(w_, own_.worker_at(r_, c), left_phase, left_ptr, matrix_bytes(left));
        for (int r = 0; r < q_; ++r)
            if (r != r_) net_.send<R>(w_, own_.worker_at(r, c_), right_phase, right_ptr, matrix_bytes(right));

        DcscMatrix<typename SR::value_type> acc(left.nrows(), right.ncols());
        for (int s = 0; s < q_; ++s) {
            auto l = s == c_ ? left_ptr : net_.recv<L>(w_, own_.worker_at(r_, s), left_phase);
            auto r = s == r_ ? right_ptr : net_.recv<R>(w_, own_.worker_at(s, c_), right_phase);
            sr.inner_offset = kblocks_[static_cast<std::size_t>(s)].begin;
            auto part = spgemm(*l, *r, sr, sh_.cfg.threads);
            acc = s == 0 ? std::move(part) : ewise_add(acc, part, sr);
        }
        return acc;
    }

    // Substitute-mode B is directed; cells with i < j decide and the lower
    // triangle mirrors them.
    OverlapMatrix make_symmetric(OverlapMatrix directed) {
        if (r_ == c_) return symmetrize_from_upper(directed);
        const int partner = own_.worker_at(c_, r_);
        if (r_ < c_) {
            auto m = std::make_shared<const OverlapMatrix>(mirror_transpose(directed));
            net_.send<OverlapMatrix>(w_, partner, Phase::BMirror, m, matrix_bytes(*m));
            return directed;
        }
        return *net_.recv<OverlapMatrix>(w_, partner, Phase::BMirror);
    }

    void align_duty(const OverlapMatrix& b, const std::unordered_map<std::uint64_t, std::string>& held) {
        const PipelineConfig& cfg = sh_.cfg;
        const CellDuty duty = assign_work(own_)[static_cast<std::size_t>(w_)];
        std::vector<CandidatePair> pairs;
        b.for_each([&](Index lr, Index lc, const CommonKmers& v) {
            if (!duty.covers(lr, lc)) return;
            auto [i, j] = duty.canonical(lr, lc);
            if (i == j) return;
            ++summary_.pairs_before;
            if (v.count <= cfg.ck_threshold) return;
            const bool upper = duty.rows.begin + lr < duty.cols.begin + lc;
            pairs.push_back({i, j, upper ? v : v.mirrored()});
        });
        std::sort(pairs.begin(), pairs.end(),
                  [](const CandidatePair& x, const CandidatePair& y) { return std::tie(x.i, x.j) < std::tie(y.i, y.j); });
        summary_.pairs_after = pairs.size();

        summary_.edges.resize(pairs.size());
        parallel_for(pairs.size(), cfg.threads, [&](std::size_t k) {
            const CandidatePair& c = pairs[k];
            const std::string& si = held.at(c.i);
            const std::string& sj = held.at(c.j);
            auto r = align_candidate(si, sj, c.common, cfg);
            summary_.edges[k] = score_edge(c.i, c.j, static_cast<std::uint32_t>(si.size()),
                                           static_cast<std::uint32_t>(sj.size()), r, cfg.filter);
        });
        for (const auto& c : pairs) summary_.aligned.emplace_back(c.i, c.j);
    }

    void gather() {
        if (w_ != 0) {
            auto bytes = summary_.edges.size() * sizeof(SimilarityEdge) + summary_.names.size() * 16;
            net_.send<WorkerSummary>(w_, 0, Phase::Gather, std::make_shared<const WorkerSummary>(std::move(summary_)),
                                     bytes);
            return;
        }
        sh_.summaries.resize(static_cast<std::size_t>(p_));
        sh_.summaries[0] = std::move(summary_);
        for (int v = 1; v < p_; ++v) sh_.summaries[static_cast<std::size_t>(v)] = *net_.recv<WorkerSummary>(0, v, Phase::Gather);
    }

    int w_, q_, p_, r_, c_;
    Shared& sh_;
    Network& net_;
    BlockOwnership own_;
    std::vector<IdRange> kblocks_;
    WorkerSummary summary_;
    std::vector<std::pair<std::string, double>> stages_;
};

}  // namespace

GridResult run_grid(std::string_view fasta, int q, const PipelineConfig& cfg, std::uint64_t overlap) {
    cfg.validate();
    if (q < 1) throw std::invalid_argument("grid side must be at least 1");
    const int p = q * q;
    GridResult res;
    Network net(p, res.ledger);
    Shared sh{fasta, q, cfg, plan_chunks(fasta.size(), p, overlap), net, {}};

    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(p));
    std::vector<std::thread> threads;
    for (int w = 0; w < p; ++w) {
        threads.emplace_back([&, w] {
            try {
                Worker(w, sh).run();
            } catch (const GridAborted&) {
                // another worker failed first
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
                net.abort();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    RunReport& rep = res.report;
    std::vector<std::pair<std::string, double>> stage_max;
    for (const auto& s : sh.summaries) {
        rep.nnz_a += s.nnz_a;
        rep.nnz_s += s.nnz_s;
        rep.nnz_b += s.nnz_b;
        rep.pairs_before_threshold += s.pairs_before;
        rep.pairs_after_threshold += s.pairs_after;
        res.held.push_back(s.held);
        res.aligned_by_worker.push_back(s.aligned);
        res.edges.insert(res.edges.end(), s.edges.begin(), s.edges.end());
        for (const auto& [id, name] : s.names) {
            if (res.names.size() <= id) res.names.resize(id + 1);
            res.names[id] = name;
        }
        for (std::size_t i = 0; i < s.stage_seconds.size(); ++i) {
            if (stage_max.size() <= i) stage_max.push_back(s.stage_seconds[i]);
            stage_max[i].second = std::max(stage_max[i].second, s.stage_seconds[i].second);
        }
    }
    std::sort(res.edges.begin(), res.edges.end(),
              [](const SimilarityEdge& x, const SimilarityEdge& y) { return std::tie(x.i, x.j) < std::tie(y.i, y.j); });
    rep.stage_seconds = std::move(stage_max);
    rep.sequences = res.names.size();
    rep.alignments = res.edges.size();
    for (const auto& e : res.edges) rep.edges_passed += e.passed ? 1 : 0;
    return res;
}

GridResult run_grid(const SequenceStore& store, int q, const PipelineConfig& cfg) {
    std::string text;
    for (std::size_t i = 0; i < store.size(); ++i) {
        text += '>';
        text += store.name(i);
        text += '\n';
        text += store.residues(i);
        text += '\n';
    }
    return run_grid(text, q, cfg, std::max<std::uint64_t>(kDefaultOverlapBytes, text.size()));
}

}  // namespace protsim
