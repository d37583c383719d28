#include "protsim/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "protsim/parallel.hpp"

namespace protsim {

void PipelineConfig::validate() const {
    kmer_space(k);  // throws on bad k
    if (xdrop < 0) throw std::invalid_argument("x-drop must be non-negative");
    if (gaps.open < 0 || gaps.extend < 0) throw std::invalid_argument("gap costs must be non-negative");
    if (filter.ani_min < 0 || filter.ani_min > 100) throw std::invalid_argument("ANI threshold must be in [0, 100]");
    if (filter.cov_min < 0 || filter.cov_min > 100) throw std::invalid_argument("coverage threshold must be in [0, 100]");
    if (subs >= kmer_space(k)) throw std::invalid_argument("substitute count must be below 24^k");
    if (threads < 1) throw std::invalid_argument("threads must be at least 1");
}

std::vector<std::pair<std::uint64_t, std::uint32_t>> distinct_kmers(std::string_view residues, int k,
                                                                     bool skip_ambiguous) {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
    for (const KmerHit& h : extract_kmers(residues, k, skip_ambiguous)) out.emplace_back(h.id.value, h.pos);
    // stable sort keeps the first occurrence ahead of repeats
    std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    out.erase(std::unique(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first == y.first; }),
              out.end());
    return out;
}

PositionMatrix build_A(const SequenceStore& store, int k, bool skip_ambiguous, int threads) {
    std::vector<std::vector<std::pair<std::uint64_t, std::uint32_t>>> per_seq(store.size());
    parallel_for(store.size(), threads,
                 [&](std::size_t i) { per_seq[i] = distinct_kmers(store.residues(i), k, skip_ambiguous); });
    Triplets<std::uint32_t> t(store.size(), kmer_space(k));
    for (std::size_t i = 0; i < per_seq.size(); ++i)
        for (const auto& [kmer, pos] : per_seq[i]) t.push(i, kmer, pos);
    return PositionMatrix::from_triplets(std::move(t));
}

std::vector<KmerId> present_kmers(const PositionMatrix& a) {
    std::vector<KmerId> out;
    out.reserve(a.nzc());
    for (Index c : a.jc()) out.push_back(KmerId{c});
    return out;
}

PositionMatrix build_S(std::span<const KmerId> present, int k, const ExpenseMatrix& expense, std::size_t m,
                       int threads) {
    const Index space = kmer_space(k);
    auto nbrs = find_sub_kmers_batch(present, k, expense, m, threads);
    Triplets<std::uint32_t> t(space, space);
    for (std::size_t r = 0; r < present.size(); ++r) {
        t.push(present[r].value, present[r].value, 0);
        for (const SubKmer& s : nbrs[r]) t.push(present[r].value, s.kmer.value, s.dist);
    }
    return PositionMatrix::from_triplets(std::move(t));
}

OverlapMatrix symmetrize_from_upper(const OverlapMatrix& directed) {
    Triplets<CommonKmers> t(directed.nrows(), directed.ncols());
    directed.for_each([&](Index r, Index c, const CommonKmers& v) {
        if (r > c) return;
        t.push(r, c, v);
        if (r < c) t.push(c, r, v.mirrored());
    });
    return OverlapMatrix::from_triplets(std::move(t));
}

OverlapMatrix compute_B(const PositionMatrix& a, const PositionMatrix* s, int threads) {
    PositionMatrix at = transpose(a);
    if (s == nullptr) return spgemm(a, at, ExactMatchSemiring{}, threads);
    auto as = spgemm(a, *s, ClosestKmerSemiring{}, threads);
    return symmetrize_from_upper(spgemm(as, at, SubstituteMatchSemiring{}, threads));
}

std::vector<CandidatePair> extract_pairs(const OverlapMatrix& b, std::uint32_t t) {
    std::vector<CandidatePair> out;
    b.for_each([&](Index r, Index c, const CommonKmers& v) {
        if (r < c && v.count > t) out.push_back({r, c, v});
    });
    std::sort(out.begin(), out.end(),
              [](const CandidatePair& x, const CandidatePair& y) { return x.i != y.i ? x.i < y.i : x.j < y.j; });
    return out;
}

AlignmentResult align_candidate(std::string_view a, std::string_view b, const CommonKmers& common,
                                const PipelineConfig& cfg) {
    if (cfg.align == AlignMode::SmithWaterman) return smith_waterman(a, b, cfg.scoring, cfg.gaps);
    return xdrop_align(a, b, common, cfg.k, cfg.xdrop, cfg.scoring, cfg.gaps);
}

std::vector<SimilarityEdge> align_pairs(const SequenceStore& store, std::span<const CandidatePair> pairs,
                                        const PipelineConfig& cfg) {
    std::vector<SimilarityEdge> edges(pairs.size());
    parallel_for(pairs.size(), cfg.threads, [&](std::size_t p) {
        const CandidatePair& c = pairs[p];
        auto r = align_candidate(store.residues(c.i), store.residues(c.j), c.common, cfg);
        edges[p] = score_edge(c.i, c.j, store.length(c.i), store.length(c.j), r, cfg.filter);
    });
    return edges;
}

double RunReport::total_seconds() const {
    double s = 0;
    for (const auto& st : stage_seconds) s += st.second;
    return s;
}

double RunReport::alignment_percent() const {
    double total = total_seconds(), align = 0;
    for (const auto& st : stage_seconds)
        if (st.first == "align") align += st.second;
    return total > 0 ? std::clamp(100.0 * align / total, 0.0, 100.0) : 0.0;
}

std::string RunReport::to_text() const {
    std::ostringstream os;
    char buf[128];
    os << "sequences            " << sequences << '\n';
    os << "nnz(A)               " << nnz_a << '\n';
    os << "nnz(S)               " << nnz_s << '\n';
    os << "nnz(B)               " << nnz_b << '\n';
    os << "pairs before thresh  " << pairs_before_threshold << '\n';
    os << "pairs after thresh   " << pairs_after_threshold << '\n';
    os << "alignments           " << alignments << '\n';
    os << "edges passed         " << edges_passed << '\n';
    for (const auto& [stage, sec] : stage_seconds) {
        std::snprintf(buf, sizeof buf, "time %-15s %.3f s\n", stage.c_str(), sec);
        os << buf;
    }
    std::snprintf(buf, sizeof buf, "alignment time       %.1f %%\n", alignment_percent());
    os << buf;
    return os.str();
}

std::string RunReport::to_json() const {
    nlohmann::json j;
    j["sequences"] = sequences;
    j["nnz"] = {{"A", nnz_a}, {"S", nnz_s}, {"B", nnz_b}};
    j["pairs"] = {{"before_threshold", pairs_before_threshold}, {"after_threshold", pairs_after_threshold}};
    j["alignments"] = alignments;
    j["edges_passed"] = edges_passed;
    nlohmann::json stages = nlohmann::json::object();
    for (const auto& [stage, sec] : stage_seconds) stages[stage] = sec;
    j["stage_seconds"] = stages;
    j["total_seconds"] = total_seconds();
    j["alignment_percent"] = alignment_percent();
    return j.dump(2);
}

namespace {

class StageTimer {
public:
    explicit StageTimer(RunReport& r) : report_(r), start_(std::chrono::steady_clock::now()) {}
    void lap(const char* name) {
        auto now = std::chrono::steady_clock::now();
        report_.stage_seconds.emplace_back(name, std::chrono::duration<double>(now - start_).count());
        start_ = now;
    }

private:
    RunReport& report_;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace

PipelineResult run_pipeline(const SequenceStore& store, const PipelineConfig& cfg) {
    cfg.validate();
    PipelineResult res;
    RunReport& rep = res.report;
    rep.sequences = store.size();
    StageTimer timer(rep);

    PositionMatrix a = build_A(store, cfg.k, cfg.skip_ambiguous, cfg.threads);
    rep.nnz_a = a.nnz();
    timer.lap("build_A");

    OverlapMatrix b;
    if (cfg.subs > 0) {
        ExpenseMatrix e = ExpenseMatrix::build(cfg.scoring);
        auto present = present_kmers(a);
        PositionMatrix s = build_S(present, cfg.k, e, cfg.subs, cfg.threads);
        rep.nnz_s = s.nnz();
        timer.lap("build_S");
        b = compute_B(a, &s, cfg.threads);
    } else {
        b = compute_B(a, nullptr, cfg.threads);
    }
    rep.nnz_b = b.nnz();
    timer.lap("compute_B");

    rep.pairs_before_threshold = extract_pairs(b, 0).size();
    auto pairs = extract_pairs(b, cfg.ck_threshold);
    rep.pairs_after_threshold = pairs.size();
    timer.lap("extract");

    res.edges = align_pairs(store, pairs, cfg);
    rep.alignments = res.edges.size();
    for (const auto& e : res.edges) rep.edges_passed += e.passed ? 1 : 0;
    timer.lap("align");
    return res;
}

}  // namespace protsim
