// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "protsim/graph.hpp"
#include "protsim/graph_io.hpp"
#include "protsim/grid.hpp"
#include "protsim/kmer.hpp"
#include "protsim/pipeline.hpp"
#include "protsim/subkmer.hpp"
#include "support.hpp"

using namespace protsim;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

SequenceStore make_store(const std::vector<std::string>& names, const std::vector<std::string>& seqs) {
    SequenceStore s;
    for (std::size_t i = 0; i < seqs.size(); ++i) s.append(names[i], seqs[i]);
    return s;
}

std::vector<std::string> numbered(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("seq" + std::to_string(i));
    return names;
}

Outcome kmer_encoding() {
    Outcome o;
    if (encode("RCQ").value != 677) o.fail("RCQ encodes to " + std::to_string(encode("RCQ").value));
    std::mt19937_64 rng(1001);
    int failures = 0;
    for (int t = 0; t < 10000; ++t) {
        std::string s = oracle::random_protein(rng, 6, oracle::kSymbols);
        KmerId id = encode(s);
        if (id.value != oracle::kmer_value(s) || decode(id, 6) != s) ++failures;
    }
    if (failures) o.fail(std::to_string(failures) + " round-trip failures");
    if (o.pass) o.detail = "RCQ=677, 10000 round trips";
    return o;
}

Outcome substitute_oracle() {
    Outcome o;
    const auto& m = ScoringMatrix::blosum62();
    auto e = ExpenseMatrix::build(m);
    auto cost = oracle::expense_table(m);
    std::mt19937_64 rng(1002);
    std::uniform_int_distribution<std::uint64_t> pick(0, oracle::ipow24(3) - 1);
    std::size_t compared = 0;
    for (int t = 0; t < 100; ++t) {
        std::uint64_t root = pick(rng);
        auto all = oracle::exhaustive_nearest(root, 3, cost, 13823);
        for (std::size_t mm : {1u, 5u, 25u, 50u}) {
            auto got = find_sub_kmers(KmerId{root}, 3, e, mm);
            if (got.size() != mm) {
                o.fail("root " + std::to_string(root) + " m=" + std::to_string(mm) + " wrong size");
                continue;
            }
            for (std::size_t i = 0; i < mm; ++i)
                if (got[i].kmer.value != all[i].second || got[i].dist != all[i].first)
                    o.fail("root " + decode(KmerId{root}, 3) + " m=" + std::to_string(mm) + " rank " +
                           std::to_string(i));
            ++compared;
        }
    }
    // anchor facts around AAC
    auto subs = find_sub_kmers(encode("AAC"), 3, e, 300);
    auto dist_of = [&](const std::string& s) -> long {
        for (const auto& x : subs)
            if (x.kmer == encode(s)) return x.dist;
        return -1;
    };
    if (dist_of("SAC") != 3 || dist_of("ASC") != 3) o.fail("SAC/ASC not at distance 3 from AAC");
    long cheapest_third = -1;
    std::size_t first_third = subs.size(), last_two_at_8 = 0;
    for (std::size_t i = 0; i < subs.size(); ++i) {
        std::string s = decode(subs[i].kmer, 3);
        bool third_only = s[0] == 'A' && s[1] == 'A';
        bool two_subs = s[0] != 'A' && s[1] != 'A' && s[2] == 'C';
        if (third_only && first_third == subs.size()) {
            first_third = i;
            cheapest_third = subs[i].dist;
        }
        if (two_subs && subs[i].dist == 8) last_two_at_8 = i;
    }
    if (last_two_at_8 == 0 || first_third <= last_two_at_8 || cheapest_third <= 8)
        o.fail("distance-8 double substitutions do not precede third-position substitutions");
    if (o.pass)
        o.detail = std::to_string(compared) + " root/m cases equal exhaustive order; cheapest third-position change costs " +
                   std::to_string(cheapest_third);
    return o;
}

void compare_relation(const OverlapMatrix& b, const std::map<std::pair<std::size_t, std::size_t>, oracle::PairInfo>& want,
                      const char* mode, Outcome& o) {
    std::size_t upper = 0;
    b.for_each([&](Index r, Index c, const CommonKmers& v) {
        if (r >= c) return;
        ++upper;
        auto it = want.find({r, c});
        if (it == want.end()) {
            o.fail(std::string(mode) + ": spurious pair");
            return;
        }
        if (v.count != it->second.count) o.fail(std::string(mode) + ": count mismatch");
        if (v.nseeds != it->second.seeds.size()) {
            o.fail(std::string(mode) + ": seed count mismatch");
            return;
        }
        for (std::size_t s = 0; s < v.nseeds; ++s) {
            auto [kmer, pi, pj] = it->second.seeds[s];
            if (!(v.seeds[s] == SeedPair{kmer, pi, pj})) o.fail(std::string(mode) + ": seed mismatch");
        }
    });
    if (upper != want.size()) o.fail(std::string(mode) + ": missing pairs");
}

Outcome overlap_oracle() {
    Outcome o;
    std::mt19937_64 rng(1003);
    std::uniform_int_distribution<std::size_t> len(50, 300);
    std::vector<std::string> seqs;
    for (int i = 0; i < 200; ++i) seqs.push_back(oracle::random_protein(rng, len(rng)));
    auto store = make_store(numbered(seqs.size()), seqs);
    const int k = 4;

    auto a = build_A(store, k);
    auto exact = oracle::shared_kmer_pairs(seqs, k);
    compare_relation(compute_B(a, nullptr, 4), exact, "exact", o);

    const auto& m = ScoringMatrix::blosum62();
    auto s = build_S(present_kmers(a), k, ExpenseMatrix::build(m), 10, 4);
    auto subst = oracle::substitute_pairs(seqs, k, oracle::expense_table(m), 10);
    compare_relation(compute_B(a, &s, 4), subst, "substitute", o);
    if (o.pass)
        o.detail = "k=4: exact " + std::to_string(exact.size()) + " pairs, substitute m=10 " +
                   std::to_string(subst.size()) + " pairs, counts and seeds equal";
    return o;
}

CommonKmers shared_seeds(const std::string& a, const std::string& b, int k) {
    auto ka = oracle::kmer_first_pos(a, k), kb = oracle::kmer_first_pos(b, k);
    CommonKmers c;
    for (const auto& [v, p] : ka) {
        auto it = kb.find(v);
        if (it == kb.end()) continue;
        auto one = CommonKmers::single({v, p, it->second});
        if (c.count == 0) c = one;
        else c.merge(one);
    }
    return c;
}

Outcome alignment_oracle() {
    Outcome o;
    const auto& m = ScoringMatrix::blosum62();
    std::mt19937_64 rng(1004);
    std::uniform_int_distribution<std::size_t> len(50, 300);
    std::size_t xdrop_checked = 0, identical = 0;
    for (int t = 0; t < 200; ++t) {
        std::string a = oracle::random_protein(rng, len(rng));
        std::string b;
        switch (t % 4) {
            case 0: b = oracle::random_protein(rng, len(rng)); break;
            case 1: b = oracle::mutate(rng, a, 0.4, 0.05); break;
            case 2: b = oracle::mutate(rng, a, 0.15, 0.02); break;
            default: b = a; break;
        }
        auto sw = smith_waterman(a, b, m);
        int want = oracle::gotoh_score(a, b, m, 11, 1);
        if (sw.score != want) o.fail("SW " + std::to_string(sw.score) + " vs oracle " + std::to_string(want));
        if (alignment_score(a, b, sw, m) != sw.score) o.fail("SW traceback does not reproduce its score");

        CommonKmers seeds = shared_seeds(a, b, 4);
        if (seeds.count == 0) seeds = shared_seeds(a, b, 2);
        if (seeds.count == 0) continue;
        int k = shared_seeds(a, b, 4).count ? 4 : 2;
        auto x49 = xdrop_align(a, b, seeds, k, 49, m);
        auto x200 = xdrop_align(a, b, seeds, k, 200, m);
        ++xdrop_checked;
        if (!(x49.score <= x200.score && x200.score <= sw.score))
            o.fail("x-drop ordering broken: " + std::to_string(x49.score) + ", " + std::to_string(x200.score) + ", " +
                   std::to_string(sw.score));
        if (a == b) {
            ++identical;
            auto la = static_cast<std::uint32_t>(a.size());
            for (const auto* r : {&sw, &x49}) {
                auto e = score_edge(0, 1, la, la, *r, FilterConfig{});
                if (e.ani != 100.0) o.fail("identical pair ANI " + std::to_string(e.ani));
            }
        }
    }
    if (o.pass)
        o.detail = "200 SW scores equal the oracle; " + std::to_string(xdrop_checked) + " x-drop orderings; " +
                   std::to_string(identical) + " identical pairs at ANI 100";
    return o;
}

std::string graph_bytes(const std::vector<std::string>& names, std::vector<SimilarityEdge> edges) {
    std::ostringstream os;
    write_graph(os, SimilarityGraph::assemble(names.size(), names, std::move(edges), WeightMode::Ani));
    return os.str();
}

Outcome grid_obliviousness() {
    Outcome o;
    std::mt19937_64 rng(1005);
    auto fam = oracle::planted_families(rng, 30, 10, 60, 250, 0.2, 0.02);
    const std::string fasta = oracle::to_fasta(fam.names, fam.seqs, 60);
    const std::uint64_t n = fam.seqs.size();

    struct Mode {
        const char* name;
        PipelineConfig cfg;
    };
    std::vector<Mode> modes(2);
    modes[0].name = "exact";
    modes[1].name = "substitute";
    modes[1].cfg.k = 4;
    modes[1].cfg.subs = 10;
    modes[1].cfg.ck_threshold = 3;

    std::size_t edges = 0;
    for (auto& mode : modes) {
        std::string reference;
        for (int q : {1, 2, 3}) {
            mode.cfg.threads = 2;
            auto g = run_grid(fasta, q, mode.cfg, fasta.size());
            std::string bytes = graph_bytes(g.names, g.edges);
            if (q == 1) {
                reference = bytes;
                edges = g.edges.size();
            } else if (bytes != reference) {
                o.fail(std::string(mode.name) + ": q=" + std::to_string(q) + " edge file differs");
            }
            const double bound = 2.0 * static_cast<double>(n) / q;
            for (std::uint64_t h : g.held)
                if (static_cast<double>(h) > bound) o.fail("worker holds " + std::to_string(h) + " sequences");

            // every aligned pair by exactly one worker
            std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
            for (const auto& list : g.aligned_by_worker)
                for (const auto& p : list)
                    if (!seen.insert(p).second) o.fail("pair aligned twice");
            if (seen.size() != g.edges.size()) o.fail("aligned pairs and edges disagree");
        }
    }
    // exhaustive duty enumeration
    for (int q : {1, 2, 3}) {
        auto own = plan_blocks(n, q);
        std::vector<std::uint8_t> hits(n * n, 0);
        for (const CellDuty& d : assign_work(own))
            for (std::uint64_t a = 0; a < d.rows.size(); ++a)
                for (std::uint64_t b = 0; b < d.cols.size(); ++b)
                    if (d.covers(a, b)) {
                        auto [i, j] = d.canonical(a, b);
                        ++hits[i * n + j];
                    }
        for (std::uint64_t i = 0; i < n; ++i)
            for (std::uint64_t j = 0; j < n; ++j)
                if (hits[i * n + j] != (i < j ? 1 : 0)) o.fail("pair coverage not exactly once at q=" + std::to_string(q));
    }
    if (o.pass)
        o.detail = "n=300, q=1,2,3 identical bytes (exact and substitute), exactly-once coverage, held <= 2n/q; last run " +
                   std::to_string(edges) + " edges";
    return o;
}

Outcome threshold_semantics() {
    Outcome o;
    std::mt19937_64 rng(1006);
    auto fam = oracle::planted_families(rng, 15, 6, 60, 200, 0.35, 0.03);
    auto store = make_store(fam.names, fam.seqs);
    PipelineConfig cfg;
    cfg.k = 4;
    auto truth = oracle::shared_kmer_pairs(fam.seqs, cfg.k);

    cfg.ck_threshold = 1;
    auto r1 = run_pipeline(store, cfg);
    for (const auto& e : r1.edges) {
        auto it = truth.find({e.i, e.j});
        if (it == truth.end() || it->second.count <= 1) o.fail("pair sharing <= 1 k-mer was aligned");
    }
    std::size_t prev = SIZE_MAX;
    std::string counts;
    for (std::uint32_t t = 0; t <= 8; ++t) {
        cfg.ck_threshold = t;
        auto r = run_pipeline(store, cfg);
        std::size_t want = 0;
        for (const auto& kv : truth) want += kv.second.count > t ? 1 : 0;
        if (r.report.pairs_after_threshold != want) o.fail("t=" + std::to_string(t) + " pair count differs");
        if (r.report.pairs_after_threshold > prev) o.fail("pair count increased with t");
        prev = r.report.pairs_after_threshold;
        counts += (t ? "," : "") + std::to_string(prev);
    }
    if (o.pass) o.detail = "pairs for t=0..8: " + counts;
    return o;
}

Outcome filter_semantics() {
    Outcome o;
    std::size_t cases = 0;
    const FilterConfig f{};
    for (std::uint32_t align_len : {10u, 100u, 1000u, 7u})
        for (std::uint32_t len_short : {10u, 100u, 1000u, 13u})
            for (int dm : {-1, 0, 1})
                for (int dc : {-1, 0, 1})
                    for (bool i_short : {true, false}) {
                        // ids straddling 30 % and 70 %: exact boundary plus one unit either side
                        std::int64_t m0 = (30 * static_cast<std::int64_t>(align_len) + 99) / 100 + dm;
                        std::int64_t c0 = (70 * static_cast<std::int64_t>(len_short) + 99) / 100 + dc;
                        if (m0 < 0 || m0 > align_len || c0 < 0 || c0 > len_short) continue;
                        AlignmentResult r;
                        r.matches = static_cast<std::uint32_t>(m0);
                        r.align_len = align_len;
                        Span cov{0, static_cast<std::uint32_t>(c0)}, other{0, 1};
                        r.span_i = i_short ? cov : other;
                        r.span_j = i_short ? other : cov;
                        std::uint32_t li = i_short ? len_short : len_short + 50;
                        std::uint32_t lj = i_short ? len_short + 50 : len_short;
                        bool expect = 100 * m0 >= 30 * static_cast<std::int64_t>(align_len) &&
                                      100 * c0 >= 70 * static_cast<std::int64_t>(len_short);
                        auto e = score_edge(0, 1, li, lj, r, f);
                        if (e.passed != expect)
                            o.fail("matches " + std::to_string(m0) + "/" + std::to_string(align_len) + " cover " +
                                   std::to_string(c0) + "/" + std::to_string(len_short));
                        if (!score_edge(0, 1, li, lj, r, FilterConfig{WeightMode::Ns, 30, 70}).passed)
                            o.fail("NS mode rejected a pair");
                        ++cases;
                    }
    // equal lengths: the first sequence is the shorter one
    AlignmentResult r;
    r.matches = 50;
    r.align_len = 100;
    r.span_i = {0, 70};
    r.span_j = {0, 69};
    if (!score_edge(0, 1, 100, 100, r, f).passed) o.fail("equal-length tie not resolved to the first sequence");
    if (o.pass) o.detail = std::to_string(cases + 1) + " boundary cases";
    return o;
}

Outcome evaluation_harness() {
    Outcome o;
    {
        std::vector<std::uint32_t> c(10, 0);
        std::vector<std::int64_t> f{0, 0, 0, 0, 0, 1, 1, 1, 1, 1};
        auto pr = weighted_precision_recall(c, f);
        if (pr.precision != 0.5 || pr.recall != 1.0) o.fail("giant cluster case");
        std::vector<std::uint32_t> single{0, 1, 2, 3, 4, 5};
        std::vector<std::int64_t> pairs{0, 0, 1, 1, 2, 2};
        pr = weighted_precision_recall(single, pairs);
        if (pr.precision != 1.0 || pr.recall != 0.5) o.fail("all-singletons case");
    }
    std::mt19937_64 rng(1008);
    auto fam = oracle::planted_families(rng, 10, 10, 100, 300, 0.05, 0.01);
    auto store = make_store(fam.names, fam.seqs);
    PipelineConfig cfg;
    cfg.threads = 2;
    auto res = run_pipeline(store, cfg);
    auto g = SimilarityGraph::assemble(store.size(), fam.names, res.edges, WeightMode::Ani);
    auto clusters = connected_components(g);
    std::vector<std::int64_t> families(fam.family.begin(), fam.family.end());
    auto pr = weighted_precision_recall(clusters, families);
    if (pr.precision < 0.95 || pr.recall < 0.95)
        o.fail("precision " + std::to_string(pr.precision) + " recall " + std::to_string(pr.recall));
    if (o.pass) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "planted families: precision %.4f recall %.4f", pr.precision, pr.recall);
        o.detail = buf;
    }
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_seconds;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> criteria{
        {1, "k-mer encoding", 1, kmer_encoding},
        {2, "substitute k-mer oracle", 30, substitute_oracle},
        {3, "overlap oracle", 120, overlap_oracle},
        {4, "alignment oracle", 120, alignment_oracle},
        {5, "grid obliviousness", 180, grid_obliviousness},
        {6, "threshold semantics", 60, threshold_semantics},
        {7, "filter semantics", 10, filter_semantics},
        {8, "evaluation harness", 60, evaluation_harness},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (o.pass && sec >= c.limit_seconds) o.fail("took " + std::to_string(sec) + " s");
        std::printf("%s criterion %d (%s): %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), sec);
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
