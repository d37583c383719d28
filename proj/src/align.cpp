#include "protsim/align.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

namespace protsim {

namespace {

constexpr int kNeg = std::numeric_limits<int>::min() / 4;

// trace byte layout: bits 0-1 H source, bit 2 E extends E, bit 3 F extends F
enum : std::uint8_t { kStop = 0, kDiag = 1, kFromE = 2, kFromF = 3, kEExt = 4, kFExt = 8 };

std::vector<std::uint8_t> to_indices(std::string_view s) {
    std::vector<std::uint8_t> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        int b = Alphabet::index(s[i]);
        if (b < 0) throw std::invalid_argument("alignment input contains a non-alphabet byte");
        out[i] = static_cast<std::uint8_t>(b);
    }
    return out;
}

void count_matches(std::string_view a, std::string_view b, AlignmentResult& r) {
    r.matches = 0;
    r.align_len = static_cast<std::uint32_t>(r.ops.size());
    std::size_t i = r.span_i.begin, j = r.span_j.begin;
    for (char op : r.ops) {
        if (op == 'M') {
            if (Alphabet::index(a[i]) == Alphabet::index(b[j])) ++r.matches;
            ++i;
            ++j;
        } else if (op == 'I') {
            ++i;
        } else {
            ++j;
        }
    }
}

// Walk back from (i, j) in state H; returns ops in reverse order and moves i, j to the start.
std::string traceback(std::size_t& i, std::size_t& j, auto&& trace_at) {
    std::string ops;
    enum { H, E, F } state = H;
    for (;;) {
        std::uint8_t t = trace_at(i, j);
        if (state == H) {
            std::uint8_t src = t & 3;
            if (src == kStop) break;
            if (src == kDiag) {
                ops.push_back('M');
                --i;
                --j;
            } else {
                state = src == kFromE ? E : F;
            }
        } else if (state == E) {
            ops.push_back('I');
            state = (t & kEExt) ? E : H;
            --i;
        } else {
            ops.push_back('D');
            state = (t & kFExt) ? F : H;
            --j;
        }
    }
    return ops;
}

struct Extension {
    int score = 0;
    std::uint32_t len_a = 0;
    std::uint32_t len_b = 0;
    std::string ops;  // from the anchor outward
};

// Anchored gapped extension of a and b from their starts with x-drop pruning.
Extension xdrop_extend(const std::uint8_t* a, std::size_t la, const std::uint8_t* b, std::size_t lb,
                       const ScoringMatrix& sm, GapCosts gaps, int xdrop) {
    const int open_ext = gaps.open + gaps.extend;
    struct Row {
        std::size_t lo = 0;  // first computed column
        std::vector<int> h, e;
        std::vector<std::uint8_t> trace;
    };
    std::vector<Row> rows;
    int best = 0;
    std::size_t best_i = 0, best_j = 0;

    std::size_t prev_lo = 0, prev_hi = 0;  // alive window of the previous row, inclusive
    for (std::size_t i = 0; i <= la; ++i) {
        Row row;
        const Row* prev = i == 0 ? nullptr : &rows.back();
        row.lo = i == 0 ? 0 : prev_lo;
        int f = kNeg;
        int h_left = kNeg;
        std::size_t alive_lo = std::numeric_limits<std::size_t>::max(), alive_hi = 0;
        for (std::size_t j = row.lo; j <= lb; ++j) {
            std::uint8_t t = kStop;
            int h;
            int e = kNeg;
            if (i == 0 && j == 0) {
                h = 0;
            } else {
                bool in_prev = prev && j >= prev->lo && j < prev->lo + prev->h.size();
                if (in_prev) {
                    std::size_t pj = j - prev->lo;
                    int open = prev->h[pj] == kNeg ? kNeg : prev->h[pj] - open_ext;
                    int ext = prev->e[pj] == kNeg ? kNeg : prev->e[pj] - gaps.extend;
                    e = std::max(open, ext);
                    if (ext > open) t |= kEExt;
                }
                int f_open = h_left == kNeg ? kNeg : h_left - open_ext;
                int f_ext = f == kNeg ? kNeg : f - gaps.extend;
                f = std::max(f_open, f_ext);
                if (f_ext > f_open) t |= kFExt;

                int d = kNeg;
                if (prev && j >= 1 && j - 1 >= prev->lo && j - 1 < prev->lo + prev->h.size()) {
                    int hd = prev->h[j - 1 - prev->lo];
                    if (hd != kNeg) d = hd + sm(a[i - 1], b[j - 1]);
                }
                h = d;
                t |= kDiag;
                if (e > h) {
                    h = e;
                    t = static_cast<std::uint8_t>((t & ~3) | kFromE);
                }
                if (f > h) {
                    h = f;
                    t = static_cast<std::uint8_t>((t & ~3) | kFromF);
                }
                if (h == kNeg || h < best - xdrop) {
                    h = kNeg;
                    e = kNeg;
                    f = kNeg;
                }
            }
            row.h.push_back(h);
            row.e.push_back(e);
            row.trace.push_back(t);
            h_left = h;
            if (h != kNeg) {
                alive_lo = std::min(alive_lo, j);
                alive_hi = j;
                if (h > best) {
                    best = h;
                    best_i = i;
                    best_j = j;
                }
            } else if (j > (i == 0 ? 0 : prev_hi + 1)) {
                break;  // beyond the previous window nothing can revive this row
            }
        }
        if (alive_lo == std::numeric_limits<std::size_t>::max()) break;
        // drop trailing dead cells so later rows only look at the alive window
        prev_lo = alive_lo;
        prev_hi = alive_hi;
        rows.push_back(std::move(row));
    }

    Extension ext;
    ext.score = best;
    std::size_t i = best_i, j = best_j;
    std::string ops = traceback(i, j, [&](std::size_t r, std::size_t c) -> std::uint8_t {
        if (r == 0 && c == 0) return kStop;
        const Row& row = rows[r];
        return row.trace[c - row.lo];
    });
    std::reverse(ops.begin(), ops.end());
    ext.ops = std::move(ops);
    ext.len_a = static_cast<std::uint32_t>(best_i);
    ext.len_b = static_cast<std::uint32_t>(best_j);
    return ext;
}

}  // namespace

AlignmentResult smith_waterman(std::string_view a, std::string_view b, const ScoringMatrix& scoring, GapCosts gaps) {
    const auto ea = to_indices(a), eb = to_indices(b);
    const std::size_t la = ea.size(), lb = eb.size();
    const int open_ext = gaps.open + gaps.extend;
    const std::size_t width = lb + 1;

    std::vector<std::uint8_t> trace((la + 1) * width, kStop);
    std::vector<int> h_prev(width, 0), h_cur(width, 0), e_prev(width, kNeg), e_cur(width, kNeg);

    int best = 0;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 1; i <= la; ++i) {
        h_cur[0] = 0;
        e_cur[0] = kNeg;
        int f = kNeg;
        for (std::size_t j = 1; j <= lb; ++j) {
            std::uint8_t t = 0;
            int e_open = h_prev[j] - open_ext, e_ext = e_prev[j] - gaps.extend;
            int e = std::max(e_open, e_ext);
            if (e_ext > e_open) t |= kEExt;
            int f_open = h_cur[j - 1] - open_ext, f_ext = f - gaps.extend;
            f = std::max(f_open, f_ext);
            if (f_ext > f_open) t |= kFExt;

            int h = 0;
            std::uint8_t src = kStop;
            int d = h_prev[j - 1] + scoring(ea[i - 1], eb[j - 1]);
            if (d > h) { h = d; src = kDiag; }
            if (e > h) { h = e; src = kFromE; }
            if (f > h) { h = f; src = kFromF; }
            trace[i * width + j] = static_cast<std::uint8_t>(t | src);
            h_cur[j] = h;
            e_cur[j] = e;
            if (h > best) {
                best = h;
                bi = i;
                bj = j;
            }
        }
        std::swap(h_prev, h_cur);
        std::swap(e_prev, e_cur);
    }

    AlignmentResult r;
    r.score = best;
    if (best == 0) return r;
    std::size_t i = bi, j = bj;
    std::string ops = traceback(i, j, [&](std::size_t r_, std::size_t c_) { return trace[r_ * width + c_]; });
    std::reverse(ops.begin(), ops.end());
    r.ops = std::move(ops);
    r.span_i = {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(bi)};
    r.span_j = {static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(bj)};
    count_matches(a, b, r);
    return r;
}

AlignmentResult xdrop_align(std::string_view a, std::string_view b, const CommonKmers& seeds, int k, int xdrop,
                            const ScoringMatrix& scoring, GapCosts gaps) {
    if (seeds.nseeds == 0) throw std::invalid_argument("xdrop_align: no seed");
    if (k < 1) throw std::invalid_argument("xdrop_align: k must be positive");
    const auto ea = to_indices(a), eb = to_indices(b);
    std::vector<std::uint8_t> ra(ea.rbegin(), ea.rend()), rb(eb.rbegin(), eb.rend());
    const auto uk = static_cast<std::size_t>(k);

    AlignmentResult best;
    bool have = false;
    for (std::size_t s = 0; s < seeds.nseeds; ++s) {
        const SeedPair& seed = seeds.seeds[s];
        if (seed.row_pos + uk > ea.size() || seed.col_pos + uk > eb.size())
            throw std::out_of_range("seed (" + std::to_string(seed.row_pos) + ", " + std::to_string(seed.col_pos) +
                                    ") does not fit the sequences");
        int seed_score = 0;
        for (std::size_t t = 0; t < uk; ++t) seed_score += scoring(ea[seed.row_pos + t], eb[seed.col_pos + t]);

        const std::size_t ri = seed.row_pos + uk, rj = seed.col_pos + uk;
        Extension right = xdrop_extend(ea.data() + ri, ea.size() - ri, eb.data() + rj, eb.size() - rj, scoring, gaps, xdrop);
        Extension left = xdrop_extend(ra.data() + (ra.size() - seed.row_pos), seed.row_pos,
                                      rb.data() + (rb.size() - seed.col_pos), seed.col_pos, scoring, gaps, xdrop);

        AlignmentResult r;
        r.score = left.score + seed_score + right.score;
        if (have && r.score <= best.score) continue;
        r.ops.assign(left.ops.rbegin(), left.ops.rend());
        r.ops.append(uk, 'M');
        r.ops += right.ops;
        r.span_i = {seed.row_pos - left.len_a, static_cast<std::uint32_t>(ri + right.len_a)};
        r.span_j = {seed.col_pos - left.len_b, static_cast<std::uint32_t>(rj + right.len_b)};
        count_matches(a, b, r);
        best = std::move(r);
        have = true;
    }
    return best;
}

int alignment_score(std::string_view a, std::string_view b, const AlignmentResult& r, const ScoringMatrix& scoring,
                    GapCosts gaps) {
    int score = 0;
    std::size_t i = r.span_i.begin, j = r.span_j.begin;
    char prev = 'M';
    for (char op : r.ops) {
        if (op == 'M') {
            score += scoring.score(a[i++], b[j++]);
        } else {
            score -= gaps.extend + (op != prev ? gaps.open : 0);
            op == 'I' ? ++i : ++j;
        }
        prev = op;
    }
    return score;
}

bool passes_filter(double ani, double cov_short, const FilterConfig& cfg) {
    if (cfg.mode == WeightMode::Ns) return true;
    return ani >= cfg.ani_min && cov_short >= cfg.cov_min;
}

SimilarityEdge score_edge(std::uint64_t i, std::uint64_t j, std::uint32_t len_i, std::uint32_t len_j,
                          const AlignmentResult& r, const FilterConfig& cfg) {
    SimilarityEdge e;
    e.i = i;
    e.j = j;
    e.score = r.score;
    const bool i_short = len_i <= len_j;
    const std::uint32_t len_short = i_short ? len_i : len_j;
    const std::uint32_t span_short = i_short ? r.span_i.length() : r.span_j.length();
    e.ani = r.align_len == 0 ? 0.0 : 100.0 * r.matches / r.align_len;
    e.cov_short = len_short == 0 ? 0.0 : 100.0 * span_short / len_short;
    e.ns = len_short == 0 ? 0.0 : static_cast<double>(r.score) / len_short;
    if (cfg.mode == WeightMode::Ns) {
        e.passed = true;
    } else {
        // cross-multiplied
        e.passed = 100.0 * r.matches >= cfg.ani_min * r.align_len && 100.0 * span_short >= cfg.cov_min * len_short;
    }
    return e;
}

}  // namespace protsim
