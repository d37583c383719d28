#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "protsim/scoring.hpp"
#include "protsim/semirings.hpp"

namespace protsim {

/// Affine gap penalty: a gap of length L costs open + extend * L.
struct GapCosts {
    int open = 11;
    int extend = 1;
};

/// Half-open residue range.
struct Span {
    std::uint32_t begin = 0;
    std::uint32_t end = 0;

    std::uint32_t length() const noexcept { return end - begin; }
    friend bool operator==(const Span&, const Span&) = default;
};

/// One alignment. `ops` lists columns left to right: 'M' pairs a residue of
/// each sequence, 'I' a residue of the first against a gap, 'D' a residue
/// of the second against a gap.
struct AlignmentResult {
    int score = 0;
    Span span_i;
    Span span_j;
    std::uint32_t matches = 0;
    std::uint32_t align_len = 0;
    std::string ops;
};

/// Optimal local alignment (Gotoh). Scores never go negative; a pair with
/// no positive-scoring column yields score 0 and an empty alignment.
AlignmentResult smith_waterman(std::string_view a, std::string_view b, const ScoringMatrix& scoring,
                               GapCosts gaps = {});

/// Gapped x-drop extension from each stored seed in both directions; cells
/// scoring more than `xdrop` below the best seen so far are abandoned. The
/// highest-scoring seed extension wins (first seed on ties). Throws
/// std::out_of_range if a seed does not fit inside both sequences.
AlignmentResult xdrop_align(std::string_view a, std::string_view b, const CommonKmers& seeds, int k, int xdrop,
                            const ScoringMatrix& scoring, GapCosts gaps = {});

/// Score of the alignment described by `r.ops` starting at the span begins.
int alignment_score(std::string_view a, std::string_view b, const AlignmentResult& r, const ScoringMatrix& scoring,
                    GapCosts gaps = {});

enum class WeightMode { Ani, Ns };

struct FilterConfig {
    WeightMode mode = WeightMode::Ani;
    double ani_min = 30.0;
    double cov_min = 70.0;
};

/// Inclusive thresholds: pairs are vetoed only when strictly below.
bool passes_filter(double ani, double cov_short, const FilterConfig& cfg);

struct SimilarityEdge {
    std::uint64_t i = 0;
    std::uint64_t j = 0;
    int score = 0;
    double ani = 0;        // percent identical columns
    double ns = 0;         // score / shorter length
    double cov_short = 0;  // percent of the shorter sequence inside the alignment
    bool passed = false;
};

/// Metrics and filter status of an aligned pair. With equal lengths the first
/// sequence counts as the shorter one. NS mode applies no cut-off.
SimilarityEdge score_edge(std::uint64_t i, std::uint64_t j, std::uint32_t len_i, std::uint32_t len_j,
                          const AlignmentResult& r, const FilterConfig& cfg);

}  // namespace protsim
