#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "protsim/align.hpp"
#include "protsim/scoring.hpp"
#include "protsim/semirings.hpp"
#include "protsim/seqstore.hpp"
#include "protsim/spmat.hpp"
#include "protsim/subkmer.hpp"

namespace protsim {

enum class AlignMode { SmithWaterman, XDrop };

struct PipelineConfig {
    int k = 6;
    std::size_t subs = 0;             // substitute k-mers per k-mer; 0 = exact matching
    std::uint32_t ck_threshold = 1;   // pairs sharing this many k-mers or fewer are not aligned
    AlignMode align = AlignMode::XDrop;
    int xdrop = 49;
    GapCosts gaps;
    FilterConfig filter;
    bool skip_ambiguous = false;
    ScoringMatrix scoring = ScoringMatrix::blosum62();
    int threads = 1;

    /// Throws std::invalid_argument describing the first bad field.
    void validate() const;
};

using PositionMatrix = DcscMatrix<std::uint32_t>;
using OverlapMatrix = DcscMatrix<CommonKmers>;

struct CandidatePair {
    std::uint64_t i = 0;
    std::uint64_t j = 0;
    CommonKmers common;
};

/// Distinct k-mers of one sequence with their first start position, ascending by id.
std::vector<std::pair<std::uint64_t, std::uint32_t>> distinct_kmers(std::string_view residues, int k,
                                                                     bool skip_ambiguous = false);

/// n x 24^k matrix; A(i, t) is the first start of k-mer t in sequence i.
PositionMatrix build_A(const SequenceStore& store, int k, bool skip_ambiguous = false, int threads = 1);

/// 24^k x 24^k matrix holding, for each present k-mer, itself at distance 0
/// and its m nearest substitutes at their distances.
PositionMatrix build_S(std::span<const KmerId> present, int k, const ExpenseMatrix& expense, std::size_t m,
                       int threads = 1);

/// K-mers with at least one occurrence (the non-empty columns of A).
std::vector<KmerId> present_kmers(const PositionMatrix& a);

/// Overlap matrix. Exact mode (no S) computes A·Aᵀ. With S the directed
/// product A·S·Aᵀ is made symmetric from its upper triangle: cell (i, j),
/// i < j, decides the pair and (j, i) is its mirror.
OverlapMatrix compute_B(const PositionMatrix& a, const PositionMatrix* s = nullptr, int threads = 1);

/// Keep the strictly upper cells and the diagonal, mirror the upper ones below.
OverlapMatrix symmetrize_from_upper(const OverlapMatrix& directed);

/// Strictly upper cells sharing more than t k-mers, sorted by (i, j).
std::vector<CandidatePair> extract_pairs(const OverlapMatrix& b, std::uint32_t t);

/// Align one candidate in the configured mode; `a` is sequence i, `b` sequence j.
AlignmentResult align_candidate(std::string_view a, std::string_view b, const CommonKmers& common,
                                const PipelineConfig& cfg);

/// Align all candidates concurrently; output is in candidate order.
std::vector<SimilarityEdge> align_pairs(const SequenceStore& store, std::span<const CandidatePair> pairs,
                                        const PipelineConfig& cfg);

struct RunReport {
    std::vector<std::pair<std::string, double>> stage_seconds;
    std::size_t sequences = 0;
    std::size_t nnz_a = 0;
    std::size_t nnz_s = 0;
    std::size_t nnz_b = 0;
    std::size_t pairs_before_threshold = 0;
    std::size_t pairs_after_threshold = 0;
    std::size_t alignments = 0;
    std::size_t edges_passed = 0;

    double total_seconds() const;
    double alignment_percent() const;
    std::string to_text() const;
    std::string to_json() const;
};

struct PipelineResult {
    std::vector<SimilarityEdge> edges;  // every aligned pair, sorted by (i, j)
    RunReport report;
};

/// Single-address-space run: A, optional S, B, threshold, alignment.
PipelineResult run_pipeline(const SequenceStore& store, const PipelineConfig& cfg);

}  // namespace protsim
