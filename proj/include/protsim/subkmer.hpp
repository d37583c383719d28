#pragma once

#include <array>
#include <cstdint>
#include <queue>
#include <span>
#include <tuple>
#include <vector>

#include "protsim/kmer.hpp"
#include "protsim/minmax_heap.hpp"
#include "protsim/scoring.hpp"

namespace protsim {

struct ExpenseEntry {
    int expense = 0;
    std::uint8_t base = 0;

    friend bool operator==(const ExpenseEntry&, const ExpenseEntry&) = default;
};

/// Per-base substitution costs (self score minus pair score), each row
/// sorted ascending. Entry 0 of every row is the base itself at cost 0.
class ExpenseMatrix {
public:
    using Row = std::array<ExpenseEntry, kAlphabetSize>;

    /// Throws std::invalid_argument if `scores` is not symmetric. Pair scores
    /// above the self score are clamped to cost 0.
    static ExpenseMatrix build(const ScoringMatrix& scores);

    const Row& row(int base) const noexcept { return rows_[static_cast<std::size_t>(base)]; }

    /// Cost of replacing `from` by `to`.
    int cost(int from, int to) const noexcept {
        return cost_[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)];
    }

private:
    std::array<Row, kAlphabetSize> rows_{};
    std::array<std::array<int, kAlphabetSize>, kAlphabetSize> cost_{};
};

/// A candidate substitute k-mer. `free_mask` bit i is set while position i
/// may still be substituted.
struct SubKmer {
    KmerId kmer;
    std::uint32_t dist = 0;
    std::uint16_t free_mask = 0;

    friend bool operator<(const SubKmer& a, const SubKmer& b) noexcept {
        return std::tie(a.dist, a.kmer) < std::tie(b.dist, b.kmer);
    }
};

/// Root-specific state shared by the explore/insert steps.
class SubKmerSearch {
public:
    /// (distance, free index, substitution rank), ordered lexicographically
    using Lane = std::tuple<std::uint32_t, int, int>;
    using LaneHeap = std::priority_queue<Lane, std::vector<Lane>, std::greater<>>;
    using Heap = MinMaxHeap<SubKmer>;

    SubKmerSearch(KmerId root, int k, const ExpenseMatrix& expense);

    SubKmer root() const noexcept;
    int k() const noexcept { return k_; }
    int root_base(int pos) const noexcept { return digits_[static_cast<std::size_t>(pos)]; }

    /// Push the cheapest single-substitution children of `p` into `heap`:
    /// unconditionally while the heap has room, afterwards only children
    /// that precede the heap maximum.
    void explore(const SubKmer& p, Heap& heap) const;

    /// Pop the cheapest lane, build that child of `p`, insert it (evicting
    /// the maximum when full) and re-queue the lane at its next rank.
    void make_new_sub_k(const SubKmer& p, LaneHeap& lanes, Heap& heap) const;

    /// Child of `p` for lane (`fid`, `rank`). The child keeps only the free
    /// positions after `fid`, so every k-mer has a single parent.
    SubKmer child(const SubKmer& p, int fid, int rank) const noexcept;

    /// Every k-mer other than the root at exactly `dist`, ascending by id.
    std::vector<SubKmer> enumerate_at(std::uint32_t dist) const;

private:
    void advance_lane(LaneHeap& lanes, const SubKmer& p, int fid, int rank) const;

    KmerId root_;
    int k_;
    const ExpenseMatrix* expense_;
    std::array<int, kMaxK> digits_{};
    std::array<std::uint64_t, kMaxK> weight_{};  // 24^(k-1-i)
};

/// The m nearest substitute k-mers of `root` (root excluded), sorted by
/// (distance, id). m = 0 yields nothing; m >= 24^k throws std::invalid_argument.
std::vector<SubKmer> find_sub_kmers(KmerId root, int k, const ExpenseMatrix& expense, std::size_t m);

/// find_sub_kmers over many roots, split across `threads` workers.
std::vector<std::vector<SubKmer>> find_sub_kmers_batch(std::span<const KmerId> roots, int k,
                                                       const ExpenseMatrix& expense, std::size_t m,
                                                       int threads = 1);

}  // namespace protsim
