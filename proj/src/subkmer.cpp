#include "protsim/subkmer.hpp"

#include <algorithm>
#include <stdexcept>

#include "protsim/parallel.hpp"

namespace protsim {

ExpenseMatrix ExpenseMatrix::build(const ScoringMatrix& scores) {
    if (!scores.symmetric()) throw std::invalid_argument("scoring matrix '" + scores.name() + "' is not symmetric");
    ExpenseMatrix e;
    for (int a = 0; a < kAlphabetSize; ++a) {
        auto& row = e.rows_[static_cast<std::size_t>(a)];
        row[0] = {0, static_cast<std::uint8_t>(a)};
        std::size_t n = 1;
        for (int b = 0; b < kAlphabetSize; ++b) {
            int cost = b == a ? 0 : std::max(0, scores(a, a) - scores(a, b));
            e.cost_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = cost;
            if (b != a) row[n++] = {cost, static_cast<std::uint8_t>(b)};
        }
        std::stable_sort(row.begin() + 1, row.end(),
                         [](const ExpenseEntry& x, const ExpenseEntry& y) { return x.expense < y.expense; });
    }
    return e;
}

SubKmerSearch::SubKmerSearch(KmerId root, int k, const ExpenseMatrix& expense)
    : root_(root), k_(k), expense_(&expense) {
    if (root.value >= kmer_space(k)) throw std::invalid_argument("root k-mer id exceeds 24^k");
    std::uint64_t v = root.value, w = 1;
    for (int i = k - 1; i >= 0; --i) {
        digits_[static_cast<std::size_t>(i)] = static_cast<int>(v % kAlphabetSize);
        v /= kAlphabetSize;
        weight_[static_cast<std::size_t>(i)] = w;
        w *= kAlphabetSize;
    }
}

SubKmer SubKmerSearch::root() const noexcept {
    return SubKmer{root_, 0, static_cast<std::uint16_t>((1u << k_) - 1)};
}

SubKmer SubKmerSearch::child(const SubKmer& p, int fid, int rank) const noexcept {
    const int from = digits_[static_cast<std::size_t>(fid)];
    const ExpenseEntry& sub = expense_->row(from)[static_cast<std::size_t>(rank)];
    const std::uint64_t w = weight_[static_cast<std::size_t>(fid)];
    SubKmer c;
    // position fid is free in p, so it still holds the root base
    c.kmer = KmerId{p.kmer.value + w * sub.base - w * static_cast<std::uint64_t>(from)};
    c.dist = p.dist + static_cast<std::uint32_t>(sub.expense);
    c.free_mask = static_cast<std::uint16_t>(p.free_mask & ~((2u << fid) - 1));
    return c;
}

void SubKmerSearch::advance_lane(LaneHeap& lanes, const SubKmer& p, int fid, int rank) const {
    if (rank >= kAlphabetSize) return;  // lane retired
    const int from = digits_[static_cast<std::size_t>(fid)];
    auto cost = static_cast<std::uint32_t>(expense_->row(from)[static_cast<std::size_t>(rank)].expense);
    lanes.emplace(p.dist + cost, fid, rank);
}

void SubKmerSearch::make_new_sub_k(const SubKmer& p, LaneHeap& lanes, Heap& heap) const {
    auto [dist, fid, rank] = lanes.top();
    lanes.pop();
    SubKmer c = child(p, fid, rank);
    if (heap.full()) heap.pop_max();
    heap.push(c);
    advance_lane(lanes, p, fid, rank + 1);
}

void SubKmerSearch::explore(const SubKmer& p, Heap& heap) const {
    if (heap.capacity() == 0) return;
    LaneHeap lanes;
    for (int fid = 0; fid < k_; ++fid)
        if (p.free_mask & (1u << fid)) advance_lane(lanes, p, fid, 1);

    while (!lanes.empty() && !heap.full()) make_new_sub_k(p, lanes, heap);

    while (!lanes.empty()) {
        auto [dist, fid, rank] = lanes.top();
        const SubKmer& worst = heap.max();
        if (dist > worst.dist) break;  // lanes only get more expensive
        if (child(p, fid, rank) < worst) {
            make_new_sub_k(p, lanes, heap);
        } else {
            lanes.pop();
            advance_lane(lanes, p, fid, rank + 1);
        }
    }
}

std::vector<SubKmer> SubKmerSearch::enumerate_at(std::uint32_t dist) const {
    std::vector<SubKmer> out;
    // depth-first over positions; rows are sorted so each position stops at the first overshoot
    struct Frame {
        int pos;
        std::uint64_t value;
        std::uint32_t spent;
        int last_sub;
    };
    const auto all = static_cast<std::uint16_t>((1u << k_) - 1);
    std::vector<Frame> stack{{0, 0, 0, -1}};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.pos == k_) {
            if (f.spent == dist && f.value != root_.value)
                out.push_back({KmerId{f.value}, dist,
                               static_cast<std::uint16_t>(all & ~((1u << (f.last_sub + 1)) - 1))});
            continue;
        }
        const auto& row = expense_->row(digits_[static_cast<std::size_t>(f.pos)]);
        for (const ExpenseEntry& e : row) {
            auto spent = f.spent + static_cast<std::uint32_t>(e.expense);
            if (spent > dist) break;
            int last = e.base == row[0].base ? f.last_sub : f.pos;
            stack.push_back({f.pos + 1, f.value + weight_[static_cast<std::size_t>(f.pos)] * e.base, spent, last});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<SubKmer> find_sub_kmers(KmerId root, int k, const ExpenseMatrix& expense, std::size_t m) {
    if (m == 0) return {};
    if (m >= kmer_space(k))
        throw std::invalid_argument("requested " + std::to_string(m) + " substitutes but only 24^k - 1 exist");

    SubKmerSearch search(root, k, expense);
    SubKmerSearch::Heap heap(m);
    std::vector<SubKmer> nbrs;
    nbrs.reserve(m);

    search.explore(search.root(), heap);
    while (nbrs.size() < m && !heap.empty()) {
        SubKmer next = heap.pop_min();
        nbrs.push_back(next);
        search.explore(next, heap);
    }

    // Neighbours strictly closer than the m-th distance are exact. Zero-cost
    // substitutions can reorder equal-distance k-mers across the tree, so the
    // boundary distance is re-enumerated to apply the id tie-break.
    const std::uint32_t boundary = nbrs.back().dist;
    std::vector<SubKmer> out;
    out.reserve(m);
    for (const SubKmer& s : nbrs)
        if (s.dist < boundary) out.push_back(s);
    std::sort(out.begin(), out.end());
    std::vector<SubKmer> ties = search.enumerate_at(boundary);
    for (std::size_t i = 0; out.size() < m && i < ties.size(); ++i) out.push_back(ties[i]);
    if (out.size() != m) throw std::logic_error("substitute k-mer search lost candidates");
    return out;
}

std::vector<std::vector<SubKmer>> find_sub_kmers_batch(std::span<const KmerId> roots, int k,
                                                       const ExpenseMatrix& expense, std::size_t m, int threads) {
    std::vector<std::vector<SubKmer>> out(roots.size());
    parallel_for(roots.size(), threads, [&](std::size_t i) { out[i] = find_sub_kmers(roots[i], k, expense, m); });
    return out;
}

}  // namespace protsim
