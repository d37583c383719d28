#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <tuple>

#include "protsim/spmat.hpp"

namespace protsim {

/// One shared k-mer: its id and start positions on the row and column sequence.
struct SeedPair {
    std::uint64_t kmer = 0;
    std::uint32_t row_pos = 0;
    std::uint32_t col_pos = 0;

    friend bool operator==(const SeedPair&, const SeedPair&) = default;
};

/// Payload of an overlap cell: how many k-mers two sequences share, and the
/// seeds of the two smallest shared k-mer ids.
struct CommonKmers {
    std::uint32_t count = 0;
    std::uint8_t nseeds = 0;
    std::array<SeedPair, 2> seeds{};

    static CommonKmers single(const SeedPair& s) {
        CommonKmers c;
        c.count = 1;
        c.nseeds = 1;
        c.seeds[0] = s;
        return c;
    }

    /// Order-independent fold: counts add, the two smallest k-mer ids survive.
    void merge(const CommonKmers& other) {
        count += other.count;
        std::array<SeedPair, 4> all{};
        std::size_t n = 0;
        for (std::size_t i = 0; i < nseeds; ++i) all[n++] = seeds[i];
        for (std::size_t i = 0; i < other.nseeds; ++i) all[n++] = other.seeds[i];
        std::sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n),
                  [](const SeedPair& a, const SeedPair& b) {
                      return std::tie(a.kmer, a.row_pos, a.col_pos) < std::tie(b.kmer, b.row_pos, b.col_pos);
                  });
        nseeds = static_cast<std::uint8_t>(std::min<std::size_t>(n, 2));
        for (std::size_t i = 0; i < nseeds; ++i) seeds[i] = all[i];
    }

    /// The same cell seen from the transposed position.
    CommonKmers mirrored() const {
        CommonKmers c = *this;
        for (std::size_t i = 0; i < nseeds; ++i) std::swap(c.seeds[i].row_pos, c.seeds[i].col_pos);
        return c;
    }

    std::string summary() const {
        std::string s = std::to_string(count);
        for (std::size_t i = 0; i < nseeds; ++i)
            s += " " + std::to_string(seeds[i].kmer) + ":" + std::to_string(seeds[i].row_pos) + "," +
                 std::to_string(seeds[i].col_pos);
        return s;
    }

    friend bool operator==(const CommonKmers& a, const CommonKmers& b) {
        if (a.count != b.count || a.nseeds != b.nseeds) return false;
        for (std::size_t i = 0; i < a.nseeds; ++i)
            if (!(a.seeds[i] == b.seeds[i])) return false;
        return true;
    }
};

/// A·Aᵀ with position payloads: multiply pairs the two start positions of
/// the shared k-mer, add counts and keeps the smallest-id seeds.
/// `inner_offset` maps a block-local inner index back to the global k-mer id.
struct ExactMatchSemiring {
    using lhs_type = std::uint32_t;
    using rhs_type = std::uint32_t;
    using value_type = CommonKmers;

    Index inner_offset = 0;

    CommonKmers multiply(std::uint32_t row_pos, std::uint32_t col_pos, Index, Index, Index inner) const {
        return CommonKmers::single({inner + inner_offset, row_pos, col_pos});
    }
    void add(CommonKmers& acc, CommonKmers&& part) const { acc.merge(part); }
    bool is_identity(const CommonKmers& c) const { return c.count == 0; }
};

/// Where a substitute k-mer "occurs" in a sequence: the start of the closest
/// original k-mer mapping to it.
struct SubstitutePos {
    std::uint32_t pos = 0;
    std::uint32_t dist = 0;
    std::uint64_t origin = 0;

    friend bool operator==(const SubstitutePos&, const SubstitutePos&) = default;
};

/// A·S: positions times substitution distances; add keeps the closest
/// original k-mer (ties to the smaller original id).
struct ClosestKmerSemiring {
    using lhs_type = std::uint32_t;
    using rhs_type = std::uint32_t;
    using value_type = SubstitutePos;

    Index inner_offset = 0;

    SubstitutePos multiply(std::uint32_t pos, std::uint32_t dist, Index, Index, Index inner) const {
        return {pos, dist, inner + inner_offset};
    }
    void add(SubstitutePos& acc, SubstitutePos&& part) const {
        if (std::tie(part.dist, part.origin) < std::tie(acc.dist, acc.origin)) acc = part;
    }
    bool is_identity(const SubstitutePos&) const { return false; }
};

/// (A·S)·Aᵀ: behaves as the exact-match semiring on the recorded positions.
struct SubstituteMatchSemiring {
    using lhs_type = SubstitutePos;
    using rhs_type = std::uint32_t;
    using value_type = CommonKmers;

    Index inner_offset = 0;

    CommonKmers multiply(const SubstitutePos& row, std::uint32_t col_pos, Index, Index, Index inner) const {
        return CommonKmers::single({inner + inner_offset, row.pos, col_pos});
    }
    void add(CommonKmers& acc, CommonKmers&& part) const { acc.merge(part); }
    bool is_identity(const CommonKmers& c) const { return c.count == 0; }
};

}  // namespace protsim
