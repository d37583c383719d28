#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace protsim {

/// Protein alphabet in the fixed order used for k-mer ids.
inline constexpr std::string_view kAlphabetSymbols = "ARNDCQEGHILKMFPSTWYVBZX*";
inline constexpr int kAlphabetSize = 24;

/// Largest k whose k-mer space 24^k fits comfortably in 64 bits.
inline constexpr int kMaxK = 13;

class Alphabet {
public:
    /// Index 0..23 of a residue byte (case-insensitive), or -1 if the byte
    /// is not part of the alphabet.
    static int index(char c) noexcept { return table()[static_cast<unsigned char>(c)]; }

    static char symbol(int idx) noexcept { return kAlphabetSymbols[static_cast<std::size_t>(idx)]; }

    static bool ambiguous(int idx) noexcept { return idx >= 20; }  // B Z X *

private:
    static const std::array<std::int8_t, 256>& table() noexcept;
};

struct KmerId {
    std::uint64_t value = 0;

    friend constexpr auto operator<=>(const KmerId&, const KmerId&) = default;
};

/// Number of distinct k-mers, 24^k. Throws std::invalid_argument for k outside [1, kMaxK].
std::uint64_t kmer_space(int k);

/// Base-24 positional id of a k-mer string; k is the string length.
KmerId encode(std::string_view kmer);

std::string decode(KmerId id, int k);

struct KmerHit {
    KmerId id;
    std::uint32_t pos = 0;
};

/// All k-mers of `residues` in position order. Sequences shorter than k yield
/// nothing. With `skip_ambiguous`, windows containing B, Z, X or * are dropped.
std::vector<KmerHit> extract_kmers(std::string_view residues, int k, bool skip_ambiguous = false);

}  // namespace protsim
