#include "protsim/kmer.hpp"

#include <stdexcept>

namespace protsim {

const std::array<std::int8_t, 256>& Alphabet::table() noexcept {
    static const std::array<std::int8_t, 256> t = [] {
        std::array<std::int8_t, 256> m{};
        m.fill(-1);
        for (int i = 0; i < kAlphabetSize; ++i) {
            auto c = static_cast<unsigned char>(kAlphabetSymbols[static_cast<std::size_t>(i)]);
            m[c] = static_cast<std::int8_t>(i);
            if (c >= 'A' && c <= 'Z') m[c - 'A' + 'a'] = static_cast<std::int8_t>(i);
        }
        return m;
    }();
    return t;
}

std::uint64_t kmer_space(int k) {
    if (k < 1 || k > kMaxK) throw std::invalid_argument("k must be in [1, 13], got " + std::to_string(k));
    std::uint64_t n = 1;
    for (int i = 0; i < k; ++i) n *= kAlphabetSize;
    return n;
}

KmerId encode(std::string_view kmer) {
    if (kmer.empty() || kmer.size() > static_cast<std::size_t>(kMaxK))
        throw std::invalid_argument("k-mer length must be in [1, 13]");
    std::uint64_t v = 0;
    for (char c : kmer) {
        int b = Alphabet::index(c);
        if (b < 0) throw std::invalid_argument(std::string("byte '") + c + "' is not in the protein alphabet");
        v = v * kAlphabetSize + static_cast<std::uint64_t>(b);
    }
    return KmerId{v};
}

std::string decode(KmerId id, int k) {
    if (id.value >= kmer_space(k)) throw std::out_of_range("k-mer id exceeds 24^k");
    std::string s(static_cast<std::size_t>(k), 'A');
    std::uint64_t v = id.value;
    for (int i = k - 1; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = Alphabet::symbol(static_cast<int>(v % kAlphabetSize));
        v /= kAlphabetSize;
    }
    return s;
}

std::vector<KmerHit> extract_kmers(std::string_view residues, int k, bool skip_ambiguous) {
    const std::uint64_t space = kmer_space(k);
    std::vector<KmerHit> out;
    if (residues.size() < static_cast<std::size_t>(k)) return out;
    out.reserve(residues.size() - static_cast<std::size_t>(k) + 1);

    // rolling id; `last_ambiguous` is the most recent ambiguous index in the window
    std::uint64_t v = 0;
    std::int64_t last_ambiguous = -1;
    for (std::size_t i = 0; i < residues.size(); ++i) {
        int b = Alphabet::index(residues[i]);
        if (b < 0) throw std::invalid_argument("residue outside the protein alphabet");
        if (Alphabet::ambiguous(b)) last_ambiguous = static_cast<std::int64_t>(i);
        v = (v * kAlphabetSize + static_cast<std::uint64_t>(b)) % space;
        if (i + 1 < static_cast<std::size_t>(k)) continue;
        std::size_t start = i + 1 - static_cast<std::size_t>(k);
        if (skip_ambiguous && last_ambiguous >= static_cast<std::int64_t>(start)) continue;
        out.push_back({KmerId{v}, static_cast<std::uint32_t>(start)});
    }
    return out;
}

}  // namespace protsim
