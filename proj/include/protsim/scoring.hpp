#pragma once

#include <array>
#include <string>
#include <string_view>

#include "protsim/kmer.hpp"

namespace protsim {

/// Symmetric 24x24 residue substitution scores, indexed by alphabet position.
class ScoringMatrix {
public:
    using Table = std::array<std::array<int, kAlphabetSize>, kAlphabetSize>;

    ScoringMatrix() = default;
    ScoringMatrix(std::string name, const Table& scores);

    static const ScoringMatrix& blosum62();

    /// Parse the NCBI text layout: '#' comments, a header row of symbols,
    /// then one row per symbol. Every alphabet symbol must be present;
    /// extra symbols (J, U, O) are ignored.
    static ScoringMatrix parse_ncbi(std::string_view text, std::string name = "custom");
    static ScoringMatrix load(const std::string& path_or_builtin);

    int operator()(int a, int b) const noexcept {
        return scores_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    }
    int score(char a, char b) const noexcept { return (*this)(Alphabet::index(a), Alphabet::index(b)); }

    const std::string& name() const noexcept { return name_; }
    const Table& table() const noexcept { return scores_; }
    bool symmetric() const noexcept;

private:
    std::string name_;
    Table scores_{};
};

}  // namespace protsim
