#include "protsim/scoring.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

#include "protsim/seqstore.hpp"

namespace protsim {

ScoringMatrix::ScoringMatrix(std::string name, const Table& scores) : name_(std::move(name)), scores_(scores) {}

const ScoringMatrix& ScoringMatrix::blosum62() {
    static const ScoringMatrix m("blosum62", Table{{
    { 4, -1, -2, -2,  0, -1, -1,  0, -2, -1, -1, -1, -1, -2, -1,  1,  0, -3, -2,  0, -2, -1,  0, -4},  // A
    {-1,  5,  0, -2, -3,  1,  0, -2,  0, -3, -2,  2, -1, -3, -2, -1, -1, -3, -2, -3, -1,  0, -1, -4},  // R
    {-2,  0,  6,  1, -3,  0,  0,  0,  1, -3, -3,  0, -2, -3, -2,  1,  0, -4, -2, -3,  3,  0, -1, -4},  // N
    {-2, -2,  1,  6, -3,  0,  2, -1, -1, -3, -4, -1, -3, -3, -1,  0, -1, -4, -3, -3,  4,  1, -1, -4},  // D
    { 0, -3, -3, -3,  9, -3, -4, -3, -3, -1, -1, -3, -1, -2, -3, -1, -1, -2, -2, -1, -3, -3, -2, -4},  // C
    {-1,  1,  0,  0, -3,  5,  2, -2,  0, -3, -2,  1,  0, -3, -1,  0, -1, -2, -1, -2,  0,  3, -1, -4},  // Q
    {-1,  0,  0,  2, -4,  2,  5, -2,  0, -3, -3,  1, -2, -3, -1,  0, -1, -3, -2, -2,  1,  4, -1, -4},  // E
    { 0, -2,  0, -1, -3, -2, -2,  6, -2, -4, -4, -2, -3, -3, -2,  0, -2, -2, -3, -3, -1, -2, -1, -4},  // G
    {-2,  0,  1, -1, -3,  0,  0, -2,  8, -3, -3, -1, -2, -1, -2, -1, -2, -2,  2, -3,  0,  0, -1, -4},  // H
    {-1, -3, -3, -3, -1, -3, -3, -4, -3,  4,  2, -3,  1,  0, -3, -2, -1, -3, -1,  3, -3, -3, -1, -4},  // I
    {-1, -2, -3, -4, -1, -2, -3, -4, -3,  2,  4, -2,  2,  0, -3, -2, -1, -2, -1,  1, -4, -3, -1, -4},  // L
    {-1,  2,  0, -1, -3,  1,  1, -2, -1, -3, -2,  5, -1, -3, -1,  0, -1, -3, -2, -2,  0,  1, -1, -4},  // K
    {-1, -1, -2, -3, -1,  0, -2, -3, -2,  1,  2, -1,  5,  0, -2, -1, -1, -1, -1,  1, -3, -1, -1, -4},  // M
    {-2, -3, -3, -3, -2, -3, -3, -3, -1,  0,  0, -3,  0,  6, -4, -2, -2,  1,  3, -1, -3, -3, -1, -4},  // F
    {-1, -2, -2, -1, -3, -1, -1, -2, -2, -3, -3, -1, -2, -4,  7, -1, -1, -4, -3, -2, -2, -1, -2, -4},  // P
    { 1, -1,  1,  0, -1,  0,  0,  0, -1, -2, -2,  0, -1, -2, -1,  4,  1, -3, -2, -2,  0,  0,  0, -4},  // S
    { 0, -1,  0, -1, -1, -1, -1, -2, -2, -1, -1, -1, -1, -2, -1,  1,  5, -2, -2,  0, -1, -1,  0, -4},  // T
    {-3, -3, -4, -4, -2, -2, -3, -2, -2, -3, -2, -3, -1,  1, -4, -3, -2, 11,  2, -3, -4, -3, -2, -4},  // W
    {-2, -2, -2, -3, -2, -1, -2, -3,  2, -1, -1, -2, -1,  3, -3, -2, -2,  2,  7, -1, -3, -2, -1, -4},  // Y
    { 0, -3, -3, -3, -1, -2, -2, -3, -3,  3,  1, -2,  1, -1, -2, -2,  0, -3, -1,  4, -3, -2, -1, -4},  // V
    {-2, -1,  3,  4, -3,  0,  1, -1,  0, -3, -4,  0, -3, -3, -2,  0, -1, -4, -3, -3,  4,  1, -1, -4},  // B
    {-1,  0,  0,  1, -3,  3,  4, -2,  0, -3, -3,  1, -1, -3, -1,  0, -1, -3, -2, -2,  1,  4, -1, -4},  // Z
    { 0, -1, -1, -1, -2, -1, -1, -1, -1, -1, -1, -1, -1, -1, -2,  0,  0, -2, -1, -1, -1, -1, -1, -4},  // X
    {-4, -4, -4, -4, -4, -4, -4, -4, -4, -4, -4, -4, -4, -4, -4, -4, -4, -4, -4, -4, -4, -4, -4,  1},  // *
    }});
    return m;
}

bool ScoringMatrix::symmetric() const noexcept {
    for (int a = 0; a < kAlphabetSize; ++a)
        for (int b = a + 1; b < kAlphabetSize; ++b)
            if ((*this)(a, b) != (*this)(b, a)) return false;
    return true;
}

ScoringMatrix ScoringMatrix::parse_ncbi(std::string_view text, std::string name) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::vector<int> columns;  // alphabet index per header column, -1 for unknown symbols
    Table t{};
    std::array<bool, kAlphabetSize> seen_row{};

    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        if (columns.empty()) {
            std::string sym;
            while (ls >> sym) {
                if (sym.size() != 1) throw std::runtime_error("scoring matrix: bad header symbol '" + sym + "'");
                columns.push_back(Alphabet::index(sym[0]));
            }
            continue;
        }
        std::string row_sym;
        if (!(ls >> row_sym)) continue;
        if (row_sym.size() != 1) throw std::runtime_error("scoring matrix: bad row symbol '" + row_sym + "'");
        int r = Alphabet::index(row_sym[0]);
        std::vector<int> values;
        int v = 0;
        while (ls >> v) values.push_back(v);
        if (values.size() != columns.size())
            throw std::runtime_error("scoring matrix: row '" + row_sym + "' has " + std::to_string(values.size()) +
                                     " values, expected " + std::to_string(columns.size()));
        if (r < 0) continue;
        for (std::size_t c = 0; c < columns.size(); ++c)
            if (columns[c] >= 0) t[static_cast<std::size_t>(r)][static_cast<std::size_t>(columns[c])] = values[c];
        seen_row[static_cast<std::size_t>(r)] = true;
    }

    for (int a = 0; a < kAlphabetSize; ++a) {
        bool col = false;
        for (int c : columns) col = col || c == a;
        if (!col || !seen_row[static_cast<std::size_t>(a)])
            throw std::runtime_error(std::string("scoring matrix: missing symbol '") + Alphabet::symbol(a) + "'");
    }
    return ScoringMatrix(std::move(name), t);
}

ScoringMatrix ScoringMatrix::load(const std::string& path_or_builtin) {
    if (path_or_builtin == "blosum62" || path_or_builtin == "BLOSUM62") return blosum62();
    return parse_ncbi(read_file(path_or_builtin), path_or_builtin);
}

}  // namespace protsim
