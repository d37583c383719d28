#pragma once

// Test-side generators and brute-force oracles. Nothing here calls the
// library code it is used to check.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "protsim/scoring.hpp"

namespace oracle {

inline const std::string kSymbols = "ARNDCQEGHILKMFPSTWYVBZX*";
inline const std::string kStandard = "ARNDCQEGHILKMFPSTWYV";

inline int sym(char c) { return static_cast<int>(kSymbols.find(c)); }

inline std::string random_protein(std::mt19937_64& rng, std::size_t len, const std::string& alphabet = kStandard) {
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::string s(len, 'A');
    for (auto& c : s) c = alphabet[pick(rng)];
    return s;
}

/// Point mutations at `rate` plus occasional short indels.
inline std::string mutate(std::mt19937_64& rng, const std::string& parent, double rate, double indel_rate = 0.0) {
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<std::size_t> pick(0, kStandard.size() - 1);
    std::string out;
    for (char c : parent) {
        double x = u(rng);
        if (x < indel_rate / 2) continue;
        if (x < indel_rate) out.push_back(kStandard[pick(rng)]);
        out.push_back(u(rng) < rate ? kStandard[pick(rng)] : c);
    }
    return out;
}

struct Family {
    std::vector<std::string> names;
    std::vector<std::string> seqs;
    std::vector<int> family;
};

inline Family planted_families(std::mt19937_64& rng, int families, int copies, std::size_t min_len,
                               std::size_t max_len, double rate, double indel_rate = 0.0) {
    Family f;
    std::uniform_int_distribution<std::size_t> len(min_len, max_len);
    for (int p = 0; p < families; ++p) {
        std::string parent = random_protein(rng, len(rng));
        for (int c = 0; c < copies; ++c) {
            f.names.push_back("fam" + std::to_string(p) + "_" + std::to_string(c));
            f.seqs.push_back(mutate(rng, parent, rate, indel_rate));
            f.family.push_back(p);
        }
    }
    return f;
}

inline std::string to_fasta(const std::vector<std::string>& names, const std::vector<std::string>& seqs,
                            std::size_t wrap = 0) {
    std::string out;
    for (std::size_t i = 0; i < seqs.size(); ++i) {
        out += '>' + names[i] + '\n';
        if (wrap == 0) {
            out += seqs[i] + '\n';
        } else {
            for (std::size_t p = 0; p < seqs[i].size(); p += wrap) out += seqs[i].substr(p, wrap) + '\n';
        }
    }
    return out;
}

/// Line-oriented FASTA reader: header lines start with '>', all other lines
/// are concatenated after removing whitespace.
inline std::vector<std::pair<std::string, std::string>> simple_fasta(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::size_t p = 0;
    while (p < text.size()) {
        std::size_t e = text.find('\n', p);
        if (e == std::string::npos) e = text.size();
        std::string line = text.substr(p, e - p);
        p = e + 1;
        if (!line.empty() && line[0] == '>') {
            std::string name = line.substr(1);
            name = name.substr(0, name.find_first_of(" \t\r"));
            out.emplace_back(name, "");
        } else if (!out.empty()) {
            for (char c : line)
                if (!std::isspace(static_cast<unsigned char>(c))) out.back().second.push_back(static_cast<char>(std::toupper(c)));
        }
    }
    return out;
}

inline std::uint64_t kmer_value(const std::string& s) {
    std::uint64_t v = 0;
    for (char c : s) v = v * 24 + static_cast<std::uint64_t>(sym(c));
    return v;
}

inline std::uint64_t ipow24(int k) {
    std::uint64_t v = 1;
    for (int i = 0; i < k; ++i) v *= 24;
    return v;
}

/// Distinct k-mers of s mapped to their first start.
inline std::map<std::uint64_t, std::uint32_t> kmer_first_pos(const std::string& s, int k) {
    std::map<std::uint64_t, std::uint32_t> out;
    for (std::size_t p = 0; p + static_cast<std::size_t>(k) <= s.size(); ++p)
        out.emplace(kmer_value(s.substr(p, static_cast<std::size_t>(k))), static_cast<std::uint32_t>(p));
    return out;
}

/// cost[a][b] = max(0, M[a][a] - M[a][b])
inline std::array<std::array<int, 24>, 24> expense_table(const protsim::ScoringMatrix& m) {
    std::array<std::array<int, 24>, 24> c{};
    for (int a = 0; a < 24; ++a)
        for (int b = 0; b < 24; ++b) c[a][b] = std::max(0, m(a, a) - m(a, b));
    return c;
}

inline std::vector<int> digits(std::uint64_t v, int k) {
    std::vector<int> d(static_cast<std::size_t>(k));
    for (int i = k - 1; i >= 0; --i) {
        d[static_cast<std::size_t>(i)] = static_cast<int>(v % 24);
        v /= 24;
    }
    return d;
}

inline std::uint32_t distance(std::uint64_t from, std::uint64_t to, int k, const std::array<std::array<int, 24>, 24>& c) {
    auto a = digits(from, k), b = digits(to, k);
    std::uint32_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += static_cast<std::uint32_t>(c[a[i]][b[i]]);
    return d;
}

/// Every k-mer except the root, ordered by (distance, id), cut to m.
inline std::vector<std::pair<std::uint32_t, std::uint64_t>> exhaustive_nearest(
    std::uint64_t root, int k, const std::array<std::array<int, 24>, 24>& c, std::size_t m) {
    std::vector<std::pair<std::uint32_t, std::uint64_t>> all;
    const std::uint64_t space = ipow24(k);
    for (std::uint64_t v = 0; v < space; ++v)
        if (v != root) all.emplace_back(distance(root, v, k, c), v);
    std::sort(all.begin(), all.end());
    all.resize(std::min(all.size(), m));
    return all;
}

/// Same result for larger k: depth-first over all k-mers within a growing
/// distance bound until at least m are found.
inline std::vector<std::pair<std::uint32_t, std::uint64_t>> bounded_nearest(
    std::uint64_t root, int k, const std::array<std::array<int, 24>, 24>& c, std::size_t m) {
    auto rd = digits(root, k);
    for (std::uint32_t bound = 0;; ++bound) {
        std::vector<std::pair<std::uint32_t, std::uint64_t>> found;
        auto dfs = [&](auto&& self, int pos, std::uint32_t d, std::uint64_t v) -> void {
            if (pos == k) {
                if (v != root) found.emplace_back(d, v);
                return;
            }
            for (int b = 0; b < 24; ++b) {
                std::uint32_t nd = d + static_cast<std::uint32_t>(c[rd[static_cast<std::size_t>(pos)]][b]);
                if (nd <= bound) self(self, pos + 1, nd, v * 24 + static_cast<std::uint64_t>(b));
            }
        };
        dfs(dfs, 0, 0, 0);
        if (found.size() >= m) {
            std::sort(found.begin(), found.end());
            found.resize(m);
            return found;
        }
    }
}

struct PairInfo {
    std::uint32_t count = 0;
    std::vector<std::tuple<std::uint64_t, std::uint32_t, std::uint32_t>> seeds;  // (kmer, pos_i, pos_j), two smallest
};

/// Exact-match relation for i < j.
inline std::map<std::pair<std::size_t, std::size_t>, PairInfo> shared_kmer_pairs(const std::vector<std::string>& seqs,
                                                                                 int k) {
    std::vector<std::map<std::uint64_t, std::uint32_t>> km;
    for (const auto& s : seqs) km.push_back(kmer_first_pos(s, k));
    std::map<std::pair<std::size_t, std::size_t>, PairInfo> out;
    for (std::size_t i = 0; i < seqs.size(); ++i)
        for (std::size_t j = i + 1; j < seqs.size(); ++j) {
            PairInfo info;
            for (const auto& [v, p] : km[i]) {
                auto it = km[j].find(v);
                if (it == km[j].end()) continue;
                ++info.count;
                if (info.seeds.size() < 2) info.seeds.emplace_back(v, p, it->second);
            }
            if (info.count > 0) out[{i, j}] = info;
        }
    return out;
}

/// Substitute relation for i < j: a k-mer of i, or one of its m nearest
/// substitutes, occurs in j. The position on i is that of the closest
/// original k-mer (smaller id on ties).
inline std::map<std::pair<std::size_t, std::size_t>, PairInfo> substitute_pairs(
    const std::vector<std::string>& seqs, int k, const std::array<std::array<int, 24>, 24>& c, std::size_t m) {
    std::vector<std::map<std::uint64_t, std::uint32_t>> km;
    for (const auto& s : seqs) km.push_back(kmer_first_pos(s, k));
    std::map<std::uint64_t, std::vector<std::pair<std::uint32_t, std::uint64_t>>> nbr;
    for (const auto& kmers : km)
        for (const auto& kv : kmers)
            if (!nbr.count(kv.first)) nbr[kv.first] = bounded_nearest(kv.first, k, c, m);

    std::map<std::pair<std::size_t, std::size_t>, PairInfo> out;
    for (std::size_t i = 0; i < seqs.size(); ++i) {
        // reachable k-mer -> (dist, origin, pos)
        std::map<std::uint64_t, std::tuple<std::uint32_t, std::uint64_t, std::uint32_t>> reach;
        auto offer = [&](std::uint64_t v, std::uint32_t d, std::uint64_t origin, std::uint32_t pos) {
            auto it = reach.find(v);
            if (it == reach.end() || std::tie(d, origin) < std::tie(std::get<0>(it->second), std::get<1>(it->second)))
                reach[v] = {d, origin, pos};
        };
        for (const auto& [u, pos] : km[i]) {
            offer(u, 0, u, pos);
            for (const auto& [d, v] : nbr[u]) offer(v, d, u, pos);
        }
        for (std::size_t j = i + 1; j < seqs.size(); ++j) {
            PairInfo info;
            for (const auto& [v, t] : reach) {
                auto it = km[j].find(v);
                if (it == km[j].end()) continue;
                ++info.count;
                if (info.seeds.size() < 2) info.seeds.emplace_back(v, std::get<2>(t), it->second);
            }
            if (info.count > 0) out[{i, j}] = info;
        }
    }
    return out;
}

/// Local alignment score with affine gaps (gap of length L costs open + ext * L),
/// full three-matrix dynamic program.
inline int gotoh_score(const std::string& a, const std::string& b, const protsim::ScoringMatrix& m, int open, int ext) {
    const long neg = -(1L << 40);
    const std::size_t n = a.size(), w = b.size();
    std::vector<std::vector<long>> H(n + 1, std::vector<long>(w + 1, 0)), E = H, F = H;
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 0; j <= w; ++j) E[i][j] = F[i][j] = neg;
    long best = 0;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= w; ++j) {
            E[i][j] = std::max(E[i - 1][j] - ext, H[i - 1][j] - open - ext);
            F[i][j] = std::max(F[i][j - 1] - ext, H[i][j - 1] - open - ext);
            long diag = H[i - 1][j - 1] + m(sym(a[i - 1]), sym(b[j - 1]));
            H[i][j] = std::max({0L, diag, E[i][j], F[i][j]});
            best = std::max(best, H[i][j]);
        }
    return static_cast<int>(best);
}

/// Connected components by breadth-first search; labels by smallest member order.
inline std::vector<int> bfs_components(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<std::vector<std::size_t>> adj(n);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> label(n, -1);
    int next = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (label[s] >= 0) continue;
        std::vector<std::size_t> queue{s};
        label[s] = next;
        for (std::size_t h = 0; h < queue.size(); ++h)
            for (std::size_t v : adj[queue[h]])
                if (label[v] < 0) {
                    label[v] = next;
                    queue.push_back(v);
                }
        ++next;
    }
    return label;
}

}  // namespace oracle
