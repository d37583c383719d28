#include "protsim/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace protsim {

SimilarityGraph SimilarityGraph::assemble(std::size_t n, std::vector<std::string> names,
                                          std::vector<SimilarityEdge> aligned, WeightMode weight) {
    if (!names.empty() && names.size() != n) throw std::invalid_argument("graph: one name per vertex expected");
    SimilarityGraph g;
    g.n = n;
    g.names = std::move(names);
    g.weight = weight;
    for (auto& e : aligned) {
        if (e.i == e.j) continue;
        if (e.i >= n || e.j >= n) throw std::out_of_range("graph: edge endpoint out of range");
        if (weight == WeightMode::Ani && !e.passed) continue;
        if (e.i > e.j) std::swap(e.i, e.j);
        g.edges.push_back(e);
    }
    std::stable_sort(g.edges.begin(), g.edges.end(), [](const SimilarityEdge& a, const SimilarityEdge& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end(),
                              [](const SimilarityEdge& a, const SimilarityEdge& b) { return a.i == b.i && a.j == b.j; }),
                  g.edges.end());
    return g;
}

std::string SimilarityGraph::vertex_name(std::uint64_t v) const {
    return names.empty() ? std::to_string(v) : names.at(v);
}

DisjointSets::DisjointSets(std::size_t n) : parent_(n), rank_(n, 0), components_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

bool DisjointSets::unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    --components_;
    return true;
}

std::vector<std::uint32_t> connected_components(std::size_t n, std::span<const SimilarityEdge> edges) {
    DisjointSets ds(n);
    for (const auto& e : edges) ds.unite(e.i, e.j);
    std::vector<std::uint32_t> label(n);
    std::vector<std::uint32_t> root_label(n, UINT32_MAX);
    std::uint32_t next = 0;
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t r = ds.find(v);
        if (root_label[r] == UINT32_MAX) root_label[r] = next++;
        label[v] = root_label[r];
    }
    return label;
}

std::vector<std::uint32_t> connected_components(const SimilarityGraph& g) {
    return connected_components(g.n, g.edges);
}

PrecisionRecall weighted_precision_recall(std::span<const std::uint32_t> clusters,
                                          std::span<const std::int64_t> families) {
    if (clusters.size() != families.size()) throw std::invalid_argument("clusters and labels differ in size");
    if (clusters.empty()) throw std::invalid_argument("no vertices to evaluate");
    for (std::size_t v = 0; v < families.size(); ++v)
        if (families[v] < 0) throw std::invalid_argument("vertex " + std::to_string(v) + " has no family label");

    std::map<std::pair<std::uint32_t, std::int64_t>, std::size_t> overlap;
    for (std::size_t v = 0; v < clusters.size(); ++v) ++overlap[{clusters[v], families[v]}];

    std::map<std::uint32_t, std::size_t> best_in_cluster;
    std::map<std::int64_t, std::size_t> best_in_family;
    for (const auto& [key, count] : overlap) {
        auto& bc = best_in_cluster[key.first];
        bc = std::max(bc, count);
        auto& bf = best_in_family[key.second];
        bf = std::max(bf, count);
    }
    std::size_t p = 0, r = 0;
    for (const auto& kv : best_in_cluster) p += kv.second;
    for (const auto& kv : best_in_family) r += kv.second;
    const auto n = static_cast<double>(clusters.size());
    return {static_cast<double>(p) / n, static_cast<double>(r) / n};
}

}  // namespace protsim
