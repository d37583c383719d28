#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "protsim/align.hpp"

namespace protsim {

/// Protein similarity graph over sequence ids. Edges are canonical (i < j),
/// unique, sorted, and free of self-loops.
struct SimilarityGraph {
    std::size_t n = 0;
    std::vector<std::string> names;  // empty, or one per vertex
    WeightMode weight = WeightMode::Ani;
    std::vector<SimilarityEdge> edges;

    /// Keeps passed edges in ANI mode and every aligned edge in NS mode.
    static SimilarityGraph assemble(std::size_t n, std::vector<std::string> names, std::vector<SimilarityEdge> aligned,
                                    WeightMode weight);

    std::string vertex_name(std::uint64_t v) const;
};

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n);
    std::size_t find(std::size_t x);
    bool unite(std::size_t a, std::size_t b);
    std::size_t components() const noexcept { return components_; }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::uint32_t> rank_;
    std::size_t components_;
};

/// Cluster id per vertex; ids are dense and numbered by each component's smallest vertex.
std::vector<std::uint32_t> connected_components(std::size_t n, std::span<const SimilarityEdge> edges);
std::vector<std::uint32_t> connected_components(const SimilarityGraph& g);

struct PrecisionRecall {
    double precision = 0;
    double recall = 0;
};

/// Size-weighted clustering precision and recall against family labels:
/// precision = sum over clusters of the largest family overlap / N,
/// recall = sum over families of the largest cluster overlap / N.
/// A negative family marks an unlabeled vertex and is an error.
PrecisionRecall weighted_precision_recall(std::span<const std::uint32_t> clusters,
                                          std::span<const std::int64_t> families);

}  // namespace protsim
