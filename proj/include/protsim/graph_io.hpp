#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "protsim/graph.hpp"

namespace protsim {

inline constexpr const char* kGraphHeader = "name_i\tname_j\tscore\tani\tns\tcov_short\tpassed";

/// One line of the edge list: `name_i name_j score ani ns cov_short passed`,
/// tab separated, edges in (i, j) order.
void write_graph(std::ostream& os, const SimilarityGraph& g);
void write_graph(const SimilarityGraph& g, const std::string& path);

struct GraphRow {
    std::string name_i;
    std::string name_j;
    int score = 0;
    double ani = 0;
    double ns = 0;
    double cov_short = 0;
    bool passed = false;
};

std::vector<GraphRow> read_graph(std::istream& is);
std::vector<GraphRow> read_graph(const std::string& path);

/// Two-column TSV `sequence_name<TAB>family_id`; blank and '#' lines skipped.
std::unordered_map<std::string, std::string> read_labels(std::istream& is);
std::unordered_map<std::string, std::string> read_labels(const std::string& path);

}  // namespace protsim
