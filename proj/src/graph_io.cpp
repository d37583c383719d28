#include "protsim/graph_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace protsim {

void write_graph(std::ostream& os, const SimilarityGraph& g) {
    os << kGraphHeader << '\n';
    char buf[96];
    for (const auto& e : g.edges) {
        std::snprintf(buf, sizeof buf, "\t%d\t%.4f\t%.4f\t%.4f\t%d\n", e.score, e.ani, e.ns, e.cov_short,
                      e.passed ? 1 : 0);
        os << g.vertex_name(e.i) << '\t' << g.vertex_name(e.j) << buf;
    }
}

void write_graph(const SimilarityGraph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    write_graph(out, g);
    out.flush();
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::vector<GraphRow> read_graph(std::istream& is) {
    std::vector<GraphRow> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line == kGraphHeader) continue;
        std::istringstream ls(line);
        GraphRow r;
        int passed = 0;
        if (!(ls >> r.name_i >> r.name_j >> r.score >> r.ani >> r.ns >> r.cov_short >> passed))
            throw std::runtime_error("graph line " + std::to_string(lineno) + " is malformed");
        r.passed = passed != 0;
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<GraphRow> read_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return read_graph(in);
}

std::unordered_map<std::string, std::string> read_labels(std::istream& is) {
    std::unordered_map<std::string, std::string> labels;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 == line.size())
            throw std::runtime_error("labels line " + std::to_string(lineno) + " needs two tab-separated columns");
        labels[line.substr(0, tab)] = line.substr(tab + 1);
    }
    return labels;
}

std::unordered_map<std::string, std::string> read_labels(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return read_labels(in);
}

}  // namespace protsim
