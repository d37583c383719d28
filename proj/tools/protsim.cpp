// protsim: build, cluster and evaluate protein similarity graphs.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <CLI11.hpp>

#include "protsim/graph.hpp"
#include "protsim/graph_io.hpp"
#include "protsim/grid.hpp"
#include "protsim/pipeline.hpp"
#include "protsim/seqstore.hpp"

using namespace protsim;

namespace {

struct RunOptions {
    std::string input;
    std::string out = "-";
    std::string report;
    std::string report_json;
    std::string ledger;
    std::string matrix = "blosum62";
    std::string align = "xd";
    std::string weight = "ani";
    std::optional<std::uint32_t> ckthr;
    int grid = 0;
    std::uint64_t overlap = kDefaultOverlapBytes;
    PipelineConfig cfg;
};

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
    if (!out.flush()) throw std::runtime_error("write to '" + path + "' failed");
}

int run(RunOptions& o) {
    PipelineConfig& cfg = o.cfg;
    cfg.align = o.align == "sw" ? AlignMode::SmithWaterman : AlignMode::XDrop;
    cfg.filter.mode = o.weight == "ns" ? WeightMode::Ns : WeightMode::Ani;
    cfg.ck_threshold = o.ckthr.value_or(cfg.subs == 0 ? 1u : 3u);
    cfg.scoring = ScoringMatrix::load(o.matrix);
    cfg.validate();

    const std::string text = read_file(o.input);
    std::vector<std::string> names;
    std::vector<SimilarityEdge> edges;
    RunReport report;
    if (o.grid > 0) {
        GridResult g = run_grid(text, o.grid, cfg, o.overlap);
        names = std::move(g.names);
        edges = std::move(g.edges);
        report = std::move(g.report);
        if (!o.ledger.empty()) {
            std::ostringstream csv;
            g.ledger.write_csv(csv);
            write_text(o.ledger, csv.str());
        }
    } else {
        SequenceStore store = parse_fasta(text, cfg.threads, o.overlap);
        for (std::size_t i = 0; i < store.size(); ++i) names.emplace_back(store.name(i));
        PipelineResult r = run_pipeline(store, cfg);
        edges = std::move(r.edges);
        report = std::move(r.report);
    }

    const std::size_t n = names.size();
    SimilarityGraph graph = SimilarityGraph::assemble(n, std::move(names), std::move(edges), cfg.filter.mode);
    std::ostringstream os;
    write_graph(os, graph);
    write_text(o.out, os.str());

    if (!o.report.empty()) write_text(o.report, report.to_text());
    else std::cerr << report.to_text();
    if (!o.report_json.empty()) write_text(o.report_json, report.to_json() + "\n");
    return 0;
}

// Vertex order: FASTA order when given, else first appearance in the graph.
struct VertexIndex {
    std::vector<std::string> names;
    std::unordered_map<std::string, std::uint64_t> ids;

    std::uint64_t add(const std::string& name) {
        auto [it, fresh] = ids.emplace(name, names.size());
        if (fresh) names.push_back(name);
        return it->second;
    }
};

std::vector<SimilarityEdge> graph_edges(const std::vector<GraphRow>& rows, VertexIndex& vx, bool strict) {
    std::vector<SimilarityEdge> edges;
    for (const auto& r : rows) {
        if (strict && (!vx.ids.count(r.name_i) || !vx.ids.count(r.name_j)))
            throw std::runtime_error("graph vertex '" + (vx.ids.count(r.name_i) ? r.name_j : r.name_i) +
                                     "' is not in the vertex set");
        SimilarityEdge e;
        e.i = vx.add(r.name_i);
        e.j = vx.add(r.name_j);
        edges.push_back(e);
    }
    return edges;
}

int eval(const std::string& graph_path, const std::string& labels_path) {
    auto labels = read_labels(labels_path);
    std::vector<std::string> names;
    for (const auto& kv : labels) names.push_back(kv.first);
    std::sort(names.begin(), names.end());

    VertexIndex vx;
    for (const auto& nm : names) vx.add(nm);
    auto edges = graph_edges(read_graph(graph_path), vx, true);
    auto clusters = connected_components(vx.names.size(), edges);

    std::map<std::string, std::int64_t> family_ids;
    std::vector<std::int64_t> families;
    for (const auto& nm : vx.names) {
        auto [it, fresh] = family_ids.emplace(labels.at(nm), static_cast<std::int64_t>(family_ids.size()));
        families.push_back(it->second);
    }
    PrecisionRecall pr = weighted_precision_recall(clusters, families);
    std::size_t nclusters = clusters.empty() ? 0 : *std::max_element(clusters.begin(), clusters.end()) + 1;
    std::printf("vertices   %zu\nclusters   %zu\nfamilies   %zu\nprecision  %.4f\nrecall     %.4f\n",
                vx.names.size(), nclusters, family_ids.size(), pr.precision, pr.recall);
    return 0;
}

int cc(const std::string& graph_path, const std::string& input, const std::string& out) {
    VertexIndex vx;
    if (!input.empty()) {
        SequenceStore store = load_fasta(input);
        for (std::size_t i = 0; i < store.size(); ++i) vx.add(std::string(store.name(i)));
    }
    auto edges = graph_edges(read_graph(graph_path), vx, !input.empty());
    auto clusters = connected_components(vx.names.size(), edges);
    std::ostringstream os;
    for (std::size_t v = 0; v < vx.names.size(); ++v) os << vx.names[v] << '\t' << clusters[v] << '\n';
    write_text(out, os.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Protein similarity graph construction"};
    app.require_subcommand(1);

    RunOptions ro;
    auto* run_cmd = app.add_subcommand("run", "Build a similarity graph from a FASTA file");
    run_cmd->add_option("--input", ro.input, "Input FASTA")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--out", ro.out, "Edge list path, '-' for stdout")->capture_default_str();
    run_cmd->add_option("-k", ro.cfg.k, "K-mer length")->capture_default_str()->check(CLI::Range(1, kMaxK));
    run_cmd->add_option("--subs", ro.cfg.subs, "Substitute k-mers per k-mer (0 = exact)")->capture_default_str();
    run_cmd->add_option("--ckthr", ro.ckthr, "Common k-mer threshold (default 1 exact, 3 substitute)");
    run_cmd->add_option("--align", ro.align, "Aligner")->check(CLI::IsMember({"sw", "xd"}))->capture_default_str();
    run_cmd->add_option("--xdrop", ro.cfg.xdrop, "X-drop value")->capture_default_str();
    run_cmd->add_option("--gap-open", ro.cfg.gaps.open, "Gap open cost")->capture_default_str();
    run_cmd->add_option("--gap-ext", ro.cfg.gaps.extend, "Gap extension cost")->capture_default_str();
    run_cmd->add_option("--matrix", ro.matrix, "Scoring matrix file or 'blosum62'")->capture_default_str();
    run_cmd->add_option("--weight", ro.weight, "Edge weight")->check(CLI::IsMember({"ani", "ns"}))->capture_default_str();
    run_cmd->add_option("--ani-min", ro.cfg.filter.ani_min, "Minimum ANI percent")->capture_default_str();
    run_cmd->add_option("--cov-min", ro.cfg.filter.cov_min, "Minimum shorter-sequence coverage percent")
        ->capture_default_str();
    run_cmd->add_option("--grid", ro.grid, "Run on a q x q worker grid (0 = single process)")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    run_cmd->add_option("--threads", ro.cfg.threads, "Threads per worker")->capture_default_str()->check(CLI::PositiveNumber);
    run_cmd->add_flag("--skip-ambiguous", ro.cfg.skip_ambiguous, "Drop k-mers containing B, Z, X or *");
    run_cmd->add_option("--report", ro.report, "Text report path (default stderr)");
    run_cmd->add_option("--report-json", ro.report_json, "JSON report path");
    run_cmd->add_option("--ledger", ro.ledger, "Grid message ledger CSV path");
    run_cmd->add_option("--overlap", ro.overlap, "FASTA chunk overlap in bytes")->capture_default_str();

    std::string graph_path, labels_path, cc_input, cc_out = "-";
    auto* eval_cmd = app.add_subcommand("eval", "Cluster precision and recall against family labels");
    eval_cmd->add_option("--graph", graph_path, "Edge list")->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("--labels", labels_path, "name<TAB>family file")->required()->check(CLI::ExistingFile);

    auto* cc_cmd = app.add_subcommand("cc", "Connected components of an edge list");
    cc_cmd->add_option("--graph", graph_path, "Edge list")->required()->check(CLI::ExistingFile);
    cc_cmd->add_option("--input", cc_input, "FASTA listing every vertex")->check(CLI::ExistingFile);
    cc_cmd->add_option("--out", cc_out, "Output path, '-' for stdout")->capture_default_str();

    CLI11_PARSE(app, argc, argv);
    try {
        if (*run_cmd) return run(ro);
        if (*eval_cmd) return eval(graph_path, labels_path);
        if (*cc_cmd) return cc(graph_path, cc_input, cc_out);
    } catch (const std::exception& e) {
        std::cerr << "protsim: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
