#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "CLI11.hpp"
#include "imkit/branchwidth.hpp"
#include "imkit/decomposer.hpp"
#include "imkit/enumeration.hpp"
#include "imkit/io.hpp"
#include "imkit/relations.hpp"

namespace {

struct cli_exit {
    int code;
};

imkit::MultiGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open '" << path << "'\n";
        throw cli_exit{2};
    }
    try {
        return imkit::read_multigraph(in);
    } catch (const imkit::parse_error& e) {
        std::cerr << "error: " << path << ": " << e.what() << "\n";
        throw cli_exit{2};
    }
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open '" << path << "'\n";
        throw cli_exit{2};
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) {
        std::cerr << "error: cannot write '" << path << "'\n";
        throw cli_exit{2};
    }
    out << text;
}

int cmd_check(const std::string& graph_path, const std::string& pattern_arg, bool strong, unsigned seed,
              bool override_guard) {
    imkit::MultiGraph g = load_graph(graph_path);
    imkit::MultiGraph h;
    if (pattern_arg == "k5") {
        h = imkit::complete_graph(5);
    } else if (pattern_arg == "k33") {
        h = imkit::complete_bipartite(3, 3);
    } else if (pattern_arg.rfind("file:", 0) == 0) {
        h = load_graph(pattern_arg.substr(5));
    } else {
        std::cerr << "error: pattern must be k5, k33 or file:<path>\n";
        return 2;
    }
    if (!override_guard && (h.num_vertices() > 8 || g.num_vertices() > 50 || g.num_edges() > 100)) {
        std::cerr << "error: instance exceeds the search guard (pattern <= 8 vertices, host <= 50 "
                     "vertices and <= 100 edges); pass --guard-override to try anyway\n";
        return 2;
    }
    auto model = strong ? imkit::contains_strong_immersion(g, h, seed) : imkit::contains_immersion(g, h, seed);
    if (!model) {
        std::cerr << "not immersed\n";
        return 1;
    }
    imkit::write_immersion_witness(std::cout, h, strong ? "strong-immersion" : "immersion", *model);
    return 0;
}

int cmd_decompose(const std::string& graph_path, const std::string& out_path, bool verify_after,
                  bool override_guard) {
    imkit::MultiGraph g = load_graph(graph_path);
    if (!override_guard && g.num_edges() > 120) {
        std::cerr << "error: graph exceeds the decomposition guard (<= 120 edges); pass "
                     "--guard-override to try anyway\n";
        return 2;
    }
    imkit::Decomposition d;
    try {
        d = imkit::decompose(g);
    } catch (const imkit::graph_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::string text = imkit::write_certificate(d);
    imkit::DecompositionStats stats = imkit::decomposition_stats(d);
    std::ostream& info = out_path.empty() ? std::cerr : std::cout;
    if (out_path.empty())
        std::cout << text;
    else
        spill(out_path, text);
    info << "nodes " << d.nodes.size() << " leaves " << stats.leaves << " planar-subcubic "
         << stats.planar_subcubic << " small-branchwidth " << stats.small_branchwidth << " uncertified "
         << stats.uncertified << "\n";
    if (verify_after) {
        imkit::Decomposition back = imkit::read_certificate(text, g);
        imkit::VerifyReport rep = imkit::verify_certificate(back, g);
        for (const std::string& p : rep.problems) std::cerr << "verify: " << p << "\n";
        if (!rep.ok) return 1;
        info << "verified\n";
    }
    return stats.uncertified > 0 ? 3 : 0;
}

int cmd_verify(const std::string& graph_path, const std::string& cert_path) {
    imkit::MultiGraph g = load_graph(graph_path);
    std::string text = slurp(cert_path);
    imkit::Decomposition d;
    try {
        d = imkit::read_certificate(text, g);
    } catch (const imkit::parse_error& e) {
        std::cerr << "error: " << cert_path << ": " << e.what() << "\n";
        return 2;
    } catch (const imkit::graph_error& e) {
        std::cout << "certificate invalid\n";
        std::cerr << "verify: recorded split cannot be replayed: " << e.what() << "\n";
        return 1;
    }
    imkit::VerifyReport rep = imkit::verify_certificate(d, g);
    for (const std::string& p : rep.problems) std::cerr << "verify: " << p << "\n";
    if (!rep.ok) {
        std::cout << "certificate invalid\n";
        return 1;
    }
    std::cout << "certificate ok: leaves " << rep.stats.leaves << " planar-subcubic "
              << rep.stats.planar_subcubic << " small-branchwidth " << rep.stats.small_branchwidth
              << " uncertified " << rep.stats.uncertified << "\n";
    return rep.stats.uncertified > 0 ? 3 : 0;
}

int cmd_branchwidth(const std::string& graph_path, int decide_k, bool upper_only,
                    const std::string& out_path, bool override_guard) {
    imkit::MultiGraph g = load_graph(graph_path);
    if (upper_only) {
        imkit::BranchDecomposition bd = imkit::branchwidth_upper(g);
        std::cout << "upper-bound " << imkit::width_of(g, bd) << "\n";
        if (!out_path.empty()) spill(out_path, imkit::write_branch_decomposition(bd));
        return 0;
    }
    if (g.num_edges() > 9 && !override_guard) {
        std::cerr << "error: exact search is guarded at <= 9 edges; pass --guard-override or use "
                     "--upper\n";
        return 2;
    }
    if (decide_k >= 0) {
        auto bd = imkit::decide_branchwidth(g, decide_k, true);
        std::cout << "branchwidth <= " << decide_k << ": " << (bd ? "yes" : "no") << "\n";
        if (bd && !out_path.empty()) spill(out_path, imkit::write_branch_decomposition(*bd));
        return bd ? 0 : 1;
    }
    auto [w, bd] = imkit::branchwidth_exact(g, true);
    std::cout << "branchwidth " << w << "\n";
    if (!out_path.empty()) spill(out_path, imkit::write_branch_decomposition(bd));
    return 0;
}

struct SearchMember {
    imkit::MultiGraph graph;  // canonical form
    std::string key;
    int bw = 0;
    bool immersion_free = false;
    std::string witness_path = "-";
};

int cmd_search(int max_n, int bw_at_least, bool non_subcubic, bool immersion_free_only,
               const std::string& out_path, const std::string& witness_dir, unsigned seed,
               bool override_guard) {
    if (max_n < 1 || (max_n > 8 && !override_guard)) {
        std::cerr << "error: --max-n is guarded at 8; pass --guard-override to go to 9\n";
        return 2;
    }
    std::vector<imkit::MultiGraph> atlas;
    try {
        atlas = imkit::connected_graph_atlas(max_n);
    } catch (const imkit::graph_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::vector<SearchMember> members;
    const imkit::MultiGraph k4 = imkit::complete_graph(4);
    int witness_counter = 0;
    for (const imkit::MultiGraph& g : atlas) {
        if (non_subcubic && g.is_subcubic()) continue;
        imkit::ImmersionFreeReport rep = imkit::is_kuratowski_immersion_free(g, seed);
        if (immersion_free_only && !rep.free) continue;
        int w = -1;
        if (bw_at_least > 0) {
            if (bw_at_least == 3) {
                // branchwidth <= 2 is exactly the absence of a K4 minor
                if (!imkit::contains_minor(g, k4)) continue;
            } else if (imkit::decide_branchwidth(g, bw_at_least - 1, true)) {
                continue;
            }
            for (int k = bw_at_least; w < 0; ++k)
                if (imkit::decide_branchwidth(g, k, true)) w = k;
        } else {
            w = imkit::branchwidth_exact(g, true).first;
        }
        SearchMember m;
        m.graph = imkit::canonical_form(g);
        m.key = imkit::canonical_key(g);
        m.bw = w;
        m.immersion_free = rep.free;
        if (!rep.free && !witness_dir.empty()) {
            imkit::MultiGraph pat =
                rep.pattern == "K5" ? imkit::complete_graph(5) : imkit::complete_bipartite(3, 3);
            m.witness_path = witness_dir + "/witness_" + std::to_string(witness_counter++) + ".txt";
            spill(m.witness_path, imkit::write_immersion_witness(pat, "immersion", rep.model));
        }
        members.push_back(std::move(m));
    }
    std::sort(members.begin(), members.end(), [](const SearchMember& a, const SearchMember& b) {
        return std::make_tuple(a.graph.num_vertices(), a.graph.num_edges(), a.key) <
               std::make_tuple(b.graph.num_vertices(), b.graph.num_edges(), b.key);
    });
    std::ostringstream report;
    report << "immersion-kit-search v1\n";
    report << "max-n " << max_n << "\n";
    report << "bw-at-least " << bw_at_least << "\n";
    report << "non-subcubic " << (non_subcubic ? "yes" : "no") << "\n";
    report << "immersion-free-only " << (immersion_free_only ? "yes" : "no") << "\n";
    report << "members " << members.size() << "\n";
    for (const SearchMember& m : members) {
        report << "member n=" << m.graph.num_vertices() << " m=" << m.graph.num_edges() << " bw=" << m.bw
               << " maxdeg=" << m.graph.max_degree() << " immersion-free=" << (m.immersion_free ? "yes" : "no")
               << " witness=" << m.witness_path << "\n";
        std::vector<std::pair<imkit::VertexId, imkit::VertexId>> pairs;
        for (const auto& [e, rec] : m.graph.edges()) pairs.push_back({rec.u, rec.v});
        std::sort(pairs.begin(), pairs.end());
        report << "edges";
        for (const auto& [u, v] : pairs) report << " " << u << "-" << v;
        report << "\n";
    }
    if (out_path.empty())
        std::cout << report.str();
    else {
        spill(out_path, report.str());
        std::cout << "members " << members.size() << "\n";
    }
    return members.empty() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multigraph immersion toolkit"};
    app.require_subcommand(1);
    unsigned seed = 0;
    bool override_guard = false;

    auto* check = app.add_subcommand("check", "look for a pattern immersion in a host graph");
    std::string check_graph, check_pattern;
    bool check_strong = false;
    check->add_option("graph", check_graph, "host graph file")->required();
    check->add_option("pattern", check_pattern, "k5, k33 or file:<path>")->required();
    check->add_flag("--strong", check_strong, "require a strong immersion");
    check->add_option("--seed", seed, "seed for the randomized search order");
    check->add_flag("--guard-override", override_guard, "run past the built-in scale guards");

    auto* dec = app.add_subcommand("decompose", "split along small internal cuts and certify the leaves");
    std::string dec_graph, dec_out;
    bool dec_verify = false;
    dec->add_option("graph", dec_graph, "graph file")->required();
    dec->add_option("--out", dec_out, "certificate output path (default: standard output)");
    dec->add_flag("--verify", dec_verify, "re-read and verify the certificate before exiting");
    dec->add_flag("--guard-override", override_guard, "run past the built-in scale guards");

    auto* ver = app.add_subcommand("verify", "verify a decomposition certificate against a graph");
    std::string ver_graph, ver_cert;
    ver->add_option("graph", ver_graph, "graph file")->required();
    ver->add_option("certificate", ver_cert, "certificate file")->required();

    auto* bw = app.add_subcommand("branchwidth", "compute or bound the branchwidth of a graph");
    std::string bw_graph, bw_out;
    int bw_decide = -1;
    bool bw_upper = false;
    bw->add_option("graph", bw_graph, "graph file")->required();
    bw->add_option("--decide", bw_decide, "test branchwidth <= K instead of computing it");
    bw->add_flag("--upper", bw_upper, "print the greedy upper bound only");
    bw->add_option("--out", bw_out, "write the branch decomposition here");
    bw->add_flag("--guard-override", override_guard, "run past the built-in scale guards");

    auto* search = app.add_subcommand("search", "enumerate small graphs passing structural filters");
    int search_max_n = 8, search_bw = 3;
    bool search_nsc = false, search_iffree = false;
    std::string search_out, search_wdir;
    search->add_option("--max-n", search_max_n, "largest vertex count to enumerate");
    search->add_option("--bw-at-least", search_bw, "keep graphs with exact branchwidth at least K");
    search->add_flag("--non-subcubic", search_nsc, "keep graphs with a vertex of degree at least 4");
    search->add_flag("--immersion-free-only", search_iffree,
                     "keep only graphs with no K5 and no K3,3 immersion");
    search->add_option("--out", search_out, "report output path (default: standard output)");
    search->add_option("--witness-dir", search_wdir,
                       "directory for immersion witnesses of non-free members");
    search->add_option("--seed", seed, "seed for the randomized search order");
    search->add_flag("--guard-override", override_guard, "run past the built-in scale guards");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*check) return cmd_check(check_graph, check_pattern, check_strong, seed, override_guard);
        if (*dec) return cmd_decompose(dec_graph, dec_out, dec_verify, override_guard);
        if (*ver) return cmd_verify(ver_graph, ver_cert);
        if (*bw) return cmd_branchwidth(bw_graph, bw_decide, bw_upper, bw_out, override_guard);
        if (*search)
            return cmd_search(search_max_n, search_bw, search_nsc, search_iffree, search_out, search_wdir,
                              seed, override_guard);
    } catch (const cli_exit& e) {
        return e.code;
    } catch (const imkit::graph_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
