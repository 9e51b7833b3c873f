#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "imkit/decomposer.hpp"
#include "imkit/relations.hpp"
#include "test_util.hpp"

using imkit::Decomposition;
using imkit::LeafCertificateKind;
using imkit::MultiGraph;
using imkit::VertexId;

namespace {

MultiGraph two_triangles_bridge() {
    MultiGraph g = MultiGraph::with_vertices(6);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(1, 2);
    g.add_edge(3, 4);
    g.add_edge(3, 5);
    g.add_edge(4, 5);
    g.add_edge(0, 3);
    return g;
}

}  // namespace

TEST_CASE("a bridge splits first, then the attachment corners") {
    MultiGraph g = two_triangles_bridge();
    Decomposition d = imkit::decompose(g);
    REQUIRE(d.nodes.size() == 7);
    REQUIRE_FALSE(d.nodes[0].is_leaf());
    REQUIRE(d.nodes[0].split->cut.edges == std::vector<imkit::EdgeId>{6});

    imkit::DecompositionStats stats = imkit::decomposition_stats(d);
    REQUIRE(stats.leaves == 4);
    REQUIRE(stats.planar_subcubic == 4);
    REQUIRE(stats.uncertified == 0);

    REQUIRE(imkit::recompose(d) == g);
    imkit::VerifyReport report = imkit::verify_certificate(d, g);
    REQUIRE(report.ok);
    REQUIRE(report.problems.empty());
}

TEST_CASE("graphs without small internal cuts stay in one piece") {
    MultiGraph cube = imkit::cylinder(4, 2);
    Decomposition d = imkit::decompose(cube);
    REQUIRE(d.nodes.size() == 1);
    REQUIRE(d.nodes[0].is_leaf());
    REQUIRE(d.nodes[0].cert->kind == LeafCertificateKind::planar_subcubic);
    REQUIRE(imkit::recompose(d) == cube);
    REQUIRE(imkit::verify_certificate(d, cube).ok);
}

TEST_CASE("dense leaves fall back to width certificates") {
    MultiGraph k5 = imkit::complete_graph(5);
    Decomposition d = imkit::decompose(k5);
    REQUIRE(d.nodes.size() == 1);
    REQUIRE(d.nodes[0].cert->kind == LeafCertificateKind::small_branchwidth);
    REQUIRE(d.nodes[0].cert->width <= 10);
    REQUIRE(imkit::is_valid_branch_decomposition(k5, d.nodes[0].cert->bd));
    REQUIRE(imkit::verify_certificate(d, k5).ok);

    SECTION("ten edges is past the exact range, so the bound is greedy") {
        REQUIRE_FALSE(d.nodes[0].cert->exact_width);
        REQUIRE(d.nodes[0].cert->width >= 4);
    }
    SECTION("the width is exact when the leaf is small enough") {
        MultiGraph w4 = imkit::cycle_graph(4);
        VertexId hub = w4.add_vertex();
        for (VertexId v = 0; v < 4; ++v) w4.add_edge(v, hub);
        Decomposition wheel = imkit::decompose(w4);
        REQUIRE(wheel.nodes.size() == 1);
        REQUIRE(wheel.nodes[0].cert->kind == LeafCertificateKind::small_branchwidth);
        REQUIRE(wheel.nodes[0].cert->exact_width);
        REQUIRE(wheel.nodes[0].cert->width == 3);
        REQUIRE(imkit::verify_certificate(wheel, w4).ok);
    }
    SECTION("wide leaves beyond the exact range go uncertified") {
        MultiGraph k13 = imkit::complete_graph(13);
        Decomposition wide = imkit::decompose(k13);
        REQUIRE(wide.nodes.size() == 1);
        REQUIRE(wide.nodes[0].cert->kind == LeafCertificateKind::uncertified);
        imkit::VerifyReport report = imkit::verify_certificate(wide, k13);
        REQUIRE(report.ok);  // honest about being uncertified
        REQUIRE(imkit::decomposition_stats(wide).uncertified == 1);
    }
}

TEST_CASE("decompose rejects disconnected input") {
    MultiGraph g = MultiGraph::with_vertices(4);
    g.add_edge(0, 1);
    g.add_edge(2, 3);
    REQUIRE_THROWS_AS(imkit::decompose(g), imkit::graph_error);
}

TEST_CASE("random splits recompose exactly") {
    std::mt19937 rng(211);
    for (int round = 0; round < 120; ++round) {
        MultiGraph g = testutil::random_connected_multigraph(rng, 2, 10, 22);
        Decomposition d = imkit::decompose(g);
        REQUIRE(imkit::recompose(d) == g);
        imkit::VerifyReport report = imkit::verify_certificate(d, g);
        REQUIRE(report.ok);
        for (const auto& node : d.nodes) {
            if (!node.is_leaf()) continue;
            REQUIRE(node.cert.has_value());
            REQUIRE_FALSE(imkit::find_internal_cut(node.graph, 3).has_value());
        }
    }
}

TEST_CASE("certificate text round trip") {
    MultiGraph g = two_triangles_bridge();
    Decomposition d = imkit::decompose(g);
    std::string text = imkit::write_certificate(d);
    Decomposition back = imkit::read_certificate(text, g);
    REQUIRE(back.nodes.size() == d.nodes.size());
    imkit::VerifyReport report = imkit::verify_certificate(back, g);
    REQUIRE(report.ok);
    REQUIRE(imkit::recompose(back) == g);

    SECTION("tampered pairings are caught") {
        std::string bad = text;
        auto pos = bad.find("1 <-> 1");
        REQUIRE(pos != std::string::npos);
        bad.replace(pos, 7, "1 <-> 2");
        bool rejected = false;
        try {
            Decomposition t = imkit::read_certificate(bad, g);
            rejected = !imkit::verify_certificate(t, g).ok;
        } catch (const imkit::graph_error&) {
            rejected = true;
        }
        REQUIRE(rejected);
    }
    SECTION("tampered leaf graphs are caught") {
        std::string bad = text;
        auto pos = bad.find("cert planar-subcubic");
        REQUIRE(pos != std::string::npos);
        bad.replace(pos, 20, "cert uncertified    ");
        bool rejected = false;
        try {
            Decomposition t = imkit::read_certificate(bad, g);
            imkit::VerifyReport rep = imkit::verify_certificate(t, g);
            rejected = !rep.ok;
        } catch (const imkit::graph_error&) {
            rejected = true;
        }
        REQUIRE(rejected);
    }
    SECTION("malformed certificates are rejected") {
        CHECK_THROWS_AS(imkit::read_certificate("", g), imkit::graph_error);
        CHECK_THROWS_AS(imkit::read_certificate("immersion-kit-cert v2\n", g), imkit::graph_error);
        CHECK_THROWS_AS(imkit::read_certificate("immersion-kit-cert v1\nnodes 0\n", g),
                        imkit::graph_error);
        std::string swapped = text;
        auto cpos = swapped.find("children 2 3");
        REQUIRE(cpos != std::string::npos);
        swapped.replace(cpos, 12, "children 3 2");
        bool rejected = false;
        try {
            Decomposition t = imkit::read_certificate(swapped, g);
            rejected = !imkit::verify_certificate(t, g).ok;
        } catch (const imkit::graph_error&) {
            rejected = true;
        }
        CHECK(rejected);
    }
}

TEST_CASE("verification is against the named graph, not just any graph") {
    MultiGraph g = two_triangles_bridge();
    Decomposition d = imkit::decompose(g);
    MultiGraph other = g;
    other.add_edge(1, 4);
    REQUIRE_FALSE(imkit::verify_certificate(d, other).ok);
}

TEST_CASE("split components of immersion-free graphs stay immersion-free") {
    std::mt19937 rng(97);
    int splits = 0;
    for (int round = 0; round < 25; ++round) {
        MultiGraph g = testutil::random_immersion_free_multigraph(rng, 16);
        Decomposition d = imkit::decompose(g);
        for (const auto& node : d.nodes) {
            if (node.is_leaf()) continue;
            ++splits;
            REQUIRE(imkit::is_kuratowski_immersion_free(node.split->component_a).free);
            REQUIRE(imkit::is_kuratowski_immersion_free(node.split->component_b).free);
        }
    }
    REQUIRE(splits > 10);
}
