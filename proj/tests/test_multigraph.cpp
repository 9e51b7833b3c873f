#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "imkit/multigraph.hpp"
#include "test_util.hpp"

using imkit::EdgeId;
using imkit::MultiGraph;
using imkit::Path;
using imkit::VertexId;

TEST_CASE("construction, degrees and multiplicities") {
    MultiGraph g = MultiGraph::with_vertices(3);
    REQUIRE(g.num_vertices() == 3);
    REQUIRE(g.num_edges() == 0);
    EdgeId e0 = g.add_edge(0, 1);
    EdgeId e1 = g.add_edge(0, 1);
    EdgeId e2 = g.add_edge(1, 2);
    REQUIRE(e0 != e1);
    REQUIRE(g.multiplicity(0, 1) == 2);
    REQUIRE(g.multiplicity(1, 0) == 2);
    REQUIRE(g.multiplicity(0, 2) == 0);
    REQUIRE(g.degree(1) == 3);
    REQUIRE(g.neighbors(1) == std::vector<VertexId>{0, 2});
    REQUIRE_FALSE(g.is_simple());
    REQUIRE(g.max_degree() == 3);
    g.remove_edge(e1);
    REQUIRE(g.is_simple());
    REQUIRE(g.multiplicity(0, 1) == 1);
    CHECK(g.has_edge(e2));

    SECTION("loops are rejected") {
        REQUIRE_THROWS_AS(g.add_edge(1, 1), imkit::graph_error);
    }
    SECTION("unknown endpoints are rejected") {
        REQUIRE_THROWS_AS(g.add_edge(0, 7), imkit::graph_error);
    }
}

TEST_CASE("removing a vertex drops its edges, ids never come back") {
    MultiGraph g = MultiGraph::with_vertices(4);
    g.add_edge(0, 1);
    EdgeId bridge = g.add_edge(1, 2);
    g.add_edge(2, 3);
    g.remove_vertex(2);
    REQUIRE(g.num_vertices() == 3);
    REQUIRE(g.num_edges() == 1);
    REQUIRE_FALSE(g.has_edge(bridge));
    EdgeId fresh_e = g.add_edge(0, 3);
    REQUIRE(fresh_e > bridge);
    VertexId fresh_v = g.add_vertex();
    REQUIRE(fresh_v == 4);
}

TEST_CASE("structural equality compares ids, not just shape") {
    MultiGraph a = imkit::cycle_graph(4);
    MultiGraph b = imkit::cycle_graph(4);
    REQUIRE(a == b);
    b.remove_edge(0);
    b.add_edge(0, 1);
    // same shape, but the replacement edge has a new id
    REQUIRE_FALSE(a == b);
}

TEST_CASE("erase by vertices and edges") {
    MultiGraph g = imkit::complete_graph(4);
    MultiGraph h = imkit::erase(g, {3}, {0});
    REQUIRE(g.num_vertices() == 4);  // input untouched
    REQUIRE(h.num_vertices() == 3);
    REQUIRE(h.num_edges() == 2);
    REQUIRE_THROWS_AS(imkit::erase(g, {9}, {}), imkit::graph_error);
    REQUIRE_THROWS_AS(imkit::erase(g, {}, {99}), imkit::graph_error);
    // an edge that disappeared with its endpoint may still be named
    std::vector<EdgeId> at3;
    for (const auto& [e, rec] : g.edges())
        if (rec.u == 3 || rec.v == 3) at3.push_back(e);
    REQUIRE_NOTHROW(imkit::erase(g, {3}, at3));
}

TEST_CASE("contracting an edge") {
    MultiGraph g = imkit::complete_graph(4);
    MultiGraph h = imkit::contract(g, 0);
    REQUIRE(h.num_vertices() == 3);
    REQUIRE(h.num_edges() == 5);
    REQUIRE(h.max_degree() == 4);
    REQUIRE_FALSE(h.is_simple());

    SECTION("every parallel copy of the contracted edge goes away") {
        MultiGraph t = imkit::cycle_graph(3);
        auto [u, v] = t.endpoints(0);
        t.add_edge(std::min(u, v), std::max(u, v));
        MultiGraph c = imkit::contract(t, 0);
        REQUIRE(c.num_vertices() == 2);
        REQUIRE(c.num_edges() == 2);
    }
    SECTION("surviving edges keep their ids") {
        MultiGraph p = imkit::path_graph(3);
        MultiGraph c = imkit::contract(p, 0);
        REQUIRE(c.has_edge(1));
        REQUIRE(c.num_edges() == 1);
    }
}

TEST_CASE("subdividing every edge") {
    MultiGraph g = imkit::complete_graph(4);
    g.add_edge(0, 1);
    MultiGraph s = imkit::subdivide_all(g);
    REQUIRE(s.num_vertices() == 4 + 7);
    REQUIRE(s.num_edges() == 14);
    REQUIRE(s.is_simple());
    REQUIRE(s.max_degree() == 4);
    for (VertexId v : s.vertices())
        if (!g.has_vertex(v)) REQUIRE(s.degree(v) == 2);
}

TEST_CASE("lifting two edges at a shared endpoint") {
    MultiGraph g = imkit::path_graph(3);
    MultiGraph h = imkit::lift(g, 0, 1);
    REQUIRE(h.num_edges() == 1);
    REQUIRE(h.multiplicity(0, 2) == 1);
    REQUIRE(h.degree(1) == 0);
    REQUIRE(h.has_vertex(1));

    SECTION("parallel edges cannot be lifted") {
        MultiGraph t = MultiGraph::with_vertices(2);
        EdgeId a = t.add_edge(0, 1);
        EdgeId b = t.add_edge(0, 1);
        REQUIRE_THROWS_AS(imkit::lift(t, a, b), imkit::graph_error);
    }
    SECTION("disjoint edges cannot be lifted") {
        MultiGraph p = imkit::path_graph(4);
        REQUIRE_THROWS_AS(imkit::lift(p, 0, 2), imkit::graph_error);
    }
}

TEST_CASE("paths over explicit edge ids") {
    MultiGraph g = imkit::cycle_graph(5);
    Path p = imkit::path_from_edges(g, 0, {0, 1, 2});
    REQUIRE(p.vertices == std::vector<VertexId>{0, 1, 2, 3});
    REQUIRE(p.length() == 3);
    REQUIRE(imkit::is_valid_path(g, p));
    REQUIRE(p.slice(1, 3).vertices == std::vector<VertexId>{1, 2, 3});
    REQUIRE(p.reversed().vertices == std::vector<VertexId>{3, 2, 1, 0});
    REQUIRE(p.position_of(2) == 2);

    Path broken = p;
    std::swap(broken.edges[0], broken.edges[2]);
    REQUIRE_FALSE(imkit::is_valid_path(g, broken));

    Path repeat = imkit::path_from_edges(g, 0, {0, 1, 2, 3, 4});
    REQUIRE_FALSE(imkit::is_valid_path(g, repeat));  // revisits vertex 0
    REQUIRE(imkit::is_valid_path(g, repeat, true));
}

TEST_CASE("builders") {
    REQUIRE(imkit::complete_graph(5).num_edges() == 10);
    REQUIRE(imkit::complete_bipartite(3, 3).num_edges() == 9);
    REQUIRE(imkit::complete_bipartite(1, 3).max_degree() == 3);
    REQUIRE(imkit::cycle_graph(6).num_edges() == 6);
    REQUIRE(imkit::path_graph(6).num_edges() == 5);
    MultiGraph pet = imkit::petersen_graph();
    REQUIRE(pet.num_vertices() == 10);
    REQUIRE(pet.num_edges() == 15);
    for (VertexId v : pet.vertices()) REQUIRE(pet.degree(v) == 3);
}

TEST_CASE("canonical key is relabeling-invariant") {
    std::mt19937 rng(20260817);
    for (int round = 0; round < 120; ++round) {
        MultiGraph g = testutil::random_connected_multigraph(rng, 2, 7, 12);
        MultiGraph h = testutil::relabel_random(rng, g);
        REQUIRE(imkit::canonical_key(g) == imkit::canonical_key(h));
    }
}

TEST_CASE("canonical key separates non-isomorphic graphs") {
    MultiGraph paw = imkit::cycle_graph(3);
    VertexId t = paw.add_vertex();
    paw.add_edge(0, t);
    REQUIRE(imkit::canonical_key(paw) != imkit::canonical_key(imkit::cycle_graph(4)));

    std::mt19937 rng(7);
    for (int round = 0; round < 60; ++round) {
        MultiGraph a = testutil::random_connected_multigraph(rng, 3, 6, 9);
        MultiGraph b = testutil::random_connected_multigraph(rng, 3, 6, 9);
        bool same_key = imkit::canonical_key(a) == imkit::canonical_key(b);
        REQUIRE(same_key == testutil::ref_isomorphic(a, b));
    }
}

TEST_CASE("canonical form represents its own class") {
    std::mt19937 rng(99);
    for (int round = 0; round < 60; ++round) {
        MultiGraph g = testutil::random_connected_multigraph(rng, 2, 7, 11);
        MultiGraph c = imkit::canonical_form(g);
        REQUIRE(c.num_vertices() == g.num_vertices());
        REQUIRE(c.num_edges() == g.num_edges());
        REQUIRE(imkit::canonical_key(c) == imkit::canonical_key(g));
        REQUIRE(testutil::ref_isomorphic(c, g));
        // vertex ids of the canonical form are always 0..n-1
        std::vector<VertexId> verts = c.vertices();
        for (int i = 0; i < static_cast<int>(verts.size()); ++i) REQUIRE(verts[i] == i);
    }
}

TEST_CASE("isomorphism testing") {
    std::mt19937 rng(4);
    MultiGraph g = testutil::random_connected_multigraph(rng, 5, 8, 14);
    REQUIRE(imkit::is_isomorphic(g, testutil::relabel_random(rng, g)));

    MultiGraph paw = imkit::cycle_graph(3);
    VertexId t = paw.add_vertex();
    paw.add_edge(0, t);
    REQUIRE_FALSE(imkit::is_isomorphic(paw, imkit::cycle_graph(4)));

    MultiGraph a = imkit::cycle_graph(3), b = imkit::cycle_graph(3);
    a.add_edge(0, 1);
    b.add_edge(1, 2);
    REQUIRE(imkit::is_isomorphic(a, b));
    b.add_edge(1, 2);
    REQUIRE_FALSE(imkit::is_isomorphic(a, b));

    SECTION("size guard") {
        MultiGraph big = imkit::complete_graph(13);
        REQUIRE_THROWS_AS(imkit::is_isomorphic(big, big), imkit::capacity_error);
        REQUIRE(imkit::is_isomorphic(big, big, true));
    }
}

TEST_CASE("subgraph containment respects multiplicities") {
    REQUIRE(imkit::contains_subgraph(imkit::complete_graph(5), imkit::complete_graph(4)));
    REQUIRE(imkit::contains_subgraph(imkit::complete_graph(4), imkit::cycle_graph(4)));
    REQUIRE_FALSE(imkit::contains_subgraph(imkit::cycle_graph(6), imkit::cycle_graph(3)));

    MultiGraph doubled = MultiGraph::with_vertices(2);
    doubled.add_edge(0, 1);
    doubled.add_edge(0, 1);
    REQUIRE_FALSE(imkit::contains_subgraph(imkit::complete_graph(3), doubled));
    MultiGraph host = imkit::cycle_graph(3);
    host.add_edge(1, 2);
    REQUIRE(imkit::contains_subgraph(host, doubled));
}
