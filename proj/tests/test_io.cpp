#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "imkit/io.hpp"
#include "test_util.hpp"

using imkit::MultiGraph;
using imkit::parse_error;

TEST_CASE("write then read reproduces the graph up to relabeling") {
    std::mt19937 rng(11);
    for (int round = 0; round < 80; ++round) {
        MultiGraph g = testutil::random_connected_multigraph(rng, 1, 9, 16);
        MultiGraph back = imkit::read_multigraph(imkit::write_multigraph(g));
        REQUIRE(back.num_vertices() == g.num_vertices());
        REQUIRE(back.num_edges() == g.num_edges());
        REQUIRE(imkit::canonical_key(back) == imkit::canonical_key(g));
        // a second pass changes nothing: the writer's output is already sorted
        REQUIRE(imkit::write_multigraph(back) == imkit::write_multigraph(g));
    }
}

TEST_CASE("writer renumbers scattered vertex ids") {
    MultiGraph g;
    g.add_vertex_id(5);
    g.add_vertex_id(40);
    g.add_vertex_id(12);
    g.add_edge(5, 40);
    g.add_edge(12, 40);
    REQUIRE(imkit::write_multigraph(g) == "3 2\n0 2\n1 2\n");
}

TEST_CASE("comments and blank lines are ignored") {
    MultiGraph g = imkit::read_multigraph("# triangle\n\n3 3 # header\n0 1\n\n0 2 # last\n1 2\n# done\n");
    REQUIRE(g.num_vertices() == 3);
    REQUIRE(g.num_edges() == 3);
}

TEST_CASE("parallel edges survive the round trip") {
    MultiGraph g = imkit::read_multigraph("2 3\n0 1\n0 1\n0 1\n");
    REQUIRE(g.multiplicity(0, 1) == 3);
    REQUIRE(imkit::write_multigraph(g) == "2 3\n0 1\n0 1\n0 1\n");
}

TEST_CASE("parse failures carry the offending line") {
    auto line_of = [](const std::string& text) {
        try {
            imkit::read_multigraph(text);
        } catch (const parse_error& e) {
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("") == 0);
    CHECK(line_of("hello world\n") == 1);
    CHECK(line_of("2 1 9\n0 1\n") == 1);
    CHECK(line_of("-1 0\n") == 1);
    CHECK(line_of("3 2\n0 1\n") == 2);            // fewer edges than promised
    CHECK(line_of("3 1\n0 1\n0 2\n") == 3);       // trailing content
    CHECK(line_of("# c\n3 1\n0 7\n") == 3);       // endpoint out of range
    CHECK(line_of("2 1\n1 1\n") == 2);            // loop
    CHECK(line_of("2 1\n1 0\n") == 2);            // endpoints out of order
    CHECK(line_of("2 1\n0 1 junk\n") == 2);
    CHECK(line_of("2000000 1\n0 1\n") == 1);      // absurd counts
}
