#include <doctest.h>

#include "kgraph/builders.hpp"
#include "kgraph/validate.hpp"
#include "oracles.hpp"

using namespace kgraph;

TEST_SUITE("builders") {

TEST_CASE("product of free semigroups has 12 paths of degree (2,1)") {
    const KGraph g = direct_product({free_loops(2), free_loops(3)});
    CHECK(g.vertex_count() == 1);
    CHECK(g.edge_count() == 5);
    CHECK(paths_of_degree(g, Degree{2, 1}).size() == 12);
    CHECK(oracle::class_count(g, Degree{2, 1}) == 12);
}

TEST_CASE("product of cycles") {
    const KGraph g = direct_product({directed_cycle(2), directed_cycle(3)});
    CHECK(g.vertex_count() == 6);
    CHECK(validate(g, 5).valid());
    CHECK(paths_of_degree(g, Degree{2, 3}).size() == 6);
}

TEST_CASE("theta product census of the acyclic example") {
    const KGraph g = example_acyclic_two_graph();
    CHECK(g.squares().size() == 1);
    PathCatalog c(g);
    CHECK(c.paths_of_degree(Degree{0, 0}).size() == 3);
    CHECK(c.paths_of_degree(Degree{1, 0}).size() == 2);
    CHECK(c.paths_of_degree(Degree{0, 1}).size() == 2);
    CHECK(c.paths_of_degree(Degree{1, 1}).size() == 1);
    CHECK(c.paths_of_degree(Degree{2, 0}).size() == 1);
    CHECK(c.paths_of_degree(Degree{0, 2}).size() == 1);
    CHECK(c.paths_of_degree(Degree{2, 1}).empty());
}

TEST_CASE("theta product rejects bad input") {
    Digraph a{{"x", "y"}, {{"a1", "x", "y"}}};
    Digraph b{{"x", "y"}, {{"b1", "x", "y"}}};
    Digraph c{{"x", "y"}, {{"b1", "y", "y"}}};
    Digraph d{{"x", "y", "z"}, {{"b1", "x", "y"}}};
    CHECK_THROWS_AS(theta_product(from_digraph(a), from_digraph(d), {}), ConstructionError);
    CHECK_THROWS_AS(theta_product(from_digraph(a), from_digraph(c), {}), ConstructionError);
    // no mixed composable pairs at all: the empty theta is admissible
    CHECK_NOTHROW(theta_product(from_digraph(a), from_digraph(b), {}));
}

TEST_CASE("admissible theta count for equal cycles") {
    const KGraph a = directed_cycle(3);
    Digraph db{{"x1", "x2", "x3"}, {{"f1", "x1", "x2"}, {"f2", "x2", "x3"}, {"f3", "x3", "x1"}}};
    CHECK(count_admissible_thetas(a, from_digraph(db)) == 1);
    Digraph loops{{"v"}, {{"f1", "v", "v"}, {"f2", "v", "v"}}};
    CHECK(count_admissible_thetas(free_loops(2), from_digraph(loops)) == 24);
}

TEST_CASE("cycle_rank has one path per vertex and degree") {
    const KGraph g = cycle_rank(3, 2);
    CHECK(g.edge_count() == 6);
    CHECK(g.edge(0).name == "e1");
    CHECK(g.edge(3).name == "f1");
    PathCatalog c(g);
    for (int n = 0; n <= 5; ++n) {
        for (const Degree& d : degrees_of_grading(2, n)) CHECK(c.paths_of_degree(d).size() == 3);
    }
}

TEST_CASE("single vertex relations follow the theta tables") {
    const KGraph id = single_vertex({1, 1}, ThetaFamily::identity());
    CHECK(id.edge(0).name == "a");
    CHECK(id.edge(1).name == "b");
    CHECK(to_string(id, normal_form(id, parse_path(id, "b a")).path()) == "a b");

    const KGraph g = single_vertex({2, 2}, ThetaFamily::full_cycle({2, 2}));
    // t = 0 (a1 b1) maps to index 1 (a1 b2): a1 b1 = b2 a1
    CHECK(to_string(g, normal_form(g, parse_path(g, "b2 a1")).path()) == "a1 b1");
    CHECK(validate(g, 4).valid());
}

TEST_CASE("transpose is an involution") {
    for (const KGraph& g : {example_acyclic_two_graph(), cycle_rank(3, 2),
                            single_vertex({2, 2}, ThetaFamily::full_cycle({2, 2}))}) {
        const KGraph t = transpose(g);
        CHECK(validate(t, 4).valid());
        CHECK(isomorphic(transpose(t), g));
        PathCatalog a(g), b(t);
        for (const Degree& d : degrees_of_grading(2, 3)) {
            CHECK(a.paths_of_degree(d).size() == b.paths_of_degree(d).size());
        }
    }
}

TEST_CASE("transposed paths reverse the word") {
    const KGraph g = example_acyclic_two_graph();
    const KGraph t = transpose(g);
    const Path p = transpose_path(t, parse_path(g, "a2 b1"));
    CHECK(to_string(t, p) == "b1 a2");
    CHECK(p.source == *t.find_vertex("x3"));
}

}
