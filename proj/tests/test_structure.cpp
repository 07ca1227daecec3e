#include <doctest.h>

#include <random>

#include "kgraph/builders.hpp"
#include "kgraph/structure.hpp"
#include "oracles.hpp"

using namespace kgraph;

TEST_SUITE("structure") {

TEST_CASE("nc edges of the acyclic example") {
    const KGraph g = example_acyclic_two_graph();
    CHECK(nc_edges(g).size() == 4);
    CHECK_FALSE(is_semisimple(g));
    CHECK(is_semisimple(cycle_rank(3, 2)));
    CHECK(is_semisimple(single_vertex({2, 2}, ThetaFamily::identity())));
}

TEST_CASE("reachability nc agrees with cycle enumeration on random graphs") {
    std::mt19937_64 rng(20240611);
    for (int i = 0; i < 30; ++i) {
        const KGraph g = oracle::random_graph(rng);
        CHECK(nc_edges(g) == oracle::nc_by_cycles(g));
    }
}

TEST_CASE("pure cycles") {
    const auto cycles = pure_primitive_cycles(cycle_rank(3, 2));
    // one cycle of length 3 per colour at each vertex
    CHECK(cycles.size() == 6);
    for (const auto& c : cycles) CHECK(c.word.size() == 3);
    CHECK(pure_primitive_cycles(example_acyclic_two_graph()).empty());
    CHECK(pure_primitive_cycles(free_loops(3)).size() == 3);
}

TEST_CASE("double pure cycle property") {
    CHECK_FALSE(double_pure_cycle_property(cycle_rank(3, 2)));
    CHECK_FALSE(double_pure_cycle_property(example_acyclic_two_graph()));
    CHECK_FALSE(double_pure_cycle_property(single_vertex({1, 1}, ThetaFamily::identity())));
    const auto w = double_pure_cycle_property(free_loops(2));
    REQUIRE(w);
    CHECK(w->reaches_all);
    CHECK(w->first.word != w->second.word);

    // two vertices with two loops each but no path between them
    const KGraph split(1, {"u", "v"},
                       {{"a", 1, 0, 0}, {"b", 1, 0, 0}, {"c", 1, 1, 1}, {"d", 1, 1, 1}}, {});
    const auto s = double_pure_cycle_property(split);
    REQUIRE(s);
    CHECK_FALSE(s->reaches_all);

    // a second colour class of cycles through a longer loop
    const KGraph two_cycles(1, {"u", "v"}, {{"a", 1, 0, 1}, {"b", 1, 1, 0}, {"c", 1, 0, 0}}, {});
    const auto t = double_pure_cycle_property(two_cycles);
    REQUIRE(t);
    CHECK(t->reaches_all);
    CHECK(t->base == 0);
    REQUIRE(t->access[1]);
    CHECK(to_string(two_cycles, *t->access[1]) == "b");
}

TEST_CASE("vertex classes") {
    const auto acyclic = classify_vertices(example_acyclic_two_graph());
    CHECK(acyclic[0].radiating);
    CHECK_FALSE(acyclic[1].radiating);
    CHECK(acyclic[0].relational == Tristate::no);

    const auto sv = classify_vertices(single_vertex({1, 2}, ThetaFamily::identity()));
    CHECK(sv[0].radiating);
    CHECK_FALSE(sv[0].multiplicity_one);
    // every edge is a loop: nothing leaves v
    CHECK(sv[0].relational == Tristate::no);
}

TEST_CASE("relational radiating vertex") {
    // v carries loops a (colour 1) and b (colour 2); edges p, q leave v for w with
    // p b = q a, so p b and q a share a normal form
    std::vector<Edge> edges{{"a", 1, 0, 0}, {"p", 1, 0, 1}, {"b", 2, 0, 0}, {"q", 2, 0, 1},
                            {"c", 1, 1, 1}, {"d", 2, 1, 1}};
    // colour pairs at (v -> v): a b = b a; (v -> w): p b = q a and c q = d p; (w -> w): c d = d c
    std::vector<CommutationSquare> squares{{0, 2, 2, 0}, {1, 2, 3, 0}, {4, 3, 5, 1}, {4, 5, 5, 4}};
    const KGraph g(2, {"v", "w"}, edges, squares);
    REQUIRE(validate(g, 4).valid());
    const auto classes = classify_vertices(g);
    CHECK(classes[0].radiating);
    CHECK(classes[0].multiplicity_one);
    CHECK(classes[0].relational == Tristate::yes);
    const auto report = reflexivity_report(g);
    CHECK_FALSE(report.reflexive_by_vertex_criterion);
}

TEST_CASE("reflexivity report") {
    const auto r = reflexivity_report(example_acyclic_two_graph());
    CHECK(r.reflexive_by_vertex_criterion);
    CHECK_FALSE(r.hyper_reflexive_by_dpc);
    CHECK_FALSE(r.single_vertex_hinfty);

    const auto f2 = reflexivity_report(free_loops(2));
    CHECK(f2.hyper_reflexive_by_dpc);
    CHECK(f2.distance_constant_bound == 3);
    CHECK(reflexivity_report(single_vertex({1, 1}, ThetaFamily::identity())).single_vertex_hinfty);
    CHECK_FALSE(reflexivity_report(single_vertex({2, 1}, ThetaFamily::identity())).single_vertex_hinfty);
}

TEST_CASE("radical of the acyclic example is nilpotent of order 3") {
    const FockPtr f = make_fock(example_acyclic_two_graph(), 4);
    const RadicalReport r = radical_check(f, 2);
    CHECK(r.ok());
    CHECK(r.nilpotency_bound == 3);
    CHECK(r.observed_nilpotency == 3);
    CHECK(r.ideal_words == 7);
    CHECK(r.square_checks > 0);
}

TEST_CASE("radical check sees a nonzero product when the bound is too small") {
    // a chain of four vertices has an nc-product of length 3 but only... the bound is |V| = 4
    Digraph d{{"x1", "x2", "x3", "x4"}, {{"a1", "x1", "x2"}, {"a2", "x2", "x3"}, {"a3", "x3", "x4"}}};
    const FockPtr f = make_fock(from_digraph(d), 4);
    const RadicalReport r = radical_check(f, 2);
    CHECK(r.ok());
    CHECK(r.observed_nilpotency == 4);
}

TEST_CASE("extremal factorization") {
    const KGraph g = single_vertex({2, 2}, ThetaFamily::full_cycle({2, 2}));
    std::vector<Path> paths{parse_path(g, "a1 b1"), parse_path(g, "a2 a1"), parse_path(g, "b2 b2")};
    const auto rep = extremal_factorization_check(g, paths, 3);
    CHECK(rep.gamma == Degree{2, 0});
    CHECK(rep.ok());
    CHECK(rep.checked == 1 + 1 + 1);
    CHECK_THROWS_AS(extremal_factorization_check(g, {parse_path(g, "a1"), parse_path(g, "a1 b1")}), DomainError);
}

TEST_CASE("analyze summary") {
    const auto s = analyze(example_acyclic_two_graph());
    CHECK_FALSE(s.semisimple);
    CHECK(s.nilpotency_bound == 3);
    CHECK_FALSE(s.double_pure_cycle);
}

}
