#include <doctest.h>

#include "kgraph/builders.hpp"
#include "kgraph/validate.hpp"

using namespace kgraph;

TEST_SUITE("validate") {

TEST_CASE("built-in families are k-graphs") {
    for (const KGraph& g : {example_acyclic_two_graph(), cycle_rank(3, 2), cycle_rank(2, 3),
                            single_vertex({1, 1}, ThetaFamily::identity()),
                            single_vertex({2, 3}, ThetaFamily::full_cycle({2, 3})),
                            direct_product({free_loops(2), directed_cycle(3)})}) {
        const auto r = validate(g, 5);
        CHECK(r.valid());
        CHECK(r.words_checked > 0);
        CHECK(r.splits_checked > 0);
    }
}

TEST_CASE("a missing square is caught") {
    // b a has no relation while a b does
    const KGraph g(2, {"v"}, {{"a", 1, 0, 0}, {"b", 2, 0, 0}, {"c", 2, 0, 0}}, {{0, 1, 1, 0}});
    const auto r = validate(g, 3);
    CHECK_FALSE(r.valid());
    CHECK(r.has(FailureKind::missing_square));
}

TEST_CASE("duplicate squares are caught") {
    const KGraph g(2, {"v"}, {{"a", 1, 0, 0}, {"b", 2, 0, 0}, {"c", 1, 0, 0}},
                   {{0, 1, 1, 0}, {0, 1, 1, 2}, {2, 1, 1, 2}});
    const auto r = validate(g, 3);
    CHECK_FALSE(r.valid());
    CHECK(r.has(FailureKind::duplicate_square));
}

TEST_CASE("cardinality mismatch between mixed pairs") {
    // a: x -> y (colour 1), b: y -> y (colour 2); a b has no partner b' a'
    const KGraph g(2, {"x", "y"}, {{"a", 1, 0, 1}, {"b", 2, 1, 1}}, {});
    const auto r = validate(g, 2);
    CHECK(r.has(FailureKind::square_cardinality));
}

TEST_CASE("noncommuting three-colour permutations break confluence") {
    ThetaFamily theta;
    theta.tables[{1, 2}] = {1, 0, 2};
    theta.tables[{1, 3}] = {0, 2, 1};
    const KGraph g = single_vertex({3, 1, 1}, theta);
    const auto r = validate(g, 3);
    CHECK_FALSE(r.valid());
    CHECK(r.has(FailureKind::confluence));
    // square bijectivity alone is satisfied
    CHECK_FALSE(r.has(FailureKind::missing_square));
    CHECK_FALSE(r.has(FailureKind::square_cardinality));
}

TEST_CASE("three-colour identity family is valid") {
    CHECK(validate(single_vertex({2, 1, 2}, ThetaFamily::identity()), 4).valid());
}

}
