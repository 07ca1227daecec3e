#include <doctest.h>

#include "kgraph/builders.hpp"
#include "kgraph/fock.hpp"
#include "kgraph/structure.hpp"

using namespace kgraph;

namespace {

std::vector<KGraph> suite() {
    return {single_vertex({1, 1}, ThetaFamily::identity()),
            single_vertex({2, 2}, ThetaFamily::full_cycle({2, 2})),
            cycle_rank(3, 2),
            example_acyclic_two_graph(),
            direct_product({directed_cycle(2), free_loops(1)})};
}

}  // namespace

TEST_SUITE("fock") {

TEST_CASE("basis layout and interior blocks") {
    const FockPtr f = make_fock(example_acyclic_two_graph(), 4);
    CHECK(f->dimension() == 10);
    CHECK(f->interior(0) == 3);
    CHECK(f->interior(1) == 7);
    CHECK(f->interior(2) == 10);
    CHECK(f->interior(-1) == 0);
    const auto e1 = f->grading_projection(1);
    CHECK(e1.nonZeros() == 4);
    CHECK(e1.coeff(3, 3) == 1);
    const FockPtr small = make_fock(f->graph(), 1);
    CHECK_THROWS_AS(small->index(parse_path(f->graph(), "a2 a1")), DomainError);
}

TEST_CASE("left and right creation operators on the acyclic example") {
    const FockPtr f = make_fock(example_acyclic_two_graph(), 4);
    const KGraph& g = f->graph();
    const IntOperator la2 = left_op(f, parse_path(g, "a2"));
    // L_a2 xi_b1 = xi_{a2 b1}
    const auto col = f->index(parse_path(g, "b1"));
    const auto row = f->index(normal_form(g, parse_path(g, "a2 b1")).path());
    CHECK(la2.entry(row, col) == 1);
    CHECK(la2.matrix.nonZeros() == 3);  // x2, b1, a1
    const IntOperator rb1 = right_op(f, parse_path(g, "b1"));
    // R_b1 xi_b2 = xi_{b2 b1}
    CHECK(rb1.entry(f->index(parse_path(g, "b2 b1")), f->index(parse_path(g, "b2"))) == 1);
    CHECK(la2.symbol_grading == 1);
    Path bad = edge_path(g, *g.find_edge("a1"));
    bad.word = {*g.find_edge("a1"), *g.find_edge("a1")};
    CHECK_THROWS_AS(left_op(f, bad), CompositionError);
}

TEST_CASE("right shift is unitarily equivalent to the left shift of the transpose") {
    for (const KGraph& g : suite()) {
        const FockPtr f = make_fock(g, 4);
        const FockPtr ft = make_fock(transpose(g), 4);
        const auto u = transpose_correspondence(f, ft);
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            const auto r = right_op(f, edge_path(g, e)).matrix;
            const auto l = left_op(ft, edge_path(ft->graph(), e)).matrix;
            const Eigen::SparseMatrix<std::int64_t> diff = r - u * l * Eigen::SparseMatrix<std::int64_t>(u.transpose());
            CHECK(max_abs_in_columns(diff, f->dimension()) == 0.0);
        }
    }
}

TEST_CASE("commutant, partial isometries and orthogonality are exact") {
    for (const KGraph& g : suite()) {
        const FockPtr f = make_fock(g, 5);
        CHECK(commutant_residual(f).exact());
        CHECK(partial_isometry_residual(f).exact());
        CHECK(same_degree_orthogonality(f).exact());
        CHECK(product_law_residual(f, 4).exact());
    }
}

TEST_CASE("isometry failure is visible beyond the interior") {
    const FockPtr f = make_fock(single_vertex({1, 1}, ThetaFamily::identity()), 3);
    const KGraph& g = f->graph();
    const auto l = left_op(f, parse_path(g, "a")).matrix;
    const auto v = left_op(f, parse_path(g, "v")).matrix;
    const Eigen::SparseMatrix<std::int64_t> d = Eigen::SparseMatrix<std::int64_t>(l.transpose()) * l - v;
    CHECK(max_abs_in_columns(d, f->interior(2)) == 0.0);
    CHECK(max_abs_in_columns(d, f->dimension()) == 1.0);
}

TEST_CASE("fourier coefficients and Cesaro sums") {
    const FockPtr f = make_fock(single_vertex({2, 1}, ThetaFamily::identity()), 5);
    const KGraph& g = f->graph();
    const ComplexOperator a = std::complex<double>(2.0, 1.0) * to_complex(left_op(f, parse_path(g, "a1 b"))) +
                              std::complex<double>(-0.5) * to_complex(left_op(f, parse_path(g, "a2"))) +
                              to_complex(left_op(f, parse_path(g, "v")));
    CHECK(std::abs(fourier_coefficient(a, parse_path(g, "b a1")) - std::complex<double>(2.0, 1.0)) < 1e-15);
    CHECK(std::abs(fourier_coefficient(a, parse_path(g, "a2")) + 0.5) < 1e-15);
    CHECK(std::abs(fourier_coefficient(a, parse_path(g, "a1"))) == 0.0);

    for (int n = 1; n <= 4; ++n) {
        const ComplexOperator s1 = cesaro(a, n);
        const ComplexOperator s2 = cesaro_by_diagonals(a, n);
        const Eigen::SparseMatrix<std::complex<double>> d = s1.matrix - s2.matrix;
        CHECK(max_abs_in_columns(d, f->dimension()) < 1e-14);
    }
    // n = 3: weights 1, 2/3, 1/3 for gradings 0, 1, 2
    const ComplexOperator s3 = cesaro(a, 3);
    const auto v = f->index(parse_path(g, "v"));
    CHECK(std::abs(s3.entry(v, v) - 1.0) < 1e-15);
    CHECK(std::abs(s3.entry(f->index(parse_path(g, "a2")), v) + 1.0 / 3.0) < 1e-15);
    CHECK(std::abs(s3.entry(f->index(parse_path(g, "a1 b")), v) - std::complex<double>(2.0, 1.0) / 3.0) < 1e-15);
    // diagonals above the main one vanish for combinations of left shifts
    CHECK(diagonal(a, 1).matrix.nonZeros() == 0);
    const ComplexOperator adj = adjoint(a);
    CHECK(diagonal(adj, 2).matrix.nonZeros() > 0);
}

TEST_CASE("operators from different spaces do not mix") {
    const KGraph g = free_loops(1);
    const auto f1 = make_fock(g, 2);
    const auto f2 = make_fock(g, 2);
    CHECK_THROWS_AS(left_op(f1, parse_path(g, "e")) * left_op(f2, parse_path(g, "e")), DomainError);
    CHECK_THROWS_AS(left_op(f1, make_path(g, {0, 0, 0})), DomainError);
}

TEST_CASE("orthogonal isometries for free semigroups") {
    for (const KGraph& g : {free_loops(2), single_vertex({2, 1}, ThetaFamily::identity())}) {
        const FockPtr f = make_fock(g, 8);
        const auto iso = orthogonal_isometries(f);
        CHECK(iso.cross_residual == 0);
        CHECK(iso.isometry_residual == 0);
        CHECK(iso.interior_dimension > 0);
        CHECK(iso.u_words.size() == 1);
    }
    CHECK_THROWS_AS(orthogonal_isometries(make_fock(cycle_rank(3, 2), 3)), UnsupportedGraphError);
}

TEST_CASE("orthogonal isometries with access paths") {
    // x -> v with two loops at v
    const KGraph g(1, {"x", "v"}, {{"p", 1, 0, 1}, {"c1", 1, 1, 1}, {"c2", 1, 1, 1}}, {});
    const FockPtr f = make_fock(g, 9);
    const auto iso = orthogonal_isometries(f);
    CHECK(iso.u_words.size() == 2);
    CHECK(iso.cross_residual == 0);
    CHECK(iso.isometry_residual == 0);
}

TEST_CASE("cycle blocks") {
    const auto rep = verify_cycle_blocks(3, 2, 8);
    CHECK(rep.ok());
    REQUIRE(rep.generators.size() == 6);
    CHECK(rep.generators[0].expected == std::make_pair(2, 1));
    CHECK(rep.generators[2].expected == std::make_pair(1, 3));
    CHECK(rep.congruence_checked == 3 * 45);
    CHECK(verify_cycle_blocks(4, 3, 4).ok());
}

}
